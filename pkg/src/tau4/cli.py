"""Command-line front end: ``tau4 <subcommand> FILE [options]``.

Exit codes: 0 success, 1 a requested cross-check or verification failed,
2 invalid input, 3 the computation was refused (size bound exceeded or no
diagonalization certificate found).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .conway import conway
from .enhanced import brown, class_tuple, gauss_sum, normal_form
from .errors import (
    BoundExceededError,
    DimensionError,
    InconsistentDataError,
    NotCharacteristicError,
    NotStablyDiagonalizableError,
    NotTotallyProperError,
    Tau4Error,
    ValidationError,
)
from .invariants import (
    arf_hoste_murakami,
    arf_theorem11,
    brown_of_proper_link,
    brown_totally_proper_model,
    mu_invariant,
    theorem4_combine,
)
from .io import dump_cubic, dump_cyclo, dump_tau4, validate_input
from .pd import linking_matrix
from .sat import (
    count_models,
    count_zeros,
    counting_identity,
    cnf_to_cubic_system,
    cubic_to_model,
    tau4_of_cubic,
    to_quad_system,
    to_single_cubic,
)
from .surgery import (
    Sublink,
    characteristic_sublinks,
    tau4_diagonalize_and_product,
    tau4_exponential,
    tau4_of_model,
    tau4_spin_sum,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


class CheckFailed(Exception):
    def __init__(self, report: dict, message: str):
        self.report = report
        super().__init__(message)


def _load(path: str, *kinds: str):
    kind, value = validate_input(path)
    if kinds and kind not in kinds:
        raise ValidationError("E_KIND", path, f"expected {' or '.join(kinds)}, got {kind}")
    return kind, value


# subcommands ----------------------------------------------------------------

def cmd_enhanced_classify(args) -> dict:
    _, space = _load(args.file, "space")
    m, n, even, proper, beta = class_tuple(space)
    return {
        "dim": m,
        "radical_dim": n,
        "even": even,
        "proper": proper,
        "brown": str(beta) if beta.is_infinite else int(beta),
        "normal_form": normal_form(space)._asdict(),
        "gauss_sum": dump_cyclo(gauss_sum(space)),
    }


def cmd_enhanced_brown(args) -> dict:
    _, space = _load(args.file, "space")
    b = brown(space)
    return {"brown": str(b) if b.is_infinite else int(b)}


def cmd_link_conway(args) -> dict:
    _, link = _load(args.file, "link")
    poly = conway(link)
    return {"components": link.n_components, "conway": list(poly.coeffs), "c1": poly.coefficient(link.n_components + 1)}


def cmd_link_arf(args) -> dict:
    kind, value = _load(args.file, "link", "model")
    if kind == "link":
        return {"arf": arf_hoste_murakami(value), "via": "hoste-murakami"}
    return {"arf": arf_theorem11(value), "via": "model"}


def cmd_link_brown(args) -> dict:
    kind, value = _load(args.file, "link", "model", "immersion")
    if kind == "link":
        return {"brown": brown_of_proper_link(value), "via": "arf-and-linking"}
    if kind == "model":
        return {"brown": brown_totally_proper_model(value), "via": "model"}
    beta, arf = theorem4_combine(value)
    return {"brown": beta, "arf": arf, "via": "immersion"}


def cmd_surgery_tau4(args) -> dict:
    kind, value = _load(args.file, "link", "model", "matrix", "cubic")
    method = args.method
    if method is None:
        method = {"link": "exponential", "model": "model", "matrix": "product", "cubic": "model"}[kind]
    if kind == "cubic":
        value, kind = cubic_to_model(value), "model"
    if method == "product":
        lam = value if kind == "matrix" else (linking_matrix(value) if kind == "link" else [list(r) for r in value.lk_matrix])
        result = tau4_diagonalize_and_product(lam)
    elif method == "model":
        if kind != "model":
            raise ValidationError("E_METHOD", "--method", "the model method needs a model or cubic-form file")
        result = tau4_of_model(value)
    else:
        if kind != "link":
            raise ValidationError("E_METHOD", "--method", f"the {method} method needs a link diagram")
        result = tau4_exponential(value) if method == "exponential" else tau4_spin_sum(value)
    report = dump_tau4(result)
    if args.cross_check:
        if kind != "link":
            raise ValidationError("E_METHOD", "--cross-check", "cross-checking needs a link diagram")
        a, b = tau4_exponential(value), tau4_spin_sum(value)
        report["cross_check"] = a.value == b.value
        if not report["cross_check"]:
            raise CheckFailed(report, "exponential and spin-sum results differ")
    return report


def _parse_sublink(text: str, n: int) -> Sublink:
    if len(text) != n or set(text) - {"0", "1"}:
        raise ValidationError("E_SUBLINK", "--sublink", f"expected {n} digits 0/1, component 0 first")
    return Sublink(sum(1 << i for i, ch in enumerate(text) if ch == "1"), n)


def cmd_surgery_mu(args) -> dict:
    _, link = _load(args.file, "link")
    n = link.n_components
    subs = [_parse_sublink(args.sublink, n)] if args.sublink else characteristic_sublinks(linking_matrix(link))
    rows = [{"sublink": "".join(map(str, s.bits())), "mu": mu_invariant(link, s)} for s in subs]
    return {"spin_structures": rows}


def cmd_reduce(args) -> dict:
    _, cnf = _load(args.file, "cnf")
    cubics = cnf_to_cubic_system(cnf)
    report: dict[str, Any] = {"n": cnf.nvars, "r": len(cnf.clauses)}
    if args.emit == "cubic":
        report["equations"] = [str(p) for p in cubics]
    else:
        quad = to_quad_system(cubics, cnf.nvars)
        report.update(m=quad.m, k=quad.k)
        if args.emit == "quad":
            report["equations"] = [str(p) for p in quad.polys]
        else:
            report["form"] = dump_cubic(to_single_cubic(quad))
    if args.verify:
        check = counting_identity(cnf)
        report["verify"] = {
            "m": check["m"],
            "k": check["k"],
            "models": check["models"],
            "zeros": check["zeros"],
            "expected": check["expected"],
            "holds": check["holds"],
        }
        if not check["holds"]:
            raise CheckFailed(report, "#c != 2^(m+k-1) + 2^(k-1) #e")
    return report


def cmd_count(args) -> dict:
    kind, value = _load(args.file, "cnf", "cubic")
    if kind == "cnf":
        return {"models": count_models(value)}
    return {"zeros": count_zeros(value)}


def cmd_cubic_tau4(args) -> dict:
    _, c = _load(args.file, "cubic")
    if args.via == "formula":
        result = tau4_of_cubic(c)
    elif args.via == "model":
        result = tau4_of_model(cubic_to_model(c))
    else:
        from .tangles import cubic_to_pdlink

        result = tau4_exponential(cubic_to_pdlink(c))
    return dump_tau4(result)


COMMANDS = {
    "enhanced-classify": (cmd_enhanced_classify, "classify an enhanced space"),
    "enhanced-brown": (cmd_enhanced_brown, "Brown invariant of an enhanced space"),
    "link-conway": (cmd_link_conway, "Conway polynomial of a link diagram"),
    "link-arf": (cmd_link_arf, "Arf invariant of a link or model"),
    "link-brown": (cmd_link_brown, "Brown invariant of a link, model or immersion data"),
    "surgery-tau4": (cmd_surgery_tau4, "tau_4 of the surgery manifold"),
    "surgery-mu": (cmd_surgery_mu, "mu-invariants of the spin structures"),
    "reduce": (cmd_reduce, "3-CNF to cubic form reduction"),
    "count": (cmd_count, "count CNF models or cubic-form zeros"),
    "cubic-tau4": (cmd_cubic_tau4, "tau_4 of the manifold M_c of a cubic form"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    parser = argparse.ArgumentParser(prog="tau4", description="tau_4 invariants of 3-manifolds and friends")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("file", help="input file (JSON, or DIMACS .cnf)")
        if name == "surgery-tau4":
            p.add_argument("--method", choices=("exponential", "spin-sum", "product", "model"))
            p.add_argument("--cross-check", action="store_true", help="also run exponential and spin-sum and compare")
        elif name == "surgery-mu":
            p.add_argument("--sublink", help="a single sublink as 0/1 digits, component 0 first")
        elif name == "reduce":
            p.add_argument("--emit", choices=("cubic", "quad", "single"), default="single")
            p.add_argument("--verify", action="store_true", help="check the counting identity by brute force")
        elif name == "cubic-tau4":
            p.add_argument("--via", choices=("formula", "model", "diagram"), default="formula")
    return parser


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True)
    lines = []
    for key in sorted(report):
        value = report[key]
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {text}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        report = func(args)
    except CheckFailed as exc:
        print(render(exc.report, args.format), file=stdout)
        print(f"error: {exc}", file=stderr)
        return EXIT_CHECK
    except (BoundExceededError, NotStablyDiagonalizableError) as exc:
        print(f"refused: {exc}", file=stderr)
        return EXIT_REFUSED
    except (
        ValidationError,
        InconsistentDataError,
        NotTotallyProperError,
        NotCharacteristicError,
        DimensionError,
        Tau4Error,
    ) as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_INPUT
    print(render(report, args.format), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
