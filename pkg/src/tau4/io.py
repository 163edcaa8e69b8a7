"""JSON and DIMACS input/output with field-level diagnostics.

Schemas (component indices are 0-based, cubic-form variables 1-based):

* enhanced space  {"form": [[0, 1], [1, 0]], "values": [2, 2]}
* link            {"pd": [[a, b, c, d, sign], ...], "component_of_arc": {"1": 0, ...},
                   "framings": [...]}  or  {"braid": {"strands": k, "word": [...]}, "framings": [...]}
* model           {"n": 3, "arf": [...], "quarter_sl": {"0,1": 1}, "sato_levine": {"0,1": -4},
                   "triple": {"0,1,2": 1}, "lk": [[...]], "framings": [...]}
* immersion       {"beta_f": 1 | "infinity" | {space}, "phi_f": -3, "delta_f": 0, "tau_f": 0, "lk_total": 0}
* cubic form      {"n": 3, "linear": [1], "quadratic": [[1, 2]], "cubic": [[1, 2, 3]]}
* matrix          {"matrix": [[...]]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cyclo import CycloInt
from .enhanced import BrownValue, EnhancedSpace
from .errors import DimensionError, ValidationError
from .invariants import ImmersionData, LinkInvariantModel
from .pd import PDLink, from_braid
from .sat import CubicForm, parse_dimacs
from .surgery import Tau4Result

__all__ = [
    "load_json",
    "detect_kind",
    "parse_space",
    "parse_link",
    "parse_model",
    "parse_immersion",
    "parse_cubic",
    "parse_matrix",
    "validate_input",
    "dump_space",
    "dump_link",
    "dump_model",
    "dump_cubic",
    "dump_cyclo",
    "dump_tau4",
    "parse_cyclo",
    "parse_tau4",
]


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("E_JSON", "document", exc.msg, exc.lineno) from None


def _require(data: dict, key: str, kind: str):
    if not isinstance(data, dict) or key not in data:
        raise ValidationError("E_FIELD", key, f"missing required field for a {kind}")
    return data[key]


def _int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError("E_TYPE", field, f"expected an integer, got {value!r}")
    return value


def _int_list(value, field: str) -> list[int]:
    if not isinstance(value, list):
        raise ValidationError("E_TYPE", field, "expected a list of integers")
    return [_int(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _matrix(value, field: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise ValidationError("E_TYPE", field, "expected a list of rows")
    rows = [_int_list(r, f"{field}[{i}]") for i, r in enumerate(value)]
    if any(len(r) != len(rows) for r in rows):
        raise ValidationError("E_SHAPE", field, "matrix must be square")
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if rows[i][j] != rows[j][i]:
                raise ValidationError("E_SYMMETRY", f"{field}[{i}][{j}]", f"{rows[i][j]} != {rows[j][i]}; matrix must be symmetric")
    return rows


def _keyed(data, field: str, size: int) -> dict[tuple, int]:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValidationError("E_TYPE", field, 'expected an object like {"0,1": 1}')
    out = {}
    for key, v in data.items():
        try:
            idx = tuple(int(t) for t in str(key).split(","))
        except ValueError:
            raise ValidationError("E_INDEX", f"{field}[{key}]", "keys are comma-separated component indices") from None
        if len(idx) != size:
            raise ValidationError("E_INDEX", f"{field}[{key}]", f"expected {size} indices")
        out[idx] = _int(v, f"{field}[{key}]")
    return out


def detect_kind(data: Any) -> str:
    if not isinstance(data, dict):
        raise ValidationError("E_TYPE", "document", "expected a JSON object")
    if "pd" in data or "braid" in data:
        return "link"
    if "form" in data and "values" in data:
        return "space"
    if "beta_f" in data:
        return "immersion"
    if "arf" in data:
        return "model"
    if "matrix" in data:
        return "matrix"
    if "n" in data and any(k in data for k in ("linear", "quadratic", "cubic")):
        return "cubic"
    raise ValidationError("E_KIND", "document", "cannot tell which kind of input this is")


# parsers --------------------------------------------------------------------

def parse_space(data: dict) -> EnhancedSpace:
    form = _require(data, "form", "enhanced space")
    values = _int_list(_require(data, "values", "enhanced space"), "values")
    if not isinstance(form, list):
        raise ValidationError("E_TYPE", "form", "expected a list of rows")
    rows = [_int_list(r, f"form[{i}]") for i, r in enumerate(form)]
    if len(rows) != len(values) or any(len(r) != len(values) for r in rows):
        raise ValidationError("E_SHAPE", "form", f"must be {len(values)}x{len(values)} to match values")
    return EnhancedSpace(rows, values)


def parse_link(data: dict) -> PDLink:
    framings = data.get("framings")
    if framings is not None:
        framings = _int_list(framings, "framings")
    try:
        if "braid" in data:
            braid = data["braid"]
            strands = _int(_require(braid, "strands", "braid"), "braid.strands")
            word = _int_list(_require(braid, "word", "braid"), "braid.word")
            return from_braid(word, strands, framings)
        pd = _require(data, "pd", "link")
        if not isinstance(pd, list):
            raise ValidationError("E_TYPE", "pd", "expected a list of crossings")
        xs = [_int_list(x, f"pd[{k}]") for k, x in enumerate(pd)]
        comp = data.get("component_of_arc")
        if comp is not None:
            if not isinstance(comp, dict):
                raise ValidationError("E_TYPE", "component_of_arc", "expected an object arc -> component")
            comp = {int(a): _int(c, f"component_of_arc[{a}]") for a, c in comp.items()}
        link = PDLink(xs, comp, framings)
    except DimensionError as exc:
        raise ValidationError("E_SHAPE", "link", str(exc)) from None
    if "components" in data and _int(data["components"], "components") != link.n_components:
        raise ValidationError(
            "E_COMPONENT_COUNT", "components", f"declared {data['components']}, diagram has {link.n_components}"
        )
    return link


def parse_model(data: dict) -> LinkInvariantModel:
    n = _int(_require(data, "n", "model"), "n")
    arf = _int_list(_require(data, "arf", "model"), "arf")
    if len(arf) != n:
        raise ValidationError("E_SHAPE", "arf", f"expected {n} values")
    lk = _matrix(data["lk"], "lk") if "lk" in data else [[0] * n for _ in range(n)]
    if len(lk) != n:
        raise ValidationError("E_SHAPE", "lk", f"expected a {n}x{n} matrix")
    if "framings" in data:
        fr = _int_list(data["framings"], "framings")
        if len(fr) != n:
            raise ValidationError("E_SHAPE", "framings", f"expected {n} values")
        for i in range(n):
            if lk[i][i] not in (0, fr[i]):
                raise ValidationError("E_FRAMING", f"lk[{i}][{i}]", f"disagrees with framings[{i}] = {fr[i]}")
            lk[i][i] = fr[i]
    sl = data.get("sato_levine")
    return LinkInvariantModel(
        n=n,
        arf=arf,
        quarter_sl=_keyed(data.get("quarter_sl"), "quarter_sl", 2),
        triple=_keyed(data.get("triple"), "triple", 3),
        lk_matrix=lk,
        sato_levine=None if sl is None else _keyed(sl, "sato_levine", 2),
    )


def parse_immersion(data: dict) -> ImmersionData:
    beta = _require(data, "beta_f", "immersion")
    if isinstance(beta, dict):
        beta = parse_space(beta)
    elif beta == "infinity":
        beta = BrownValue(None)
    else:
        beta = BrownValue(_int(beta, "beta_f"))
    return ImmersionData(
        beta_f=beta,
        phi_f=_int(_require(data, "phi_f", "immersion"), "phi_f"),
        delta_f=_int(data.get("delta_f", 0), "delta_f"),
        tau_f=_int(data.get("tau_f", 0), "tau_f"),
        lk_total=_int(data.get("lk_total", 0), "lk_total"),
    )


def parse_cubic(data: dict) -> CubicForm:
    n = _int(_require(data, "n", "cubic form"), "n")

    def tuples(key, size):
        items = data.get(key, [])
        if not isinstance(items, list):
            raise ValidationError("E_TYPE", key, "expected a list")
        if size == 1:
            return [_int(v, f"{key}[{i}]") for i, v in enumerate(items)]
        return [tuple(_int_list(v, f"{key}[{i}]")) for i, v in enumerate(items)]

    return CubicForm(n, tuples("linear", 1), tuples("quadratic", 2), tuples("cubic", 3))


def parse_matrix(data: dict) -> list[list[int]]:
    return _matrix(_require(data, "matrix", "matrix"), "matrix")


_PARSERS = {
    "space": parse_space,
    "link": parse_link,
    "model": parse_model,
    "immersion": parse_immersion,
    "cubic": parse_cubic,
    "matrix": parse_matrix,
}


def validate_input(path: str | Path, kind: str | None = None) -> tuple[str, Any]:
    """Read and validate a file; returns (kind, parsed value).

    ``.cnf`` files are read as DIMACS, everything else as JSON.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError("E_IO", str(path), exc.strerror or str(exc)) from None
    if kind == "cnf" or (kind is None and path.suffix in (".cnf", ".dimacs")):
        return "cnf", parse_dimacs(text)
    data = load_json(text)
    found = detect_kind(data)
    if kind is not None and found != kind:
        raise ValidationError("E_KIND", "document", f"expected a {kind}, found a {found}")
    return found, _PARSERS[found](data)


# serializers ----------------------------------------------------------------

def dump_space(space: EnhancedSpace) -> dict:
    return {"form": [list(r) for r in space.form], "values": list(space.values)}


def dump_link(link: PDLink) -> dict:
    return {
        "pd": [list(x) for x in link.pd_code()],
        "components": link.n_components,
        "component_of_arc": {str(a): c for a, c in link.component_of_arc.items()},
        "framings": list(link.framings),
    }


def dump_model(model: LinkInvariantModel) -> dict:
    def keyed(d):
        return {",".join(map(str, k)): v for k, v in sorted(d.items())}

    out = {
        "n": model.n,
        "arf": list(model.arf),
        "quarter_sl": keyed(model.quarter_sl),
        "triple": keyed(model.triple),
        "lk": [list(r) for r in model.lk_matrix],
    }
    if model.sato_levine is not None:
        out["sato_levine"] = keyed(model.sato_levine)
    return out


def dump_cubic(c: CubicForm) -> dict:
    return {
        "n": c.n,
        "linear": sorted(c.linear),
        "quadratic": [list(m) for m in sorted(c.quadratic)],
        "cubic": [list(m) for m in sorted(c.cubic)],
    }


def dump_cyclo(z: CycloInt) -> dict:
    return {"cyclo": list(z.coeffs), "integer": z.as_integer()}


def parse_cyclo(data: dict) -> CycloInt:
    coeffs = _int_list(_require(data, "cyclo", "cyclotomic integer"), "cyclo")
    if len(coeffs) != 8:
        raise ValidationError("E_SHAPE", "cyclo", "expected 8 coefficients")
    return CycloInt(coeffs)


def dump_tau4(r: Tau4Result) -> dict:
    return {"tau4": list(r.value.coeffs), "integer": r.value.as_integer(), "method": r.method, "terms": r.terms}


def parse_tau4(data: dict) -> Tau4Result:
    coeffs = _int_list(_require(data, "tau4", "tau4 result"), "tau4")
    return Tau4Result(CycloInt(coeffs), data["method"], _int(data["terms"], "terms"))


def parse_any(text: str, kind: str | None = None):
    data = load_json(text)
    return _PARSERS[kind or detect_kind(data)](data)


def pretty(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
