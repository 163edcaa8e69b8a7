"""Counting reductions from 3-CNF formulas to cubic forms over GF(2).

Truth values are encoded T = 0, F = 1, so a clause becomes the product of
its falsified-literal indicators: x for a positive literal, 1 + x for a
negated one. Variables are numbered from 1 throughout this module, as in
DIMACS; variable i of a cubic form corresponds to link component i - 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._config import count_bound
from .cyclo import CycloInt
from .errors import BoundExceededError, InconsistentDataError, ValidationError
from .invariants import LinkInvariantModel
from .surgery import Tau4Result

__all__ = [
    "CNF3",
    "GF2Poly",
    "CubicForm",
    "QuadSystem",
    "parse_dimacs",
    "to_dimacs",
    "cnf_to_cubic_system",
    "to_quad_system",
    "to_single_cubic",
    "count_zeros",
    "count_models",
    "tau4_of_cubic",
    "cubic_to_model",
    "counting_identity",
]


# data types -----------------------------------------------------------------

@dataclass(frozen=True)
class CNF3:
    nvars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for k, c in enumerate(clauses):
            if len(c) != 3:
                raise ValidationError("E_CLAUSE_WIDTH", f"clauses[{k}]", f"has {len(c)} literals, expected 3")
            for lit in c:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValidationError("E_LITERAL", f"clauses[{k}]", f"literal {lit} outside 1..{self.nvars}")
        object.__setattr__(self, "clauses", clauses)


def _monomial(m: Iterable[int]) -> tuple:
    return tuple(sorted(set(int(v) for v in m)))


@dataclass(frozen=True)
class GF2Poly:
    """A polynomial over GF(2) in x_1..x_nvars with x^2 = x; () is the constant 1."""

    nvars: int
    monomials: frozenset

    def __init__(self, nvars: int, monomials: Iterable[Iterable[int]] = ()):
        acc: set = set()
        for m in monomials:
            acc ^= {_monomial(m)}
        for m in acc:
            if any(v < 1 or v > nvars for v in m):
                raise ValidationError("E_VARIABLE", "monomials", f"monomial {m} uses a variable outside 1..{nvars}")
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "monomials", frozenset(acc))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=-1)

    def __add__(self, other: "GF2Poly") -> "GF2Poly":
        return GF2Poly(max(self.nvars, other.nvars), list(self.monomials) + list(other.monomials))

    def __mul__(self, other: "GF2Poly") -> "GF2Poly":
        terms = [a + b for a in self.monomials for b in other.monomials]
        return GF2Poly(max(self.nvars, other.nvars), terms)

    def evaluate(self, x: Sequence[int]) -> int:
        """Value at x, where x[i - 1] is the value of variable i."""
        return sum(all(x[v - 1] for v in m) for m in self.monomials) % 2

    def sorted_monomials(self) -> list[tuple]:
        return sorted(self.monomials, key=lambda m: (len(m), m))

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join("1" if not m else "".join(f"x{v}" for v in m) for m in self.sorted_monomials())


@dataclass(frozen=True)
class CubicForm:
    """sum c_i x_i + sum c_ij x_i x_j + sum c_ijk x_i x_j x_k, no constant term."""

    n: int
    linear: frozenset = field(default_factory=frozenset)
    quadratic: frozenset = field(default_factory=frozenset)
    cubic: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for name, size in (("linear", 1), ("quadratic", 2), ("cubic", 3)):
            acc: set = set()
            for item in getattr(self, name):
                m = (int(item),) if size == 1 and not isinstance(item, (tuple, list)) else tuple(int(v) for v in item)
                if len(m) != size or len(set(m)) != size:
                    raise ValidationError("E_MONOMIAL", name, f"{list(m)} is not {size} distinct indices")
                if any(v < 1 or v > self.n for v in m):
                    raise ValidationError("E_VARIABLE", name, f"{list(m)} uses a variable outside 1..{self.n}")
                acc ^= {tuple(sorted(m))}
            if size == 1:
                acc = {m[0] for m in acc}
            object.__setattr__(self, name, frozenset(acc))

    @classmethod
    def from_poly(cls, p: GF2Poly) -> "CubicForm":
        if () in p.monomials:
            raise ValidationError("E_CONSTANT", "poly", "cubic forms have no constant term")
        if p.degree > 3:
            raise ValidationError("E_DEGREE", "poly", f"degree {p.degree} exceeds 3")
        by = {1: [], 2: [], 3: []}
        for m in p.monomials:
            by[len(m)].append(m)
        return cls(p.nvars, frozenset(m[0] for m in by[1]), frozenset(by[2]), frozenset(by[3]))

    def to_poly(self) -> GF2Poly:
        return GF2Poly(self.n, [(i,) for i in self.linear] + list(self.quadratic) + list(self.cubic))

    def evaluate(self, x: Sequence[int]) -> int:
        return self.to_poly().evaluate(x)

    def kernel_args(self) -> tuple[int, list[int], list[tuple]]:
        """(lin mask, pair masks, 0-based triples) as used by the counting kernels."""
        lin = sum(1 << (i - 1) for i in self.linear)
        pairs = [0] * self.n
        for i, j in self.quadratic:
            pairs[i - 1] |= 1 << (j - 1)
        triples = [(i - 1, j - 1, k - 1) for i, j, k in sorted(self.cubic)]
        return lin, pairs, triples


@dataclass(frozen=True)
class QuadSystem:
    """k equations of degree <= 2 in m variables (the first n_original are the CNF's)."""

    m: int
    polys: tuple
    n_original: int = 0
    products: tuple = ()  # ((j, k), variable) pairs introduced

    @property
    def k(self) -> int:
        return len(self.polys)


# DIMACS ---------------------------------------------------------------------

def parse_dimacs(text: str) -> CNF3:
    """Parse DIMACS CNF; every clause must have exactly three literals."""
    header = None
    clauses: list[tuple] = []
    current: list[int] = []
    start_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ValidationError("E_DIMACS_HEADER", "header", "duplicate problem line", lineno)
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise ValidationError("E_DIMACS_HEADER", "header", f"expected 'p cnf <vars> <clauses>', got {line!r}", lineno)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        if header is None:
            raise ValidationError("E_DIMACS_HEADER", "header", "clause before the problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValidationError("E_DIMACS_TOKEN", "clause", f"bad token {tok!r}", lineno) from None
            if start_line is None:
                start_line = lineno
            if lit == 0:
                if len(current) != 3:
                    raise ValidationError(
                        "E_CLAUSE_WIDTH", f"clause {len(clauses) + 1}", f"has {len(current)} literals, expected 3", start_line
                    )
                if any(abs(v) > header[0] for v in current):
                    raise ValidationError(
                        "E_LITERAL", f"clause {len(clauses) + 1}", f"variable outside 1..{header[0]}", start_line
                    )
                clauses.append(tuple(current))
                current, start_line = [], None
            else:
                current.append(lit)
    if header is None:
        raise ValidationError("E_DIMACS_HEADER", "header", "missing 'p cnf' line")
    if current:
        raise ValidationError("E_CLAUSE_WIDTH", f"clause {len(clauses) + 1}", "not terminated by 0", start_line)
    if len(clauses) != header[1]:
        raise ValidationError("E_DIMACS_HEADER", "header", f"declares {header[1]} clauses, found {len(clauses)}")
    return CNF3(header[0], tuple(clauses))


def to_dimacs(e: CNF3) -> str:
    lines = [f"p cnf {e.nvars} {len(e.clauses)}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in e.clauses]
    return "\n".join(lines) + "\n"


# the reduction pipeline ----------------------------------------------------

def cnf_to_cubic_system(e: CNF3) -> list[GF2Poly]:
    """One polynomial per clause, vanishing exactly when the clause holds.

    Truth values are encoded as true = 0 and false = 1, so a positive
    literal contributes the factor x_v and a negative one 1 + x_v.
    """
    out = []
    for clause in e.clauses:
        p = GF2Poly(e.nvars, [()])
        for lit in clause:
            v = abs(lit)
            factor = GF2Poly(e.nvars, [(v,)] if lit > 0 else [(), (v,)])
            p = p * factor
        out.append(p)
    return out


def to_quad_system(cubics: Sequence[GF2Poly], nvars: int | None = None) -> QuadSystem:
    """Replace each cubic by a product-variable definition and a quadratic.

    The product variable pairs the lexicographically smallest two indices
    shared by all cubic monomials of the equation and is reused across
    equations. Equations of degree <= 2 get a zero companion so that every
    input contributes exactly two equations.
    """
    n = max([p.nvars for p in cubics] + [nvars or 0])
    m = n
    products: dict[tuple, int] = {}
    polys: list[GF2Poly] = []
    zero = None
    for idx, p in enumerate(cubics):
        if p.degree > 3:
            raise ValidationError("E_DEGREE", f"polys[{idx}]", f"degree {p.degree} exceeds 3")
        cubes = [mono for mono in p.monomials if len(mono) == 3]
        if not cubes:
            polys += [GF2Poly(n, []), p]
            continue
        common = set(combinations(cubes[0], 2))
        for mono in cubes[1:]:
            common &= set(combinations(mono, 2))
        if not common:
            raise InconsistentDataError(
                f"equation {idx} has cubic monomials with no common pair; one product variable cannot lower its degree"
            )
        pair = min(common)
        if pair not in products:
            m += 1
            products[pair] = m
        z = products[pair]
        definition = GF2Poly(m, [(z,), pair])
        rest = [mono if len(mono) < 3 else tuple(v for v in mono if v not in pair) + (z,) for mono in p.monomials]
        polys += [definition, GF2Poly(m, rest)]
    polys = [GF2Poly(m, q.monomials) for q in polys]
    return QuadSystem(m, tuple(polys), n, tuple(sorted(products.items(), key=lambda t: t[1])))


def to_single_cubic(q: QuadSystem) -> CubicForm:
    """c = sum_i z_i q_i in the m + k variables x_1..x_m, z_1..z_k."""
    total = q.m + q.k
    terms = []
    for i, poly in enumerate(q.polys):
        if poly.degree > 2:
            raise ValidationError("E_DEGREE", f"polys[{i}]", "quadratic system entries must have degree <= 2")
        z = q.m + 1 + i
        terms += [mono + (z,) for mono in poly.monomials]
    return CubicForm.from_poly(GF2Poly(total, terms))


# counting -------------------------------------------------------------------

def _check_count(n: int) -> None:
    bound = count_bound()
    if n > bound:
        raise BoundExceededError("variables in an exhaustive count", n, bound)


def _system_zeros(nvars: int, polys: Sequence[GF2Poly]) -> int:
    _check_count(nvars)
    chunk = 1 << min(nvars, 16)
    total = 0
    for start in range(0, 1 << nvars, chunk):
        xs = np.arange(start, start + chunk, dtype=np.int64)
        ok = np.ones(chunk, dtype=bool)
        for p in polys:
            val = np.zeros(chunk, dtype=np.int64)
            for mono in p.monomials:
                mask = sum(1 << (v - 1) for v in mono)
                val ^= ((xs & mask) == mask).astype(np.int64)
            ok &= val == 0
        total += int(ok.sum())
    return total


def count_zeros(c) -> int:
    """Zeros of a CubicForm, or common zeros of a QuadSystem / list of polys."""
    if isinstance(c, CubicForm):
        _check_count(c.n)
        return _kernels.cubic_zero_count(c.n, *c.kernel_args())
    if isinstance(c, QuadSystem):
        return _system_zeros(c.m, c.polys)
    if isinstance(c, GF2Poly):
        return _system_zeros(c.nvars, [c])
    polys = list(c)
    return _system_zeros(max((p.nvars for p in polys), default=0), polys)


def count_models(e: CNF3) -> int:
    """Satisfying assignments of a 3-CNF, by enumeration."""
    _check_count(e.nvars)
    pos, neg = [], []
    for clause in e.clauses:
        pos.append(sum(1 << (v - 1) for v in {l for l in clause if l > 0}))
        neg.append(sum(1 << (v - 1) for v in {-l for l in clause if l < 0}))
    return _kernels.cnf_model_count(e.nvars, pos, neg)


def tau4_of_cubic(c: CubicForm) -> Tau4Result:
    """sum_x (-1)^c(x) = 2 #c - 2^n, the tau_4 invariant of M_c."""
    zeros = count_zeros(c)
    return Tau4Result(CycloInt.from_int(2 * zeros - (1 << c.n)), "model", 1 << c.n)


def cubic_to_model(c: CubicForm) -> LinkInvariantModel:
    """Invariant data of the 0-framed link L_c (component i = variable i + 1)."""
    return LinkInvariantModel(
        n=c.n,
        arf=[int(i + 1 in c.linear) for i in range(c.n)],
        quarter_sl={(i - 1, j - 1): 1 for i, j in c.quadratic},
        triple={(i - 1, j - 1, k - 1): 1 for i, j, k in c.cubic},
        lk_matrix=[[0] * c.n for _ in range(c.n)],
    )


def counting_identity(e: CNF3) -> dict:
    """Run the pipeline and compare #c with 2^(m+k-1) + 2^(k-1) #e."""
    quad = to_quad_system(cnf_to_cubic_system(e), e.nvars)
    single = to_single_cubic(quad)
    models = count_models(e)
    zeros = count_zeros(single)
    m, k = quad.m, quad.k
    if k:
        expected = (1 << (m + k - 1)) + (1 << (k - 1)) * models
    else:
        # no clauses: c is the zero form on m variables and every x is a zero
        expected = 1 << m
    return {
        "n": e.nvars,
        "r": len(e.clauses),
        "m": m,
        "k": k,
        "models": models,
        "quad_zeros": count_zeros(quad),
        "zeros": zeros,
        "expected": expected,
        "holds": zeros == expected,
    }
