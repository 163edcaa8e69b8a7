"""Conway polynomials of link diagrams by the skein relation.

    nabla(L+) - nabla(L-) = z nabla(L0),  nabla(unknot) = 1,  nabla(split) = 0.

Components get basepoints at their smallest arc id and are ordered by it.
Walking the components in that order, a crossing first met on its under
strand is switched, which moves the diagram toward a descending one (an
unlink); the smoothing has one crossing fewer. R1 kinks are removed first
and results are memoized on a canonical relabelling that keeps basepoints.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ._config import conway_bound
from .errors import BoundExceededError
from .pd import PDLink, _UnionFind, delete_components

__all__ = ["ConwayPoly", "conway", "c1", "c1_table"]


class ConwayPoly:
    """An integer polynomial in z, coefficients listed from z^0 up."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "ConwayPoly") -> "ConwayPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPoly([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    def shift(self, sign: int) -> "ConwayPoly":
        """sign * z * self."""
        return ConwayPoly([0] + [sign * c for c in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ConwayPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == ConwayPoly(other).coeffs
        if isinstance(other, int):
            return self.coeffs == ConwayPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ConwayPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else "z" if k == 1 else f"z^{k}"
                coef = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
                terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


_ZERO = ConwayPoly()
_ONE = ConwayPoly([1])


def _merge(xs: list, pairs) -> list:
    uf = _UnionFind()
    for a, b in pairs:
        uf.union(a, b)
    return [tuple(uf.find(a) for a in x[:4]) + (x[4],) for x in xs]


def _simplify(xs: list, loops: int) -> tuple[list, int]:
    """Remove R1 kinks; count circles that lose all their crossings."""
    while True:
        for k, (ui, uo, oi, oo, s) in enumerate(xs):
            if uo == oi or oo == ui:
                rest = xs[:k] + xs[k + 1:]
                pair = (ui, oo) if uo == oi else (oi, uo)
                if pair[0] == pair[1] or (uo == oi and oo == ui):
                    # the whole strand was this kink
                    loops += 1
                    xs = rest
                else:
                    xs = _merge(rest, [pair])
                break
        else:
            return xs, loops


def _canonical(xs: list) -> tuple:
    """Relabel arcs along components in basepoint order; keeps basepoints."""
    nxt = {}
    for ui, uo, oi, oo, _ in xs:
        nxt[ui] = uo
        nxt[oi] = oo
    label = {}
    for start in sorted(nxt):
        if start in label:
            continue
        a = start
        while a not in label:
            label[a] = len(label)
            a = nxt[a]
    return tuple(sorted(tuple(label[a] for a in x[:4]) + (x[4],) for x in xs))


def _is_split(xs: tuple) -> bool:
    uf = _UnionFind()
    for k, x in enumerate(xs):
        for a in x[:4]:
            uf.union(("x", k), ("a", a))
    return len({uf.find(("x", k)) for k in range(len(xs))}) > 1


@lru_cache(maxsize=1 << 18)
def _nabla(xs: tuple) -> ConwayPoly:
    """Conway polynomial of a canonical crossing list with no free circles."""
    if not xs:
        return _ONE
    if _is_split(xs):
        return _ZERO
    nxt = {}
    at = {}
    for k, (ui, uo, oi, oo, _) in enumerate(xs):
        nxt[ui] = uo
        nxt[oi] = oo
        at[ui] = (k, "u")
        at[oi] = (k, "o")
    met = set()
    for start in sorted(nxt):
        if start in met:
            continue
        a = start
        while True:
            met.add(a)
            k, role = at[a]
            if ("x", k) not in met:
                met.add(("x", k))
                if role == "u":
                    return _skein(xs, k)
            a = nxt[a]
            if a == start:
                break
    # descending diagram: an unlink with one component per strand
    return _ONE if _strands(xs) == 1 else _ZERO


def _strands(xs) -> int:
    nxt = {}
    for ui, uo, oi, oo, _ in xs:
        nxt[ui] = uo
        nxt[oi] = oo
    seen = set()
    count = 0
    for s in nxt:
        if s in seen:
            continue
        count += 1
        a = s
        while a not in seen:
            seen.add(a)
            a = nxt[a]
    return count


def _skein(xs: tuple, k: int) -> ConwayPoly:
    ui, uo, oi, oo, s = xs[k]
    switched = list(xs)
    switched[k] = (oi, oo, ui, uo, -s)
    rest = list(xs[:k]) + list(xs[k + 1:])
    uf = _UnionFind()
    uf.union(ui, oo)
    uf.union(oi, uo)
    smoothed = [tuple(uf.find(a) for a in y[:4]) + (y[4],) for y in rest]
    used = {a for y in smoothed for a in y[:4]}
    lost = len({uf.find(ui), uf.find(oi)} - used)
    return _evaluate(switched, 0) + _evaluate(smoothed, lost).shift(s)


def _evaluate(xs: list, loops: int) -> ConwayPoly:
    xs, loops = _simplify(list(xs), loops)
    if loops:
        return _ONE if (loops == 1 and not xs) else _ZERO
    return _nabla(_canonical(xs))


def conway(link: PDLink) -> ConwayPoly:
    """The Conway polynomial of the underlying oriented link (framings ignored)."""
    bound = conway_bound()
    if link.n_crossings > bound:
        raise BoundExceededError("crossings in the Conway skein evaluation", link.n_crossings, bound)
    loops = len(link.free_arcs())
    if link.n_components == 0:
        return _ONE
    return _evaluate(list(link.crossings), loops)


def c1(link: PDLink) -> int:
    """Coefficient of z^(s+1) in the Conway polynomial of an s-component link."""
    return conway(link).coefficient(link.n_components + 1)


def c1_table(link: PDLink, max_size: int = 3) -> dict[int, int]:
    """c1 of every sublink with 1..max_size components, keyed by bitmask."""
    out = {}
    n = link.n_components
    for size in range(1, min(max_size, n) + 1):
        for combo in combinations(range(n), size):
            mask = sum(1 << i for i in combo)
            out[mask] = c1(delete_components(link, mask))
    return out
