"""Z/4-valued quadratic enhancements of inner-product spaces over GF(2).

An enhancement e on (V, .) satisfies e(x + y) = e(x) + e(y) + 2 (x . y) in
Z/4, so it is fixed by its values on a basis, subject to e(b_i) = b_i . b_i
mod 2. The isomorphism class of (V, ., e) is determined by the dimension,
the radical dimension, the parity of the form, properness and the Brown
invariant; ``class_tuple`` packages these.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from ._config import enum_bound
from .cyclo import I, SQRT2, CycloInt
from .errors import BoundExceededError, DimensionError, ValidationError
from .gf2 import bitmatrix, bitvec, kernel, rank

__all__ = [
    "BrownValue",
    "INFINITY",
    "EnhancedSpace",
    "NormalForm",
    "ClassTuple",
    "evaluate",
    "radical",
    "is_proper",
    "value_counts",
    "gauss_sum",
    "brown",
    "direct_sum",
    "normal_form",
    "class_tuple",
    "from_normal_form",
    "P",
    "T",
    "A",
]


class BrownValue:
    """An element of Z/8 together with the absorbing value infinity."""

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        object.__setattr__(self, "value", None if value is None else int(value) % 8)

    def __setattr__(self, name, value):
        raise AttributeError("BrownValue is immutable")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "BrownValue | int") -> "BrownValue":
        if isinstance(other, int):
            other = BrownValue(other)
        if not isinstance(other, BrownValue):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return INFINITY
        return BrownValue(self.value + other.value)

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.value is not None and self.value == other % 8
        if isinstance(other, str):
            return self.is_infinite and other == "infinity"
        if isinstance(other, BrownValue):
            return self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("BrownValue", self.value))

    def __int__(self) -> int:
        if self.value is None:
            raise ValueError("the infinite Brown value has no integer representative")
        return self.value

    def __repr__(self) -> str:
        return f"BrownValue({self.value})"

    def __str__(self) -> str:
        return "infinity" if self.value is None else str(self.value)


INFINITY = BrownValue(None)


@dataclass(frozen=True)
class EnhancedSpace:
    """A symmetric GF(2) form with enhancement values on the standard basis."""

    form: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]

    def __init__(self, form: Sequence[Sequence[int]] | np.ndarray, values: Sequence[int]):
        F = bitmatrix(form, ncols=len(values)) if len(values) else np.zeros((0, 0), np.uint8)
        m = len(values)
        if F.shape != (m, m):
            raise DimensionError(f"form has shape {F.shape}, expected {m}x{m} to match the values")
        if not (F == F.T).all():
            i, j = map(int, np.argwhere(F != F.T)[0])
            raise ValidationError("E_SYMMETRY", f"form[{i}][{j}]", "inner product form must be symmetric")
        vals = tuple(int(v) % 4 for v in values)
        for i, v in enumerate(vals):
            if v % 2 != F[i, i]:
                raise ValidationError(
                    "E_PARITY",
                    f"values[{i}]",
                    f"value {v} violates e(x) ≡ x·x (mod 2), since x·x = {int(F[i, i])}",
                )
        object.__setattr__(self, "form", tuple(tuple(int(x) for x in row) for row in F))
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.values)

    def matrix(self) -> np.ndarray:
        return np.array(self.form, dtype=np.uint8).reshape(self.dim, self.dim)

    def is_even(self) -> bool:
        """True when x.x = 0 for all x, i.e. the diagonal vanishes."""
        return not any(self.form[i][i] for i in range(self.dim))

    def __repr__(self) -> str:
        return f"EnhancedSpace(form={[list(r) for r in self.form]}, values={list(self.values)})"


class NormalForm(NamedTuple):
    t0: int = 0
    t4: int = 0
    p1: int = 0
    pm1: int = 0
    a0: int = 0
    ainf: int = 0


class ClassTuple(NamedTuple):
    dim: int
    radical_dim: int
    even: bool
    proper: bool
    brown: BrownValue


# generators -----------------------------------------------------------------

def P(sign: int = 1) -> EnhancedSpace:
    """P_1 (value 1) or P_-1 (value 3) on the 1-dimensional odd form."""
    return EnhancedSpace([[1]], [1 if sign % 4 == 1 else 3])


def T(a: int = 0, b: int = 0) -> EnhancedSpace:
    """The hyperbolic plane with basis values (a, b) in {0, 2}."""
    return EnhancedSpace([[0, 1], [1, 0]], [a, b])


def A(value: int = 0) -> EnhancedSpace:
    """The 1-dimensional zero form: A_0 (value 0) or A_infinity (value 2)."""
    return EnhancedSpace([[0]], [value])


# basic operations -----------------------------------------------------------

def _check_bound(m: int) -> None:
    bound = enum_bound()
    if m > bound:
        raise BoundExceededError("enhanced space dimension", m, bound)


def evaluate(space: EnhancedSpace, x) -> int:
    """e(x) in Z/4 by the quadratic identity."""
    x = bitvec(x)
    if len(x) != space.dim:
        raise DimensionError(f"vector has length {len(x)}, space has dimension {space.dim}")
    idx = [i for i in range(space.dim) if x[i]]
    total = sum(space.values[i] for i in idx)
    total += 2 * sum(space.form[i][j] for a, i in enumerate(idx) for j in idx[a + 1:])
    return total % 4


def radical(space: EnhancedSpace) -> list[np.ndarray]:
    """A basis of V-perp, the kernel of the form."""
    if space.dim == 0:
        return []
    return kernel(space.matrix())


def is_proper(space: EnhancedSpace) -> bool:
    # e is linear on the radical (the form vanishes there), so a basis suffices
    return all(evaluate(space, r) == 0 for r in radical(space))


def value_counts(space: EnhancedSpace) -> np.ndarray:
    """(e0, e1, e2, e3): how many x in V have e(x) = 0, 1, 2, 3."""
    _check_bound(space.dim)
    rows = [sum(bit << j for j, bit in enumerate(r)) for r in space.form]
    return _kernels.enhancement_counts(rows, list(space.values))


def gauss_sum(space: EnhancedSpace) -> CycloInt:
    """Sum over x of i^e(x), exactly."""
    e0, e1, e2, e3 = (int(c) for c in value_counts(space))
    return CycloInt.from_int(e0 - e2) + (e1 - e3) * I


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


# direction of the Gauss sum (e0 - e2) + i (e1 - e3) in the plane, by octant
_BROWN_TABLE = {
    (1, 0): 0,
    (1, 1): 1,
    (0, 1): 2,
    (-1, 1): 3,
    (-1, 0): 4,
    (-1, -1): 5,
    (0, -1): 6,
    (1, -1): 7,
}


def brown_from_counts(counts: Sequence[int]) -> BrownValue:
    e0, e1, e2, e3 = (int(c) for c in counts)
    key = (_sign(e0 - e2), _sign(e1 - e3))
    if key == (0, 0):
        return INFINITY
    return BrownValue(_BROWN_TABLE[key])


def brown(space: EnhancedSpace) -> BrownValue:
    """The Brown invariant in Z/8, or infinity for improper enhancements."""
    return brown_from_counts(value_counts(space))


def direct_sum(a: EnhancedSpace, b: EnhancedSpace) -> EnhancedSpace:
    m, n = a.dim, b.dim
    F = np.zeros((m + n, m + n), dtype=np.uint8)
    if m:
        F[:m, :m] = a.matrix()
    if n:
        F[m:, m:] = b.matrix()
    return EnhancedSpace(F, list(a.values) + list(b.values))


def class_tuple(space: EnhancedSpace) -> ClassTuple:
    m = space.dim
    n = m - (rank(space.matrix()) if m else 0)
    beta = brown(space)
    return ClassTuple(m, n, space.is_even(), not beta.is_infinite, beta)


def normal_form(space: EnhancedSpace) -> NormalForm:
    """Canonical counts of T0, T4, P1, P-1, A0, A-infinity summands."""
    m, n, even, proper, beta = class_tuple(space)
    r = m - n
    if not proper:
        if even:
            return NormalForm(t0=r // 2, a0=n - 1, ainf=1)
        return NormalForm(p1=r, a0=n - 1, ainf=1)
    b = int(beta)
    if even:
        t4 = 1 if b == 4 else 0
        return NormalForm(t0=r // 2 - t4, t4=t4, a0=n)
    pm1 = ((r - b) // 2) % 4
    return NormalForm(p1=r - pm1, pm1=pm1, a0=n)


def from_normal_form(nf: NormalForm) -> EnhancedSpace:
    """The direct sum of generators described by a normal form."""
    parts = (
        [T(0, 0)] * nf.t0
        + [T(2, 2)] * nf.t4
        + [P(1)] * nf.p1
        + [P(-1)] * nf.pm1
        + [A(0)] * nf.a0
        + [A(2)] * nf.ainf
    )
    out = EnhancedSpace(np.zeros((0, 0), dtype=np.uint8), [])
    for p in parts:
        out = direct_sum(out, p)
    return out


def gauss_law_value(space: EnhancedSpace) -> CycloInt:
    """The Gauss sum predicted from the class: sqrt2^(m+n) w^(2 beta), or 0."""
    m, n, _, proper, beta = class_tuple(space)
    if not proper:
        return CycloInt()
    return SQRT2 ** (m + n) * CycloInt.omega(2 * int(beta))
