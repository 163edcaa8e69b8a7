"""Exact arithmetic in Z[w], w a primitive 16th root of unity.

Elements are stored in the power basis 1, w, ..., w^7 with the single
relation w^8 = -1 (the 16th cyclotomic polynomial is x^8 + 1), so the
representation is unique and every operation is exact on Python ints.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence, Union

from .errors import Tau4Error

DEGREE = 8

Scalar = Union[int, "CycloInt"]


def _reduce(raw: Sequence[int]) -> tuple[int, ...]:
    # fold w^(8+j) = -w^j; raw may be up to length 15
    out = [0] * DEGREE
    for k, c in enumerate(raw):
        if not c:
            continue
        q, r = divmod(k, DEGREE)
        out[r] += -c if q & 1 else c
    return tuple(out)


class CycloInt:
    """An element c0 + c1 w + ... + c7 w^7 of Z[w]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        if len(cs) > DEGREE:
            cs = list(_reduce(cs))
        cs.extend([0] * (DEGREE - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloInt is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "CycloInt":
        return cls((n,))

    @classmethod
    def omega(cls, k: int = 1) -> "CycloInt":
        """Return w^k for any integer k."""
        k %= 16
        coeffs = [0] * DEGREE
        coeffs[k % DEGREE] = -1 if k >= DEGREE else 1
        return cls(coeffs)

    @classmethod
    def from_exponent_counts(cls, counts: Sequence[int]) -> "CycloInt":
        """Return sum_k counts[k] * w^k for a length-16 histogram."""
        if len(counts) != 16:
            raise ValueError("expected 16 exponent counts")
        return cls([int(counts[j]) - int(counts[j + DEGREE]) for j in range(DEGREE)])

    # ring operations ------------------------------------------------------
    @staticmethod
    def _coerce(other: Scalar) -> "CycloInt":
        if isinstance(other, CycloInt):
            return other
        if isinstance(other, int):
            return CycloInt.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Scalar) -> "CycloInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloInt(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "CycloInt":
        return CycloInt(-a for a in self.coeffs)

    def __sub__(self, other: Scalar) -> "CycloInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloInt(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other: Scalar) -> "CycloInt":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CycloInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        raw = [0] * (2 * DEGREE - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        raw[i + j] += a * b
        return CycloInt(_reduce(raw))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycloInt":
        return cyclo_pow(self, k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycloInt.from_int(other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("CycloInt", self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # Galois action and norms ---------------------------------------------
    def galois(self, k: int) -> "CycloInt":
        """Apply the automorphism w -> w^k (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois exponent must be odd")
        out = CycloInt()
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + c * CycloInt.omega(j * k)
        return out

    def conjugate(self) -> "CycloInt":
        return self.galois(15)

    def norm(self) -> int:
        """Field norm to Z: the product of all eight Galois conjugates."""
        prod = CycloInt.from_int(1)
        for k in range(1, 16, 2):
            prod = prod * self.galois(k)
        return prod.to_int()

    def inverse(self) -> "CycloInt":
        adj = CycloInt.from_int(1)
        for k in range(3, 16, 2):
            adj = adj * self.galois(k)
        n = (self * adj).to_int()
        if n not in (1, -1):
            raise Tau4Error(f"{self!r} is not a unit (norm {n})")
        return adj if n == 1 else -adj

    # inspection -----------------------------------------------------------
    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def as_integer(self) -> int | None:
        return self.coeffs[0] if self.is_integer() else None

    def to_complex(self) -> complex:
        """Floating-point image under w -> exp(2 pi i / 16); display only."""
        w = cmath.exp(2j * cmath.pi / 16)
        return sum(c * w**k for k, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CycloInt({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "w" if k == 1 else f"w^{k}"
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


OMEGA = CycloInt.omega(1)
I = CycloInt.omega(4)
SQRT2 = CycloInt.omega(2) - CycloInt.omega(6)
ZERO = CycloInt()
ONE = CycloInt.from_int(1)


def cyclo_mul(a: CycloInt, b: CycloInt) -> CycloInt:
    return a * b


def cyclo_pow(a: CycloInt, k: int) -> CycloInt:
    """Exact power; negative k requires a to be a unit."""
    if k < 0:
        return cyclo_pow(a.inverse(), -k)
    # monomials in w are common; skip the multiply loop for them
    nz = [j for j, c in enumerate(a.coeffs) if c]
    if len(nz) == 1 and a.coeffs[nz[0]] in (1, -1):
        sign = a.coeffs[nz[0]] ** (k & 1)
        return sign * CycloInt.omega(nz[0] * k) if k else ONE
    result = ONE
    base = a
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result
