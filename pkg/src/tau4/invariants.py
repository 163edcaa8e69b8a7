"""Arf and Brown invariants of links, and mu-invariants of spin structures.

Arf invariants of totally proper links come from Conway coefficients: the
Hoste-Murakami sum of c1 over sublinks with at most three components. The
same number can be assembled from abstract data (component Arf values,
Sato-Levine and triple Milnor invariants) held in a ``LinkInvariantModel``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .conway import c1, c1_table
from .enhanced import BrownValue, EnhancedSpace, brown
from .errors import (
    DimensionError,
    InconsistentDataError,
    NotCharacteristicError,
    NotTotallyProperError,
    ValidationError,
)
from .intmat import as_symmetric, quadratic_value, signature
from .pd import PDLink, delete_components, linking_matrix

__all__ = [
    "Band",
    "half_twist",
    "DoubleBandData",
    "quarter_twist",
    "LinkInvariantModel",
    "ImmersionData",
    "check_totally_proper",
    "arf_hoste_murakami",
    "arf_from_c1",
    "arf_theorem11",
    "model_from_link",
    "lk_total",
    "brown_of_proper_link",
    "brown_totally_proper_model",
    "theorem4_combine",
    "mu_invariant",
]


# bands ----------------------------------------------------------------------

@dataclass(frozen=True)
class Band:
    half_twists: int
    writhe: int


def half_twist(band: Band) -> tuple[int, int]:
    """(exact, mod 4) self-linking of a band: twists plus twice the writhe."""
    exact = band.half_twists + 2 * band.writhe
    return exact, exact % 4


@dataclass(frozen=True)
class DoubleBandData:
    """Quarter-twist values (mod 8) of the double curves and a triple point count."""

    quarter_twists: tuple = ()
    triple_points: int = 0

    def __post_init__(self):
        object.__setattr__(self, "quarter_twists", tuple(int(q) % 8 for q in self.quarter_twists))
        if self.triple_points < 0:
            raise ValidationError("E_RANGE", "triple_points", "must be nonnegative")

    @property
    def delta(self) -> int:
        return sum(self.quarter_twists) % 8


def quarter_twist(quarter_twists: int, writhe: int) -> int:
    """Quarter-twist value of a connected double band, mod 8.

    Odd values belong to double curves whose preimage is a single circle
    (orientation-reversing), even ones to a pair of circles.
    """
    return (quarter_twists + 4 * writhe) % 8


# models ---------------------------------------------------------------------

def _pair_key(key) -> tuple:
    if isinstance(key, str):
        key = tuple(int(t) for t in key.split(","))
    key = tuple(sorted(int(t) for t in key))
    return key


@dataclass(frozen=True)
class LinkInvariantModel:
    """Invariant data of a framed link, enough to evaluate Arf invariants.

    ``quarter_sl[(i, j)]`` is (lambda + lk)/4 mod 2, ``sato_levine`` holds
    lambda itself (even, optional) and ``triple`` the mod 2 triple Milnor
    invariants. Keys are sorted index tuples; missing keys mean 0.
    """

    n: int
    arf: tuple
    quarter_sl: Mapping[tuple, int] = field(default_factory=dict)
    triple: Mapping[tuple, int] = field(default_factory=dict)
    lk_matrix: tuple = ()
    sato_levine: Mapping[tuple, int] | None = None

    def __post_init__(self):
        n = int(self.n)
        if n < 0:
            raise ValidationError("E_RANGE", "n", "component count must be nonnegative")
        arf = tuple(int(a) % 2 for a in self.arf)
        if len(arf) != n:
            raise DimensionError(f"{len(arf)} Arf values for {n} components")
        if len(self.lk_matrix) == 0:
            lk = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        else:
            lk = tuple(tuple(row) for row in as_symmetric(self.lk_matrix))
        if len(lk) != n:
            raise DimensionError(f"linking matrix is {len(lk)}x{len(lk)}, expected {n}x{n}")

        def clean(data, size, name, reduce):
            out = {}
            for key, v in (data or {}).items():
                k = _pair_key(key)
                if len(k) != size or len(set(k)) != size or not all(0 <= t < n for t in k):
                    raise ValidationError("E_INDEX", f"{name}[{key}]", f"expected {size} distinct indices in 0..{n - 1}")
                out[k] = reduce(int(v))
            return out

        qsl = clean(self.quarter_sl, 2, "quarter_sl", lambda v: v % 2)
        tri = clean(self.triple, 3, "triple", lambda v: v % 2)
        sl = None
        if self.sato_levine is not None:
            sl = clean(self.sato_levine, 2, "sato_levine", lambda v: v)
            for (i, j), lam in sl.items():
                where = f"sato_levine[{i},{j}]"
                if lam % 2:
                    raise ValidationError("E_SL_PARITY", where, f"lambda = {lam} must be even")
                if (lam - lk[i][j]) % 4:
                    raise ValidationError("E_SL_LK", where, f"lambda = {lam} must be congruent to lk = {lk[i][j]} mod 4")
                want = ((lam + lk[i][j]) // 4) % 2
                if (i, j) in qsl and qsl[(i, j)] != want:
                    raise ValidationError(
                        "E_QSL", f"quarter_sl[{i},{j}]", f"is {qsl[(i, j)]} but (lambda + lk)/4 = {want} mod 2"
                    )
                qsl.setdefault((i, j), want)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arf", arf)
        object.__setattr__(self, "lk_matrix", lk)
        object.__setattr__(self, "quarter_sl", qsl)
        object.__setattr__(self, "triple", tri)
        object.__setattr__(self, "sato_levine", sl)

    def restrict(self, keep: Sequence[int] | int) -> "LinkInvariantModel":
        """Sub-model on the listed components (or the bits of a mask), renumbered."""
        if isinstance(keep, int):
            keep = [i for i in range(self.n) if keep >> i & 1]
        keep = list(keep)
        idx = {c: k for k, c in enumerate(keep)}

        def sub(data):
            return {tuple(idx[t] for t in k): v for k, v in data.items() if all(t in idx for t in k)}

        return LinkInvariantModel(
            n=len(keep),
            arf=[self.arf[c] for c in keep],
            quarter_sl=sub(self.quarter_sl),
            triple=sub(self.triple),
            lk_matrix=[[self.lk_matrix[a][b] for b in keep] for a in keep],
            sato_levine=None if self.sato_levine is None else sub(self.sato_levine),
        )

    def cubic_coefficients(self) -> tuple[list[int], dict, dict]:
        """(linear, pair, triple) coefficients of x -> Arf of sublink x."""
        return list(self.arf), dict(self.quarter_sl), dict(self.triple)


@dataclass(frozen=True)
class ImmersionData:
    """Data of a proper immersed surface bounded by a link."""

    beta_f: object
    phi_f: int
    delta_f: int = 0
    tau_f: int = 0
    lk_total: int = 0

    def brown_value(self) -> BrownValue:
        b = self.beta_f
        if isinstance(b, EnhancedSpace):
            return brown(b)
        if isinstance(b, BrownValue):
            return b
        if b is None or b == "infinity":
            return BrownValue(None)
        return BrownValue(int(b))


# Arf invariants -------------------------------------------------------------

def check_totally_proper(lk: Sequence[Sequence[int]]) -> None:
    n = len(lk)
    for i in range(n):
        for j in range(i + 1, n):
            if lk[i][j] % 2:
                raise NotTotallyProperError(i, j, lk[i][j])


def arf_from_c1(table: Mapping[int, int], mask: int) -> int:
    """Hoste-Murakami sum for the sublink ``mask`` from a c1 table of small sublinks."""
    total = 0
    for sub, value in table.items():
        if sub & ~mask == 0:
            total += value
    return total % 2


def arf_hoste_murakami(link: PDLink) -> int:
    """Arf invariant of a totally proper link: sum of c1 over sublinks of size <= 3."""
    check_totally_proper(linking_matrix(link))
    if link.n_components == 0:
        return 0
    return arf_from_c1(c1_table(link), (1 << link.n_components) - 1)


def arf_theorem11(model: LinkInvariantModel) -> int:
    """Arf invariant of the whole modelled link from its invariant data."""
    check_totally_proper(model.lk_matrix)
    total = sum(model.arf) + sum(model.quarter_sl.values()) + sum(model.triple.values())
    return total % 2


def model_from_link(link: PDLink) -> LinkInvariantModel:
    """Model whose mod 2 data are the c1 values of the link's small sublinks."""
    n = link.n_components
    table = c1_table(link)
    arf = [table[1 << i] % 2 for i in range(n)]
    qsl = {(i, j): table[(1 << i) | (1 << j)] % 2 for i, j in combinations(range(n), 2)}
    tri = {
        (i, j, k): table[(1 << i) | (1 << j) | (1 << k)] % 2 for i, j, k in combinations(range(n), 3)
    }
    return LinkInvariantModel(n, arf, qsl, tri, linking_matrix(link))


# Brown invariants -----------------------------------------------------------

def lk_total(lk: Sequence[Sequence[int]]) -> int:
    n = len(lk)
    return sum(lk[i][j] for i in range(n) for j in range(i + 1, n))


def brown_of_proper_link(link: PDLink) -> int:
    """Brown invariant 4 alpha + lk (mod 8) of a totally proper link."""
    lk = linking_matrix(link)
    return (4 * arf_hoste_murakami(link) + lk_total(lk)) % 8


def brown_totally_proper_model(model: LinkInvariantModel) -> int:
    """sum_i 4 arf_i - sum_{i<j} lambda_ij + 4 sum_{i<j<k} tau_ijk (mod 8)."""
    check_totally_proper(model.lk_matrix)
    if model.sato_levine is None:
        if model.n >= 2:
            raise InconsistentDataError("Sato-Levine values are required for the Brown invariant of a model")
        sl = {}
    else:
        sl = model.sato_levine
    pairs = list(combinations(range(model.n), 2))
    missing = [p for p in pairs if p not in sl]
    if missing:
        raise InconsistentDataError(f"missing Sato-Levine value for pair {missing[0]}")
    total = 4 * sum(model.arf) - sum(sl[p] for p in pairs) + 4 * sum(model.triple.values())
    return total % 8


def theorem4_combine(data: ImmersionData) -> tuple[int, int]:
    """(beta, alpha) of a proper link from an immersed surface it bounds.

    beta = beta_f - phi_f + 3 delta_f + 4 tau_f (mod 8) and
    alpha = (beta_f - phi_f - lk + 3 delta_f + 4 tau_f) / 4 (mod 2).
    """
    bf = data.brown_value()
    if bf.is_infinite:
        raise InconsistentDataError("beta_f is infinite: the surface enhancement is improper")
    core = int(bf) - data.phi_f + 3 * data.delta_f + 4 * data.tau_f
    numerator = (core - data.lk_total) % 8
    if numerator % 4:
        raise InconsistentDataError(
            f"beta_f - phi_f - lk + 3 delta_f + 4 tau_f = {numerator} (mod 8) is not divisible by 4"
        )
    return core % 8, numerator // 4


# spin structures ------------------------------------------------------------

def mu_invariant(link: PDLink, char_sublink) -> int:
    """sigma(Lambda) - C.C + 8 arf(C) (mod 16) for a characteristic sublink C."""
    lk = linking_matrix(link)
    n = link.n_components
    mask = getattr(char_sublink, "mask", char_sublink)
    if not isinstance(mask, int):
        mask = sum(1 << i for i, b in enumerate(mask) if b)
    x = [(mask >> i) & 1 for i in range(n)]
    for i in range(n):
        if sum(lk[i][j] * x[j] for j in range(n)) % 2 != lk[i][i] % 2:
            raise NotCharacteristicError(f"sublink {x} is not characteristic (fails at component {i})")
    cc = quadratic_value(lk, x)
    arf = arf_hoste_murakami(delete_components(link, mask))
    return (signature(lk) - cc + 8 * arf) % 16
