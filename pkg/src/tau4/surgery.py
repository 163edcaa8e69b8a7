"""The tau_4 invariant of a 3-manifold given by surgery on a framed link.

With Lambda the linking matrix, sigma its signature and C running over the
characteristic sublinks (x with Lambda x = diag Lambda mod 2),

    tau_4 = w^sigma * sum_C (-1)^arf(C) * w^(-C.C),    w = exp(2 pi i / 16).

The sum has 2^b1 terms. For a diagonal matrix with no Arf contributions it
factors into a product over the framings, which is what makes the
polynomial-time path possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernels
from ._config import enum_bound
from .conway import c1_table
from .cyclo import ONE, CycloInt, cyclo_pow
from .errors import BoundExceededError, NotTotallyProperError
from .gf2 import bitmatrix, bitvec, gf2_solve_affine, span, to_mask
from .intmat import as_symmetric, signature, stable_diagonalize
from .invariants import LinkInvariantModel, check_totally_proper, mu_invariant
from .pd import PDLink, linking_matrix

__all__ = [
    "Sublink",
    "Tau4Result",
    "characteristic_sublinks",
    "tau4_exponential",
    "tau4_spin_sum",
    "tau4_product",
    "tau4_diagonalize_and_product",
    "tau4_of_model",
]

METHODS = ("exponential", "spin_sum", "product", "model")


@dataclass(frozen=True)
class Sublink:
    """A sublink as a bitmask over ``n`` components (bit i = component i)."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask} does not fit {self.n} components")

    def bits(self) -> list[int]:
        return [(self.mask >> i) & 1 for i in range(self.n)]

    def components(self) -> list[int]:
        return [i for i in range(self.n) if self.mask >> i & 1]

    def __index__(self) -> int:
        return self.mask

    def __len__(self) -> int:
        return bin(self.mask).count("1")


@dataclass(frozen=True)
class Tau4Result:
    value: CycloInt
    method: str
    terms: int

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def integer(self) -> int | None:
        return self.value.as_integer()


def _check_bound(n: int) -> None:
    bound = enum_bound()
    if n > bound:
        raise BoundExceededError("components in an exponential tau4 evaluation", n, bound)


def _char_space(lam) -> tuple[np.ndarray, list[np.ndarray], np.ndarray]:
    n = len(lam)
    A = bitmatrix(lam, ncols=n)
    b = bitvec([lam[i][i] for i in range(n)]) if n else np.zeros(0, np.uint8)
    p, basis = gf2_solve_affine(A, b)
    # x = diag(Lambda) mod 2 always works: x.Lx = sum Lambda_ii x_i mod 2
    assert p is not None, "characteristic equation unexpectedly inconsistent"
    return p, basis, A


def characteristic_sublinks(lam: Sequence[Sequence[int]]) -> list[Sublink]:
    """All x with Lambda x = diag(Lambda) (mod 2), as sublinks."""
    lam = as_symmetric(lam)
    n = len(lam)
    p, basis, _ = _char_space(lam)
    _check_bound(len(basis))
    return sorted((Sublink(to_mask(x), n) for x in span(p, basis)), key=lambda s: s.mask)


def _check_char_totally_proper(lam) -> None:
    """Raise unless no characteristic sublink contains an odd-linked pair."""
    n = len(lam)
    p, basis, A = _char_space(lam)
    diag = [lam[i][i] for i in range(n)]
    for i, j in combinations(range(n), 2):
        if lam[i][j] % 2 == 0:
            continue
        rows = np.zeros((2, n), dtype=np.uint8)
        rows[0, i] = rows[1, j] = 1
        sol, _ = gf2_solve_affine(np.vstack([A, rows]), bitvec(diag + [1, 1]))
        if sol is not None:
            raise NotTotallyProperError(i, j, lam[i][j])


def _sum_over_characteristic(lam, lin: int, pairs: Sequence[int], triples) -> tuple[CycloInt, int]:
    n = len(lam)
    p, basis, _ = _char_space(lam)
    _check_bound(n)
    hist = _kernels.char_sublink_histogram(
        to_mask(p), [to_mask(v) for v in basis], lam if n else np.zeros((0, 0)), lin, pairs, triples
    )
    total = CycloInt.from_exponent_counts([int(h) for h in hist])
    return CycloInt.omega(signature(lam)) * total, 1 << len(basis)


def _cubic_from_c1(n: int, table: dict[int, int]) -> tuple[int, list[int], list[tuple]]:
    lin = 0
    pairs = [0] * n
    triples = []
    for mask, value in table.items():
        if value % 2 == 0:
            continue
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) == 1:
            lin |= 1 << idx[0]
        elif len(idx) == 2:
            pairs[idx[0]] |= 1 << idx[1]
        else:
            triples.append(tuple(idx))
    return lin, pairs, triples


def tau4_exponential(link: PDLink) -> Tau4Result:
    """Sum over characteristic sublinks with Hoste-Murakami Arf invariants."""
    lam = linking_matrix(link)
    n = len(lam)
    _check_bound(n)
    _check_char_totally_proper(lam)
    lin, pairs, triples = _cubic_from_c1(n, c1_table(link))
    value, terms = _sum_over_characteristic(lam, lin, pairs, triples)
    return Tau4Result(value, "exponential", terms)


def tau4_spin_sum(link: PDLink) -> Tau4Result:
    """Sum of w^mu over spin structures, one mu-invariant per sublink (slow reference)."""
    lam = linking_matrix(link)
    _check_bound(len(lam))
    _check_char_totally_proper(lam)
    subs = characteristic_sublinks(lam)
    total = CycloInt()
    for C in subs:
        total = total + CycloInt.omega(mu_invariant(link, C))
    return Tau4Result(total, "spin_sum", len(subs))


def tau4_product(framings: Sequence[int], sigma_correction: int) -> Tau4Result:
    """w^sigma * w^(-s) * prod_i (1 + w^(-2i))^(b_i) for diagonal framings.

    s sums the odd framings and b_i counts even framings congruent to 2i
    mod 16. Valid when every characteristic sublink has Arf invariant 0.
    """
    s = sum(f for f in framings if f % 2)
    b = [0] * 8
    for f in framings:
        if f % 2 == 0:
            b[(f % 16) // 2] += 1
    value = CycloInt.omega(sigma_correction - s)
    for i, count in enumerate(b):
        if count:
            value = value * cyclo_pow(ONE + CycloInt.omega(-2 * i), count)
    return Tau4Result(value, "product", len(framings) + 1)


def tau4_diagonalize_and_product(lam: Sequence[Sequence[int]]) -> Tau4Result:
    """Stably diagonalize Lambda, then apply the product formula.

    Adjoining a +-1 block shifts sigma by +-1 and forces that component
    into every characteristic sublink, adding +-1 to C.C, so the sum is
    unchanged. Hence tau_4(Lambda) = tau_4(D) with sigma(D) = sigma(Lambda)
    plus the sum of the stabilizing signs.
    """
    lam = as_symmetric(lam)
    cert = stable_diagonalize(lam)
    return tau4_product(cert.diagonal, signature(lam) + sum(cert.stab))


def tau4_of_model(model: LinkInvariantModel) -> Tau4Result:
    """The characteristic-sublink sum with Arf invariants from model data."""
    lam = [list(r) for r in model.lk_matrix]
    check_totally_proper(lam)
    n = model.n
    lin = sum(1 << i for i, a in enumerate(model.arf) if a)
    pairs = [0] * n
    for (i, j), v in model.quarter_sl.items():
        if v:
            pairs[i] |= 1 << j
    triples = [k for k, v in model.triple.items() if v]
    value, terms = _sum_over_characteristic(lam, lin, pairs, triples)
    return Tau4Result(value, "model", terms)
