from __future__ import annotations

import random

import pytest
import sympy

from tau4.conway import ConwayPoly, c1, c1_table, conway
from tau4.errors import BoundExceededError
from tau4.pd import (
    PDLink,
    delete_components,
    from_braid,
    linking_matrix,
    mirror,
    reverse_component,
    split_union,
)

from _helpers import random_moves

t, s = sympy.symbols("t s")

# -- Alexander polynomial via Fox calculus --------------------------------------


def alexander(link: PDLink):
    """One-variable Alexander polynomial from the Wirtinger presentation.

    Generators are over-strands (arcs glued through over-passes). At a
    crossing with over-strand b the under-strand goes from a to c with
    c = b^e a b^-e, e the crossing sign; the abelianized Fox derivatives
    give the row (t, 1 - t, -1) or (1, t - 1, -t) in the columns (a, b, c).
    """
    root = {}

    def find(x):
        while root.get(x, x) != x:
            x = root[x]
        return x

    for ui, uo, oi, oo, _ in link.crossings:
        ra, rb = find(oi), find(oo)
        if ra != rb:
            root[ra] = rb
    gens = sorted({find(a) for x in link.crossings for a in x[:4]})
    col = {g: k for k, g in enumerate(gens)}
    rows = []
    for ui, uo, oi, _, e in link.crossings:
        row = [0] * len(gens)
        a, b, c = col[find(ui)], col[find(oi)], col[find(uo)]
        entries = [(a, t), (b, 1 - t), (c, -1)] if e > 0 else [(a, 1), (b, t - 1), (c, -t)]
        for k, v in entries:
            row[k] += v
        rows.append(row)
    assert len(rows) == len(gens)
    M = sympy.Matrix(rows)
    return sympy.expand(M[1:, 1:].det(method="berkowitz"))


def _normalize(expr, var):
    """Strip a unit +-var^k: lowest term divided out, sign made positive."""
    p = sympy.Poly(sympy.expand(expr), var)
    if p.is_zero:
        return p
    low = min(m[0] for m in p.monoms())
    q = sympy.Poly(sympy.expand(expr / var**low), var)
    return q if q.LC() > 0 else -q


def agrees_with_alexander(link: PDLink) -> bool:
    nabla = conway(link)
    # t = s^2 and z = s - 1/s
    lhs = sum(c * (s - 1 / s) ** k for k, c in enumerate(nabla.coeffs)) * s ** (2 * len(nabla.coeffs) + 2)
    rhs = alexander(link).subs(t, s**2)
    return _normalize(lhs, s) == _normalize(rhs, s)


KNOWN = {
    "hopf": (([1, 1], 2), [0, 1]),
    "negative hopf": (([-1, -1], 2), [0, -1]),
    "trefoil": (([1, 1, 1], 2), [1, 0, 1]),
    "figure eight": (([1, -2, 1, -2], 3), [1, 0, -1]),
    "T(2,4)": (([1, 1, 1, 1], 2), [0, 2, 0, 1]),
    "whitehead": (([1, -2, 1, -2, 1], 3), [0, 0, 0, -1]),
    "borromean": (([1, -2] * 3, 3), [0, 0, 0, 0, 1]),
    "T(2,5)": (([1] * 5, 2), [1, 0, 3, 0, 1]),
    "unlink": (([], 2), []),
    "unknot": (([], 1), [1]),
}


@pytest.mark.parametrize("name", KNOWN)
def test_known_values(name):
    (word, strands), coeffs = KNOWN[name]
    assert conway(from_braid(word, strands)) == coeffs


def test_reversed_component():
    link = from_braid([1, 1, 1, 1], 2)
    assert conway(reverse_component(link, 0)) == [0, -2]
    assert conway(reverse_component(reverse_component(link, 0), 1)) == conway(link)


@pytest.mark.parametrize("seed", range(12))
def test_random_braids_match_alexander(seed):
    rng = random.Random(seed)
    while True:
        strands = rng.randint(2, 4)
        gens = [g for k in range(1, strands) for g in (k, -k)]
        link = from_braid([rng.choice(gens) for _ in range(rng.randint(3, 10))], strands)
        # the Wirtinger count needs every component to pass under something
        unders = {link.component_of_arc[x[0]] for x in link.crossings}
        if not link.free_arcs() and len(unders) == link.n_components:
            break
    assert agrees_with_alexander(link)


@pytest.mark.parametrize("seed", range(8))
def test_reidemeister_invariance(seed):
    rng = random.Random(seed)
    link = from_braid([1, -2, 1, -2, 1], 3)
    moved = random_moves(link, rng, 5)
    assert conway(moved) == conway(link)


def test_split_links_vanish(trefoil, hopf):
    assert conway(split_union(trefoil, hopf)) == 0
    assert conway(split_union(trefoil, from_braid([], 1))) == 0


@pytest.mark.parametrize("seed", range(10))
def test_degree_parity_and_mirror(seed):
    rng = random.Random(50 + seed)
    word = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(2, 9))]
    link = from_braid(word, 3)
    nabla = conway(link)
    n = link.n_components
    assert all(k % 2 == (n - 1) % 2 for k, c in enumerate(nabla.coeffs) if c)
    assert conway(mirror(link)) == [(-1) ** k * c for k, c in enumerate(nabla.coeffs)]


@pytest.mark.parametrize("seed", range(10))
def test_linking_number_is_leading_coefficient(seed):
    rng = random.Random(70 + seed)
    word = [rng.choice([1, -1]) * 2 for _ in range(rng.randint(1, 6))]
    word = [1 if w > 0 else -1 for w in word for _ in range(2)]
    link = from_braid(word, 2)
    if link.n_components == 2:
        assert conway(link).coefficient(1) == linking_matrix(link)[0][1]


def test_c1_values(warmup_links):
    assert c1(warmup_links[1]) == 1
    assert c1(warmup_links[2]) == -1
    assert c1(warmup_links[3]) == 1


def test_c1_table_locality_split_union(trefoil, whitehead, hopf):
    link = split_union(split_union(trefoil, whitehead), hopf)
    assert link.n_components == 5
    parts = {0: 0b00001, 1: 0b00110, 2: 0b11000}
    table = c1_table(link, max_size=3)
    for mask, value in table.items():
        inside = [p for p, pm in parts.items() if mask & pm]
        if len(inside) > 1:
            assert value == 0
    assert table[0b00001] == c1(trefoil)
    assert table[0b00110] == c1(whitehead)
    assert table[0b11000] == c1(hopf)


def test_c1_table_pure_braid():
    # Borromean rings on strands 0-2, then a Hopf clasp between strands 2 and 3
    link = from_braid([1, -2] * 3 + [3, 3], 4)
    assert link.n_components == 4
    table = c1_table(link, max_size=3)
    assert len(table) == 14
    assert table[0b0111] == c1(from_braid([1, -2] * 3, 3)) == 1
    assert table[0b1100] == c1(from_braid([1, 1], 2)) == 0
    for mask in (0b0011, 0b0101, 0b0110, 0b1001, 0b1010):
        assert table[mask] == 0
    for mask in (0b1011, 0b1101, 0b1110):
        assert table[mask] == c1(delete_components(link, mask))


def test_empty_link():
    assert conway(PDLink([], {}, [])) == 1


def test_bound(monkeypatch, trefoil):
    monkeypatch.setenv("TAU4_CONWAY_BOUND", "2")
    with pytest.raises(BoundExceededError):
        conway(trefoil)


def test_poly_str():
    assert str(ConwayPoly([1, 0, -1])) == "1 - z^2"
    assert str(ConwayPoly([0, 2, 0, 1])) == "2z + z^3"
    assert str(ConwayPoly()) == "0"


def test_c1_of_four_component_links_needs_unlinked_pairs():
    # vanishing of c1 beyond three components needs zero linking numbers;
    # with linked pairs only the parity survives, which is all the Arf sum uses
    assert c1(from_braid([1, -2] * 3 + [2, -3] * 3, 4)) == 0
    assert c1(from_braid([1, -2] * 3 + [3, 3], 4)) == 1
    assert c1(from_braid([1, -2] * 3 + [3, 3, 3, 3], 4)) == 2


@pytest.mark.parametrize("seed", range(6))
def test_c1_parity_vanishes_on_totally_proper_four_component_links(seed):
    rng = random.Random(300 + seed)
    gens = [g for k in range(1, 4) for g in (k, -k)]
    while True:
        link = from_braid([rng.choice(gens) for _ in range(rng.randint(6, 14))], 4)
        lk = linking_matrix(link)
        if len(lk) == 4 and all(lk[i][j] % 2 == 0 for i in range(4) for j in range(4)):
            break
    assert c1(link) % 2 == 0
