from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tau4.cyclo import CycloInt, I
from tau4.enhanced import (
    INFINITY,
    A,
    BrownValue,
    EnhancedSpace,
    NormalForm,
    P,
    T,
    brown,
    class_tuple,
    direct_sum,
    evaluate,
    from_normal_form,
    gauss_law_value,
    gauss_sum,
    is_proper,
    normal_form,
    value_counts,
)
from tau4.errors import BoundExceededError, DimensionError, ValidationError

# -- independent oracles ----------------------------------------------------


def _all_values(form, values):
    """e(x) for every x in GF(2)^m straight from the quadratic identity."""
    m = len(values)
    out = []
    for x in range(1 << m):
        idx = [i for i in range(m) if (x >> i) & 1]
        e = sum(values[i] for i in idx) + 2 * sum(form[i][j] for i, j in itertools.combinations(idx, 2))
        out.append(e % 4)
    return out


def _isomorphic(s: EnhancedSpace, t: EnhancedSpace) -> bool:
    """Backtracking search for an isometry s -> t preserving the values."""
    if s.dim != t.dim:
        return False
    m = s.dim
    et = _all_values(t.form, t.values)

    def dot(x, y):
        return sum(t.form[i][j] for i in range(m) if (x >> i) & 1 for j in range(m) if (y >> j) & 1) % 2

    def extend(images, span):
        k = len(images)
        if k == m:
            return True
        for y in range(1, 1 << m):
            if y in span or et[y] != s.values[k]:
                continue
            if any(dot(images[i], y) != s.form[i][k] for i in range(k)):
                continue
            if extend(images + [y], span | {v ^ y for v in span}):
                return True
        return False

    return extend([], {0})


def _transvect(form, values, i, j):
    """Change of basis b_i <- b_i + b_j."""
    m = len(values)
    F = [list(r) for r in form]
    for k in range(m):
        if k != i:
            F[i][k] = F[k][i] = (form[i][k] + form[j][k]) % 2
    F[i][i] = (form[i][i] + form[j][j]) % 2
    v = list(values)
    v[i] = (values[i] + values[j] + 2 * form[i][j]) % 4
    return tuple(map(tuple, F)), tuple(v)


def _all_spaces(m):
    cells = list(itertools.combinations_with_replacement(range(m), 2))
    for bits in itertools.product((0, 1), repeat=len(cells)):
        F = [[0] * m for _ in range(m)]
        for (i, j), b in zip(cells, bits):
            F[i][j] = F[j][i] = b
        for hi in itertools.product((0, 2), repeat=m):
            yield tuple(map(tuple, F)), tuple(F[i][i] + hi[i] for i in range(m))


@st.composite
def spaces(draw, max_dim=6):
    m = draw(st.integers(0, max_dim))
    F = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            F[i][j] = F[j][i] = draw(st.integers(0, 1))
    values = [F[i][i] + 2 * draw(st.integers(0, 1)) for i in range(m)]
    return EnhancedSpace(F, values)


# -- generators -------------------------------------------------------------

GENERATORS = {
    "P1": (P(1), CycloInt.from_int(1) + I, 1),
    "P-1": (P(-1), CycloInt.from_int(1) - I, 7),
    "T0": (T(0, 0), CycloInt.from_int(2), 0),
    "T4": (T(2, 2), CycloInt.from_int(-2), 4),
    "A0": (A(0), CycloInt.from_int(2), 0),
    "Ainf": (A(2), CycloInt(), None),
}


@pytest.mark.parametrize("name", GENERATORS)
def test_generator_gauss_sums_and_brown(name):
    space, gs, beta = GENERATORS[name]
    assert gauss_sum(space) == gs
    assert brown(space) == (INFINITY if beta is None else BrownValue(beta))
    assert gauss_sum(space) == gauss_law_value(space)


def test_t_variants():
    # T(0, 2) has values 0, 2, 2 on its nonzero vectors, like T0
    assert _isomorphic(T(0, 2), T(0, 0))
    assert not _isomorphic(T(0, 0), T(2, 2))


# -- Gauss sum law and counts ---------------------------------------------------


@given(spaces())
def test_value_counts_brute_force(space):
    vals = _all_values(space.form, space.values)
    assert list(value_counts(space)) == [vals.count(k) for k in range(4)]


@given(spaces())
def test_gauss_law(space):
    vals = _all_values(space.form, space.values)
    direct = sum((I ** v for v in vals), CycloInt())
    assert gauss_sum(space) == direct == gauss_law_value(space)


@given(spaces())
def test_evaluate_matches_brute_force(space):
    vals = _all_values(space.form, space.values)
    for x in range(1 << space.dim):
        assert evaluate(space, [(x >> i) & 1 for i in range(space.dim)]) == vals[x]


@given(spaces(), spaces())
def test_brown_additive(a, b):
    assert brown(direct_sum(a, b)) == brown(a) + brown(b)


@given(spaces())
def test_proper_iff_finite_brown(space):
    assert is_proper(space) == (not brown(space).is_infinite)


# -- classification -----------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_orbits_match_class_tuples(m):
    """GL(m, 2) orbits, generated by transvections, are the class_tuple fibres."""
    spaces_m = list(_all_spaces(m))
    index = {s: k for k, s in enumerate(spaces_m)}
    parent = list(range(len(spaces_m)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, (F, v) in enumerate(spaces_m):
        for i, j in itertools.permutations(range(m), 2):
            t = index[_transvect(F, v, i, j)]
            ra, rb = find(k), find(t)
            if ra != rb:
                parent[ra] = rb
    orbit_of = [find(k) for k in range(len(spaces_m))]
    tuple_of = [class_tuple(EnhancedSpace(F, v)) for F, v in spaces_m]
    pairs = set(zip(orbit_of, tuple_of))
    assert len(pairs) == len(set(orbit_of)) == len(set(tuple_of))


RELATIONS = [
    ([P(1), T(0, 0)], [P(1), P(1), P(-1)]),
    ([P(-1), T(0, 0)], [P(-1), P(1), P(-1)]),
    ([P(1), T(2, 2)], [P(-1)] * 3),
    ([P(-1), T(2, 2)], [P(1)] * 3),
    ([P(1)] * 4, [P(-1)] * 4),
    ([T(0, 0)] * 2, [T(2, 2)] * 2),
    ([P(1), A(2)], [P(-1), A(2)]),
    ([T(0, 0), A(2)], [T(2, 2), A(2)]),
    ([A(0), A(2)], [A(2), A(2)]),
]


def _sum(parts):
    out = EnhancedSpace([], [])
    for p in parts:
        out = direct_sum(out, p)
    return out


@pytest.mark.parametrize("lhs,rhs", RELATIONS)
def test_relations(lhs, rhs):
    a, b = _sum(lhs), _sum(rhs)
    assert _isomorphic(a, b)
    assert class_tuple(a) == class_tuple(b)
    assert normal_form(a) == normal_form(b)


def test_non_relations():
    assert not _isomorphic(P(1), P(-1))
    assert not _isomorphic(_sum([P(1), A(0)]), _sum([P(1), A(2)]))
    assert not _isomorphic(T(0, 0), _sum([P(1), P(-1)]))


@given(spaces())
def test_normal_form_round_trip(space):
    nf = normal_form(space)
    back = from_normal_form(nf)
    assert back.dim == space.dim
    assert class_tuple(back) == class_tuple(space)
    assert normal_form(back) == nf
    if space.dim <= 4:
        assert _isomorphic(back, space)


def test_normal_form_uses_t4_only_once():
    assert normal_form(_sum([T(2, 2)] * 3)) == NormalForm(t0=2, t4=1)
    assert normal_form(_sum([T(2, 2)] * 2)) == NormalForm(t0=2)


def test_random_pairs_agree_with_oracle():
    rng = random.Random(5)
    agree = 0
    for _ in range(150):
        m = rng.randint(1, 4)

        def rnd():
            F = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    F[i][j] = F[j][i] = rng.randint(0, 1)
            return EnhancedSpace(F, [F[i][i] + 2 * rng.randint(0, 1) for i in range(m)])

        a, b = rnd(), rnd()
        same = class_tuple(a) == class_tuple(b)
        assert _isomorphic(a, b) == same
        agree += same
    assert agree > 10


# -- validation -------------------------------------------------------------------


def test_parity_violation():
    with pytest.raises(ValidationError) as exc:
        EnhancedSpace([[1, 0], [0, 0]], [1, 1])
    assert exc.value.code == "E_PARITY"
    assert exc.value.field == "values[1]"


def test_symmetry_violation():
    with pytest.raises(ValidationError) as exc:
        EnhancedSpace([[0, 1], [0, 0]], [0, 0])
    assert exc.value.code == "E_SYMMETRY"


def test_shape_mismatch():
    with pytest.raises(DimensionError):
        EnhancedSpace([[0, 1], [1, 0]], [0])


def test_bound(monkeypatch):
    monkeypatch.setenv("TAU4_ENUM_BOUND", "3")
    with pytest.raises(BoundExceededError):
        value_counts(_sum([P(1)] * 4))


def test_brown_value_arithmetic():
    assert BrownValue(7) + BrownValue(3) == 2
    assert BrownValue(3) + INFINITY == "infinity"
    assert str(INFINITY) == "infinity"
    with pytest.raises(ValueError):
        int(INFINITY)
