from __future__ import annotations

import random

import pytest

from tau4.errors import DimensionError, ValidationError
from tau4.pd import (
    PDLink,
    delete_components,
    faces,
    from_braid,
    is_planar,
    linking_matrix,
    mirror,
    reidemeister1,
    reidemeister2,
    reverse_component,
    split_union,
    to_external,
    to_internal,
)

from _helpers import random_moves


def test_internal_external_round_trip():
    for x in [(1, 2, 3, 4, 1), (1, 4, 3, 2, -1), (5, 6, 7, 8, -1)]:
        assert to_external(to_internal(*x)) == x


def test_braid_closures_basic(trefoil, hopf, borromean):
    assert (trefoil.n_components, trefoil.n_crossings, trefoil.writhe()) == (1, 3, 3)
    assert hopf.n_components == 2
    assert borromean.n_components == 3
    for link in (trefoil, hopf, borromean):
        assert is_planar(link)
        assert sorted(a for x in link.crossings for a in x[:4]) == sorted(link.arcs * 2)


def test_trivial_braid_is_unlink():
    link = from_braid([], 3)
    assert link.n_components == 3
    assert link.n_crossings == 0
    assert link.free_arcs() == link.arcs


def test_components_follow_strand_order():
    # sigma_1^2 sigma_2^4: strand 0 links strand 1 once, strand 1 links strand 2 twice
    link = from_braid([1, 1, 2, 2, 2, 2], 3)
    assert linking_matrix(link) == [[0, 1, 0], [1, 0, 2], [0, 2, 0]]


def test_linking_matrix_signs(hopf):
    assert linking_matrix(hopf) == [[0, 1], [1, 0]]
    assert linking_matrix(from_braid([-1, -1], 2)) == [[0, -1], [-1, 0]]
    assert linking_matrix(from_braid([1, 1], 2, framings=[3, -2])) == [[3, 1], [1, -2]]


def test_pd_round_trip(borromean):
    again = PDLink(borromean.pd_code(), borromean.component_of_arc, borromean.framings)
    assert again.crossings == borromean.crossings
    assert linking_matrix(again) == linking_matrix(borromean)


def test_arc_pairing_errors():
    with pytest.raises(ValidationError) as exc:
        PDLink([(1, 2, 3, 4, 1)])
    assert exc.value.code == "E_ARC_PAIRING"
    with pytest.raises(ValidationError):
        PDLink([(1, 1, 2, 2, 1), (1, 3, 3, 4, 1)])


def test_component_map_errors(hopf):
    comp = dict(hopf.component_of_arc)
    comp[next(iter(comp))] = 5
    with pytest.raises(ValidationError) as exc:
        PDLink(hopf.pd_code(), comp)
    assert exc.value.code == "E_COMPONENT_MAP"


def test_framing_length(hopf):
    with pytest.raises(DimensionError):
        hopf.with_framings([1])


def test_bad_braid_generator():
    with pytest.raises(DimensionError):
        from_braid([3], 3)


def test_delete_components(borromean):
    for mask in range(8):
        sub = delete_components(borromean, mask)
        assert sub.n_components == bin(mask).count("1")
        assert is_planar(sub)
    assert linking_matrix(delete_components(borromean, 0b101)) == [[0, 0], [0, 0]]
    assert delete_components(borromean, [1, 1, 1]).crossings == borromean.crossings
    with pytest.raises(DimensionError):
        delete_components(borromean, 8)


def test_delete_keeps_linking_submatrix():
    rng = random.Random(3)
    for _ in range(20):
        word = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(4, 14))]
        link = from_braid(word, 4)
        link = link.with_framings([rng.randint(-3, 3) for _ in range(link.n_components)])
        L = linking_matrix(link)
        n = link.n_components
        for mask in range(1, 1 << n):
            keep = [i for i in range(n) if mask >> i & 1]
            sub = linking_matrix(delete_components(link, mask))
            assert sub == [[L[i][j] for j in keep] for i in keep]


def test_split_union(trefoil, hopf):
    u = split_union(trefoil, hopf)
    assert u.n_components == 3
    assert linking_matrix(u) == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert is_planar(u)


def test_mirror_and_reverse(hopf):
    assert linking_matrix(mirror(hopf)) == [[0, -1], [-1, 0]]
    assert linking_matrix(reverse_component(hopf, 0)) == [[0, -1], [-1, 0]]
    twice = reverse_component(reverse_component(hopf, 1), 1)
    assert twice.crossings == hopf.crossings


def test_faces_count(trefoil):
    # Euler: V - E + F = 2 with V = C, E = 2C
    assert len(faces(trefoil)) == trefoil.n_crossings + 2


@pytest.mark.parametrize("seed", range(6))
def test_random_moves_keep_planarity_and_linking(seed):
    rng = random.Random(seed)
    link = from_braid([1, 1, -2, -2, 1, -2, -2, -1], 3, framings=[1, 0, -1])
    L = linking_matrix(link)
    moved = random_moves(link, rng, 6)
    assert is_planar(moved)
    assert moved.n_components == link.n_components
    assert linking_matrix(moved) == L
    assert moved.n_crossings >= link.n_crossings


def test_r1_on_free_circle():
    link = from_braid([], 1)
    kinked = reidemeister1(link, link.arcs[0], "B", -1)
    assert kinked.n_crossings == 1
    assert kinked.writhe() == -1
    assert is_planar(kinked)


def test_r1_kinds_and_signs(trefoil):
    arc = trefoil.arcs[0]
    for kind in "AB":
        for sign in (1, -1):
            k = reidemeister1(trefoil, arc, kind, sign)
            assert k.writhe() == trefoil.writhe() + sign
            assert is_planar(k)
    with pytest.raises(ValidationError):
        reidemeister1(trefoil, arc, "C", 1)


def test_r2_adds_two_opposite_crossings(trefoil):
    code = trefoil.pd_code()
    face = faces(trefoil)[0]
    arcs = sorted({code[k][s] for k, s in face})
    moved = reidemeister2(trefoil, arcs[0], arcs[1])
    assert moved.n_crossings == trefoil.n_crossings + 2
    assert moved.writhe() == trefoil.writhe()
    with pytest.raises(ValidationError):
        reidemeister2(trefoil, arcs[0], arcs[0])
