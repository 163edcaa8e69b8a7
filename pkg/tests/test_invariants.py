from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _helpers import jones_at_i, random_moves
from tau4.enhanced import INFINITY, P, T
from tau4.errors import (
    DimensionError,
    InconsistentDataError,
    NotCharacteristicError,
    NotTotallyProperError,
    ValidationError,
)
from tau4.invariants import (
    Band,
    DoubleBandData,
    ImmersionData,
    LinkInvariantModel,
    arf_hoste_murakami,
    arf_theorem11,
    brown_of_proper_link,
    brown_totally_proper_model,
    half_twist,
    lk_total,
    model_from_link,
    mu_invariant,
    quarter_twist,
    theorem4_combine,
)
from tau4.pd import from_braid, linking_matrix, mirror, split_union


def arf_from_jones(link) -> int:
    """Arf invariant from V_L(i) = (-sqrt2)^(n-1) (-1)^Arf."""
    v = jones_at_i(link)
    n = link.n_components
    scale = (-math.sqrt(2)) ** (n - 1)
    ratio = v.real / scale
    assert abs(v.imag) < 1e-9 and abs(abs(ratio) - 1) < 1e-9
    return 0 if ratio > 0 else 1


def _random_proper_braid(rng, strands, length):
    gens = [g for k in range(1, strands) for g in (k, -k)]
    while True:
        link = from_braid([rng.choice(gens) for _ in range(length)], strands)
        lk = linking_matrix(link)
        if all(lk[i][j] % 2 == 0 for i in range(len(lk)) for j in range(len(lk))):
            return link


def test_warmup_arf_and_brown(warmup_links):
    for link in warmup_links.values():
        assert arf_hoste_murakami(link) == 1
        assert brown_of_proper_link(link) == 4


@pytest.mark.parametrize("seed", range(15))
def test_arf_matches_jones(seed):
    rng = random.Random(seed)
    link = _random_proper_braid(rng, rng.randint(2, 4), rng.randint(2, 11))
    assert arf_hoste_murakami(link) == arf_from_jones(link)


def test_hopf_not_totally_proper(hopf):
    with pytest.raises(NotTotallyProperError) as exc:
        arf_hoste_murakami(hopf)
    assert exc.value.pair == (0, 1)
    assert jones_at_i(hopf) == pytest.approx(0)


def test_t24_brown_both_orientations():
    from tau4.pd import reverse_component

    link = from_braid([1, 1, 1, 1], 2)
    assert brown_of_proper_link(link) == 6
    assert brown_of_proper_link(reverse_component(link, 0)) == 6


@pytest.mark.parametrize("seed", range(6))
def test_arf_invariant_under_moves(seed):
    rng = random.Random(seed)
    link = from_braid([1, -2, 1, -2, 1], 3)
    assert arf_hoste_murakami(random_moves(link, rng, 4)) == 1


def test_arf_additive_under_split_union(trefoil, whitehead, borromean):
    assert arf_hoste_murakami(split_union(trefoil, whitehead)) == 0
    assert arf_hoste_murakami(split_union(split_union(trefoil, whitehead), borromean)) == 1
    assert arf_hoste_murakami(mirror(borromean)) == 1


@pytest.mark.parametrize("seed", range(10))
def test_model_from_link_reproduces_arf(seed):
    rng = random.Random(100 + seed)
    link = _random_proper_braid(rng, 4, rng.randint(4, 10))
    model = model_from_link(link)
    assert arf_theorem11(model) == arf_hoste_murakami(link)
    for mask in range(1, 1 << link.n_components):
        from tau4.pd import delete_components

        assert arf_theorem11(model.restrict(mask)) == arf_hoste_murakami(delete_components(link, mask))


def test_model_brown_examples():
    borromean = LinkInvariantModel(3, [0, 0, 0], triple={(0, 1, 2): 1}, sato_levine={(0, 1): 0, (0, 2): 0, (1, 2): 0})
    assert brown_totally_proper_model(borromean) == 4
    whitehead = LinkInvariantModel(2, [0, 0], sato_levine={(0, 1): -4})
    assert whitehead.quarter_sl[(0, 1)] == 1
    assert brown_totally_proper_model(whitehead) == 4
    assert arf_theorem11(whitehead) == 1


@st.composite
def models(draw):
    n = draw(st.integers(1, 5))
    lk = [[0] * n for _ in range(n)]
    sl = {}
    for i, j in itertools.combinations(range(n), 2):
        lk[i][j] = lk[j][i] = 2 * draw(st.integers(-3, 3))
        sl[(i, j)] = lk[i][j] + 4 * draw(st.integers(-3, 3))
    for i in range(n):
        lk[i][i] = draw(st.integers(-3, 3))
    tri = {t: draw(st.integers(0, 1)) for t in itertools.combinations(range(n), 3)}
    arf = [draw(st.integers(0, 1)) for _ in range(n)]
    return LinkInvariantModel(n, arf, triple=tri, lk_matrix=lk, sato_levine=sl)


@given(models())
def test_model_brown_is_4arf_plus_lk(model):
    expected = (4 * arf_theorem11(model) + lk_total(model.lk_matrix)) % 8
    assert brown_totally_proper_model(model) == expected


@given(models(), st.integers(0, 31))
def test_restrict_consistent(model, mask):
    mask &= (1 << model.n) - 1
    sub = model.restrict(mask)
    assert sub.n == bin(mask).count("1")
    assert brown_totally_proper_model(sub) == (4 * arf_theorem11(sub) + lk_total(sub.lk_matrix)) % 8


def test_model_validation():
    with pytest.raises(ValidationError) as exc:
        LinkInvariantModel(2, [0, 0], sato_levine={(0, 1): 3})
    assert exc.value.code == "E_SL_PARITY"
    with pytest.raises(ValidationError) as exc:
        LinkInvariantModel(2, [0, 0], lk_matrix=[[0, 2], [2, 0]], sato_levine={(0, 1): 0})
    assert exc.value.code == "E_SL_LK"
    with pytest.raises(ValidationError) as exc:
        LinkInvariantModel(2, [0, 0], quarter_sl={(0, 1): 0}, sato_levine={(0, 1): 4})
    assert exc.value.code == "E_QSL"
    with pytest.raises(ValidationError) as exc:
        LinkInvariantModel(2, [0, 0], triple={(0, 1, 2): 1})
    assert exc.value.code == "E_INDEX"
    with pytest.raises(DimensionError):
        LinkInvariantModel(3, [0, 0])


def test_model_brown_needs_sato_levine():
    with pytest.raises(InconsistentDataError):
        brown_totally_proper_model(LinkInvariantModel(2, [1, 0], quarter_sl={(0, 1): 1}))
    assert brown_totally_proper_model(LinkInvariantModel(1, [1])) == 4


def test_model_rejects_odd_linking():
    with pytest.raises(NotTotallyProperError):
        arf_theorem11(LinkInvariantModel(2, [0, 0], lk_matrix=[[0, 1], [1, 0]]))


def test_pair_keys_accept_strings():
    m = LinkInvariantModel(3, [0, 0, 0], quarter_sl={"1,0": 1}, triple={"2,0,1": 1})
    assert m.quarter_sl == {(0, 1): 1}
    assert m.triple == {(0, 1, 2): 1}


# -- bands and immersions -------------------------------------------------------


def test_bands():
    assert half_twist(Band(3, 1)) == (5, 1)
    assert half_twist(Band(-1, -2)) == (-5, 3)
    assert quarter_twist(3, 1) == 7
    assert DoubleBandData((3, 7, 1)).delta == 3
    with pytest.raises(ValidationError):
        DoubleBandData((), -1)


def test_immersion_combine_example():
    from tau4.enhanced import A, direct_sum

    assert theorem4_combine(ImmersionData(beta_f=1, phi_f=-3)) == (4, 1)
    # checkerboard surface of the Borromean rings: P1 + 2 A0 with framing -3
    surface = direct_sum(direct_sum(P(1), A(0)), A(0))
    assert theorem4_combine(ImmersionData(beta_f=surface, phi_f=-3)) == (4, 1)
    assert theorem4_combine(ImmersionData(beta_f=0, phi_f=0)) == (0, 0)


@pytest.mark.parametrize("k", range(4))
def test_bing_double_surfaces(k):
    from tau4.enhanced import A, direct_sum

    t = T(2, 2) if k % 2 else T(0, 0)
    beta, alpha = theorem4_combine(ImmersionData(beta_f=direct_sum(t, A(0)), phi_f=0))
    assert beta == (4 * k) % 8
    assert alpha == k % 2


@given(
    st.integers(0, 7),
    st.integers(-20, 20),
    st.integers(0, 7),
    st.integers(0, 5),
    st.integers(-10, 10),
)
def test_immersion_combine_brown_arf_relation(beta_f, phi_f, delta, tau, lk):
    data = ImmersionData(beta_f, phi_f, delta, tau, lk)
    core = beta_f - phi_f + 3 * delta + 4 * tau
    if (core - lk) % 4:
        with pytest.raises(InconsistentDataError):
            theorem4_combine(data)
        return
    beta, alpha = theorem4_combine(data)
    assert beta == (4 * alpha + lk) % 8
    assert alpha in (0, 1)


def test_immersion_combine_improper_surface():
    from tau4.enhanced import A

    with pytest.raises(InconsistentDataError):
        theorem4_combine(ImmersionData(beta_f=A(2), phi_f=0))
    assert ImmersionData(beta_f="infinity", phi_f=0).brown_value() == INFINITY
    assert ImmersionData(beta_f=T(2, 2), phi_f=0).brown_value() == 4


# -- mu invariants -------------------------------------------------------------


def test_mu_spectrum_borromean(borromean):
    values = sorted(mu_invariant(borromean, mask) for mask in range(8))
    assert values == [0] * 7 + [8]


def test_mu_requires_characteristic():
    link = from_braid([1, 1, 1, 1], 2, framings=[1, 0])
    with pytest.raises(NotCharacteristicError):
        mu_invariant(link, 0)
    # x = (1, 0) is characteristic; sigma = 0 since det = -4, C.C = 1, Arf(unknot) = 0
    assert mu_invariant(link, 0b01) == 15
