from __future__ import annotations

import itertools
import random

import pytest

from _helpers import jones_at_i
from tau4.errors import BoundExceededError
from tau4.pd import delete_components, is_planar, linking_matrix
from tau4.sat import CubicForm, tau4_of_cubic
from tau4.surgery import tau4_exponential
from tau4.tangles import cubic_to_pdlink

FORMS = {
    "x1": CubicForm(1, linear=frozenset({1})),
    "x1x2": CubicForm(2, quadratic=frozenset({(1, 2)})),
    "x1x2x3": CubicForm(3, cubic=frozenset({(1, 2, 3)})),
    "x1 + x2": CubicForm(2, linear=frozenset({1, 2})),
    "x1x2 + x3": CubicForm(3, linear=frozenset({3}), quadratic=frozenset({(1, 2)})),
    "zero": CubicForm(2),
}


@pytest.mark.parametrize("name", FORMS)
def test_diagram_matches_formula(name):
    c = FORMS[name]
    link = cubic_to_pdlink(c)
    assert link.n_components == c.n
    assert linking_matrix(link) == [[0] * c.n for _ in range(c.n)]
    assert is_planar(link)
    assert tau4_exponential(link).value == tau4_of_cubic(c).value


def test_single_insertions_give_warmup_values():
    values = [tau4_exponential(cubic_to_pdlink(FORMS[k])).value for k in ("x1", "x1x2", "x1x2x3")]
    assert values == [0, 2, 6]


def test_sublink_arf_against_jones():
    # independent check of the validation contract on one form
    c = FORMS["x1x2 + x3"]
    link = cubic_to_pdlink(c, validate=False)
    for mask in range(1, 1 << c.n):
        x = [(mask >> i) & 1 for i in range(c.n)]
        sub = delete_components(link, mask)
        v = jones_at_i(sub)
        n = sub.n_components
        arf = 0 if v.real * (-1) ** (n - 1) > 0 else 1
        assert arf == c.evaluate(x)


@pytest.mark.parametrize("seed", range(4))
def test_random_forms(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    triples = list(itertools.combinations(range(1, n + 1), 3))
    c = CubicForm(
        n,
        frozenset(i for i in range(1, n + 1) if rng.random() < 0.5),
        frozenset(p for p in pairs if rng.random() < 0.5),
        frozenset(t for t in triples if rng.random() < 0.5),
    )
    assert tau4_exponential(cubic_to_pdlink(c)).value == tau4_of_cubic(c).value


def test_component_bound():
    with pytest.raises(BoundExceededError):
        cubic_to_pdlink(CubicForm(5))
