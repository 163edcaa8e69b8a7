from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from tau4.pd import from_braid

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TREFOIL_WORD = ([1, 1, 1], 2)
WHITEHEAD_WORD = ([1, -2, 1, -2, 1], 3)
BORROMEAN_WORD = ([1, -2] * 3, 3)


@pytest.fixture
def trefoil():
    return from_braid(*TREFOIL_WORD)


@pytest.fixture
def whitehead():
    return from_braid(*WHITEHEAD_WORD)


@pytest.fixture
def borromean():
    return from_braid(*BORROMEAN_WORD)


@pytest.fixture
def hopf():
    return from_braid([1, 1], 2)


@pytest.fixture
def warmup_links(trefoil, whitehead, borromean):
    return {1: trefoil, 2: whitehead, 3: borromean}


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "numpy":
        monkeypatch.setenv("TAU4_DISABLE_NUMBA", "1")
    else:
        monkeypatch.delenv("TAU4_DISABLE_NUMBA", raising=False)
    return request.param


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
