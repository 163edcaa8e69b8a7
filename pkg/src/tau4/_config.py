"""Runtime switches read from the environment.

``TAU4_DISABLE_NUMBA=1`` forces the pure-numpy kernels even when numba is
importable. ``TAU4_ENUM_BOUND`` overrides the default enumeration bound of
the 2^m engines and ``TAU4_CONWAY_BOUND`` the crossing bound of the skein
recursion.
"""

from __future__ import annotations

import os

_FALSE = {"", "0", "false", "no", "off"}


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in _FALSE


def _int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def numba_disabled() -> bool:
    return _flag("TAU4_DISABLE_NUMBA")


def enum_bound() -> int:
    """Largest dimension accepted by 2^m enumerations (default 24)."""
    return _int("TAU4_ENUM_BOUND", 24)


def count_bound() -> int:
    """Largest variable count accepted by zero/model counting (default 26)."""
    return _int("TAU4_COUNT_BOUND", 26)


def conway_bound() -> int:
    return _int("TAU4_CONWAY_BOUND", 40)
