"""Hot 2^m enumeration loops, compiled with numba when available.

Every kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
fallback. ``TAU4_DISABLE_NUMBA=1`` (read at call time) selects the numpy
versions; so does a missing numba install. Both return identical integer
results, which the test suite checks.

Bit conventions: a vector over GF(2) of length n <= 62 is an int64 mask with
coordinate i in bit i.
"""

from __future__ import annotations

import numpy as np

from ._config import numba_disabled

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap if not args or not callable(args[0]) else args[0]


_CHUNK = 1 << 16


def backend() -> str:
    return "numpy" if numba_disabled() or not HAVE_NUMBA else "numba"


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(a.astype(np.uint64)) & 1).astype(np.int64)


# ---------------------------------------------------------------------------
# numba loops
# ---------------------------------------------------------------------------


@njit(cache=True)
def _parity(v):
    v ^= v >> 32
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return v & 1


@njit(cache=True)
def _lowest_bit(g):
    i = 0
    while not (g >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def _enh_counts_nb(rows, values):
    m = rows.shape[0]
    counts = np.zeros(4, dtype=np.int64)
    x = np.int64(0)
    e = 0
    counts[0] += 1
    for g in range(1, np.int64(1) << m):
        i = _lowest_bit(g)
        # e(x + b_i) = e(x) + e(b_i) + 2 (x . b_i)
        e = (e + values[i] + 2 * _parity(x & rows[i])) & 3
        x ^= np.int64(1) << i
        counts[e] += 1
    return counts


@njit(cache=True)
def _cubic_value(x, lin, pairs, triples):
    v = _parity(x & lin)
    n = pairs.shape[0]
    for i in range(n):
        if (x >> i) & 1:
            v ^= _parity(x & pairs[i])
    for t in range(triples.shape[0]):
        v ^= (x >> triples[t, 0]) & (x >> triples[t, 1]) & (x >> triples[t, 2]) & 1
    return v


@njit(cache=True)
def _cubic_zeros_nb(n, lin, pairs, triples):
    # pairs[i]: mask of j > i with c_ij = 1; derivative in direction i is
    # c_i + sum_j c_ij x_j + sum_{jk} c_ijk x_j x_k, evaluated before the flip
    sym = np.zeros(n, dtype=np.int64)
    for i in range(n):
        sym[i] |= pairs[i]
        for j in range(n):
            if (pairs[i] >> j) & 1:
                sym[j] |= np.int64(1) << i
    x = np.int64(0)
    c = 0
    zeros = np.int64(1)
    for g in range(1, np.int64(1) << n):
        i = _lowest_bit(g)
        d = ((lin >> i) & 1) ^ _parity(x & sym[i])
        for t in range(triples.shape[0]):
            a, b, cc = triples[t, 0], triples[t, 1], triples[t, 2]
            if a == i:
                d ^= (x >> b) & (x >> cc) & 1
            elif b == i:
                d ^= (x >> a) & (x >> cc) & 1
            elif cc == i:
                d ^= (x >> a) & (x >> b) & 1
        c ^= d
        x ^= np.int64(1) << i
        if c == 0:
            zeros += 1
    return zeros


@njit(cache=True)
def _cnf_count_nb(n, pos, neg):
    total = np.int64(0)
    full = (np.int64(1) << n) - 1
    for a in range(np.int64(1) << n):
        ok = True
        na = full ^ a
        for c in range(pos.shape[0]):
            if (a & pos[c]) == 0 and (na & neg[c]) == 0:
                ok = False
                break
        if ok:
            total += 1
    return total


@njit(cache=True)
def _char_hist_nb(p, basis, lam, lin, pairs, triples):
    n = lam.shape[0]
    hist = np.zeros(16, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    x = np.int64(0)
    cc = 0

    # walk from 0 to the particular solution bit by bit
    for i in range(n):
        if (p >> i) & 1:
            cc = (cc + 2 * y[i] + lam[i, i]) & 15
            for j in range(n):
                y[j] = (y[j] + lam[j, i]) & 15
            x |= np.int64(1) << i
    k = basis.shape[0]
    for g in range(np.int64(1) << k):
        if g:
            b = basis[_lowest_bit(g)]
            for i in range(n):
                if (b >> i) & 1:
                    if (x >> i) & 1:
                        for j in range(n):
                            y[j] = (y[j] - lam[j, i]) & 15
                        cc = (cc - 2 * y[i] - lam[i, i]) & 15
                    else:
                        cc = (cc + 2 * y[i] + lam[i, i]) & 15
                        for j in range(n):
                            y[j] = (y[j] + lam[j, i]) & 15
                    x ^= np.int64(1) << i
        a = _cubic_value(x, lin, pairs, triples)
        hist[(16 - cc + 8 * a) & 15] += 1
    return hist


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------


def _enh_counts_np(rows: np.ndarray, values: np.ndarray) -> np.ndarray:
    e = np.zeros(1, dtype=np.int8)
    for i in range(len(rows)):
        xs = np.arange(len(e), dtype=np.int64)
        add = (int(values[i]) + 2 * _popcount_parity(xs & rows[i])) & 3
        e = np.concatenate([e, ((e + add) & 3).astype(np.int8)])
    return np.bincount(e, minlength=4).astype(np.int64)


def _cubic_values_np(xs: np.ndarray, lin: int, pairs: np.ndarray, triples: np.ndarray) -> np.ndarray:
    v = _popcount_parity(xs & lin)
    for i, pm in enumerate(pairs):
        if pm:
            v ^= ((xs >> i) & 1) & _popcount_parity(xs & int(pm))
    for a, b, c in triples:
        v ^= (xs >> a) & (xs >> b) & (xs >> c) & 1
    return v


def _cubic_zeros_np(n: int, lin: int, pairs: np.ndarray, triples: np.ndarray) -> int:
    zeros = 0
    total = 1 << n
    for start in range(0, total, _CHUNK):
        xs = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        zeros += int(np.count_nonzero(_cubic_values_np(xs, lin, pairs, triples) == 0))
    return zeros


def _cnf_count_np(n: int, pos: np.ndarray, neg: np.ndarray) -> int:
    total = 0
    full = (1 << n) - 1
    for start in range(0, 1 << n, _CHUNK):
        a = np.arange(start, min(1 << n, start + _CHUNK), dtype=np.int64)
        ok = np.ones(len(a), dtype=bool)
        for pm, nm in zip(pos, neg):
            ok &= ((a & pm) != 0) | (((full ^ a) & nm) != 0)
        total += int(np.count_nonzero(ok))
    return total


def _char_hist_np(p: int, basis: np.ndarray, lam: np.ndarray, lin: int, pairs, triples) -> np.ndarray:
    n = lam.shape[0]
    xs = np.array([p], dtype=np.int64)
    for b in basis:
        xs = np.concatenate([xs, xs ^ b])
    lam16 = lam % 16
    hist = np.zeros(16, dtype=np.int64)
    for start in range(0, len(xs), _CHUNK):
        chunk = xs[start:start + _CHUNK]
        bits = ((chunk[:, None] >> np.arange(n)) & 1).astype(np.int64)
        cc = np.einsum("ri,ij,rj->r", bits, lam16, bits) % 16
        a = _cubic_values_np(chunk, lin, pairs, triples)
        hist += np.bincount((16 - cc + 8 * a) % 16, minlength=16)
    return hist


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _i64(seq) -> np.ndarray:
    return np.asarray(list(seq), dtype=np.int64)


def _triples(seq) -> np.ndarray:
    arr = np.asarray(list(seq), dtype=np.int64)
    return arr.reshape(-1, 3)


def enhancement_counts(rows, values) -> np.ndarray:
    """Counts (e0, e1, e2, e3) of vectors x with e(x) = 0, 1, 2, 3.

    ``rows[i]`` is the bitmask of row i of the form; ``values`` the basis
    values of the enhancement.
    """
    rows, values = _i64(rows), _i64(values)
    if backend() == "numba":
        return _enh_counts_nb(rows, values)
    return _enh_counts_np(rows, values)


def cubic_zero_count(n: int, lin: int, pairs, triples) -> int:
    """Number of zeros in GF(2)^n of a cubic polynomial without constant.

    ``lin`` is the mask of linear terms, ``pairs[i]`` the mask of j > i with
    an x_i x_j term and ``triples`` a list of (i, j, k) index triples.
    """
    pairs = _i64(pairs) if len(pairs) else np.zeros(n, dtype=np.int64)
    triples = _triples(triples)
    if backend() == "numba":
        return int(_cubic_zeros_nb(n, np.int64(lin), pairs, triples))
    return _cubic_zeros_np(n, lin, pairs, triples)


def cnf_model_count(n: int, pos, neg) -> int:
    """Assignments (bit i set = variable i+1 true) satisfying every clause.

    Clause c is satisfied when a variable of ``pos[c]`` is true or one of
    ``neg[c]`` is false.
    """
    pos, neg = _i64(pos), _i64(neg)
    if backend() == "numba":
        return int(_cnf_count_nb(n, pos, neg))
    return _cnf_count_np(n, pos, neg)


def char_sublink_histogram(p: int, basis, lam, lin: int, pairs, triples) -> np.ndarray:
    """Histogram over x in p + span(basis) of the exponent -x.Lx + 8 a(x) mod 16.

    ``a`` is the cubic given by (lin, pairs, triples) as in cubic_zero_count;
    ``lam`` is an integer matrix of which only residues mod 16 matter.
    """
    lam = np.asarray(lam, dtype=object)
    lam = (lam % 16).astype(np.int64) if lam.size else np.zeros((0, 0), dtype=np.int64)
    n = lam.shape[0]
    basis = _i64(basis)
    pairs = _i64(pairs) if len(pairs) else np.zeros(n, dtype=np.int64)
    triples = _triples(triples)
    if backend() == "numba":
        return _char_hist_nb(np.int64(p), basis, lam, np.int64(lin), pairs, triples)
    return _char_hist_np(p, basis, lam, lin, pairs, triples)
