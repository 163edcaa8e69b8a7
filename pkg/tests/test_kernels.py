"""Both kernel backends against plain-Python brute force."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from tau4 import _kernels as K


def _bits(x, n):
    return [(x >> i) & 1 for i in range(n)]


def _random_cubic(rng, n):
    lin = rng.getrandbits(n) if n else 0
    pairs = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.4:
            pairs[i] |= 1 << j
    triples = [t for t in itertools.combinations(range(n), 3) if rng.random() < 0.3]
    return lin, pairs, triples


def _cubic_brute(x, n, lin, pairs, triples):
    b = _bits(x, n)
    v = sum(b[i] for i in range(n) if (lin >> i) & 1)
    v += sum(b[i] * b[j] for i in range(n) for j in range(n) if (pairs[i] >> j) & 1)
    v += sum(b[i] * b[j] * b[k] for i, j, k in triples)
    return v & 1


def test_backend_switch(backend):
    assert K.backend() == backend


@pytest.mark.parametrize("seed", range(8))
def test_enhancement_counts(backend, seed):
    rng = random.Random(seed)
    m = rng.randint(0, 8)
    B = [[0] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        B[i][j] = B[j][i] = rng.randint(0, 1)
    for i in range(m):
        B[i][i] = rng.randint(0, 1)
    # e(b_i) is congruent to b_i . b_i mod 2
    values = [B[i][i] + 2 * rng.randint(0, 1) for i in range(m)]
    rows = [sum(B[i][j] << j for j in range(m)) for i in range(m)]
    expected = [0, 0, 0, 0]
    for x in range(1 << m):
        b = _bits(x, m)
        e = sum(b[i] * values[i] for i in range(m))
        e += 2 * sum(b[i] * b[j] * B[i][j] for i, j in itertools.combinations(range(m), 2))
        expected[e % 4] += 1
    assert list(K.enhancement_counts(rows, values)) == expected


@pytest.mark.parametrize("seed", range(10))
def test_cubic_zero_count(backend, seed):
    rng = random.Random(100 + seed)
    n = rng.randint(0, 9)
    lin, pairs, triples = _random_cubic(rng, n)
    expected = sum(1 for x in range(1 << n) if _cubic_brute(x, n, lin, pairs, triples) == 0)
    assert K.cubic_zero_count(n, lin, pairs, triples) == expected


@pytest.mark.parametrize("seed", range(10))
def test_cnf_model_count(backend, seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 9)
    pos, neg = [], []
    for _ in range(rng.randint(0, 12)):
        lits = rng.sample(range(n), min(n, rng.randint(1, 3)))
        signs = [rng.random() < 0.5 for _ in lits]
        pos.append(sum(1 << v for v, s in zip(lits, signs) if s))
        neg.append(sum(1 << v for v, s in zip(lits, signs) if not s))
    expected = 0
    for a in range(1 << n):
        if all((a & p) or (~a & q) for p, q in zip(pos, neg)):
            expected += 1
    assert K.cnf_model_count(n, pos, neg) == expected


@pytest.mark.parametrize("seed", range(10))
def test_char_sublink_histogram(backend, seed):
    rng = random.Random(300 + seed)
    n = rng.randint(1, 7)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lam[i][j] = lam[j][i] = rng.randint(-20, 20)
    lin, pairs, triples = _random_cubic(rng, n)
    p = rng.getrandbits(n)
    basis = [rng.getrandbits(n) for _ in range(rng.randint(0, n))]
    expected = np.zeros(16, dtype=np.int64)
    for g in range(1 << len(basis)):
        x = p
        for t, b in enumerate(basis):
            if (g >> t) & 1:
                x ^= b
        v = _bits(x, n)
        cc = sum(v[i] * v[j] * lam[i][j] for i in range(n) for j in range(n))
        expected[(-cc + 8 * _cubic_brute(x, n, lin, pairs, triples)) % 16] += 1
    assert list(K.char_sublink_histogram(p, basis, lam, lin, pairs, triples)) == list(expected)


def test_backends_agree_on_large_instance(monkeypatch):
    rng = random.Random(9)
    n = 18
    lin, pairs, triples = _random_cubic(rng, n)
    monkeypatch.delenv("TAU4_DISABLE_NUMBA", raising=False)
    a = K.cubic_zero_count(n, lin, pairs, triples)
    monkeypatch.setenv("TAU4_DISABLE_NUMBA", "1")
    b = K.cubic_zero_count(n, lin, pairs, triples)
    assert a == b
