"""Time the 2^m enumeration kernels under the numba and numpy backends.

Usage: python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

Both backends are run on the same random instances; their results must
agree exactly, and the table reports the best-of-R wall time for each.
The numba column excludes compilation (one warm-up call is made first).
"""

from __future__ import annotations

import argparse
import itertools
import os
import random
import time

import numpy as np

from tau4 import _kernels as K


def _instances(size: int, rng: random.Random) -> dict:
    n = size
    m = size
    rows = [0] * m
    for i in range(m):
        for j in range(i, m):
            if rng.random() < 0.5:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    values = [((rows[i] >> i) & 1) + 2 * rng.randint(0, 1) for i in range(m)]
    pairs = [sum(1 << j for j in range(i + 1, n) if rng.random() < 0.3) for i in range(n)]
    triples = [t for t in itertools.combinations(range(n), 3) if rng.random() < 0.05]
    lin = rng.getrandbits(n)
    clauses = [rng.sample(range(n), 3) for _ in range(2 * n)]
    pos = [sum(1 << v for v in c if rng.random() < 0.5) for c in clauses]
    neg = [sum(1 << v for v in c) & ~p for c, p in zip(clauses, pos)]
    lam = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    lam = [[lam[i][j] + lam[j][i] for j in range(n)] for i in range(n)]
    basis = [1 << i for i in range(n)]
    return {
        "enhancement_counts": (K.enhancement_counts, (rows, values)),
        "cubic_zero_count": (K.cubic_zero_count, (n, lin, pairs, triples)),
        "cnf_model_count": (K.cnf_model_count, (n, pos, neg)),
        "char_sublink_histogram": (K.char_sublink_histogram, (0, basis, lam, lin, pairs, triples)),
    }


def _best_time(func, args, repeat: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def _run(backend: str, func, args, repeat: int):
    if backend == "numpy":
        os.environ["TAU4_DISABLE_NUMBA"] = "1"
    else:
        os.environ.pop("TAU4_DISABLE_NUMBA", None)
    func(*args)  # warm-up, includes numba compilation
    return _best_time(func, args, repeat)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=20, help="number of variables / dimension (2^size work)")
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions per backend")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
    rng = random.Random(args.seed)
    print(f"size {args.size} (2^{args.size} = {1 << args.size} points), best of {args.repeat}")
    print(f"{'kernel':<24} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}  agree")
    ok = True
    for name, (func, fargs) in _instances(args.size, rng).items():
        t_np, r_np = _run("numpy", func, fargs, args.repeat)
        if K.HAVE_NUMBA:
            t_nb, r_nb = _run("numba", func, fargs, args.repeat)
            same = bool(np.array_equal(np.asarray(r_np), np.asarray(r_nb)))
            ok &= same
            print(f"{name:<24} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x  {same}")
        else:
            print(f"{name:<24} {t_np:>10.4f} {'-':>10} {'-':>8}  -")
    os.environ.pop("TAU4_DISABLE_NUMBA", None)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
