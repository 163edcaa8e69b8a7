"""Symmetric integer matrices: exact signature and stable diagonalization.

Matrices are kept as lists of lists of Python ints so entries never
overflow. ``stable_diagonalize`` returns a certificate that can be checked
independently with :func:`verify_certificate`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Sequence

import numpy as np
from sympy.ntheory import divisors, sqrt_mod

from .errors import DimensionError, NotStablyDiagonalizableError, ValidationError

IntMatrix = list[list[int]]


def as_intmatrix(M: Sequence[Sequence[int]] | np.ndarray) -> IntMatrix:
    rows = [[int(x) for x in row] for row in (M.tolist() if isinstance(M, np.ndarray) else M)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("matrix must be square")
    return rows


def as_symmetric(M: Sequence[Sequence[int]] | np.ndarray) -> IntMatrix:
    rows = as_intmatrix(M)
    for i, j in itertools.combinations(range(len(rows)), 2):
        if rows[i][j] != rows[j][i]:
            raise ValidationError("E_SYMMETRY", f"matrix[{i}][{j}]", f"{rows[i][j]} != {rows[j][i]}; matrix must be symmetric")
    return rows


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: IntMatrix) -> IntMatrix:
    return [list(r) for r in zip(*A)] if A else []


def block_diag(A: IntMatrix, diag: Sequence[int]) -> IntMatrix:
    n, k = len(A), len(diag)
    out = [row[:] + [0] * k for row in A]
    for t, s in enumerate(diag):
        out.append([0] * (n + t) + [int(s)] + [0] * (k - t - 1))
    return out


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = as_intmatrix(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def quadratic_value(M: IntMatrix, x: Sequence[int]) -> int:
    """x^T M x for an integer (often 0/1) vector x."""
    idx = [i for i, v in enumerate(x) if v]
    return sum(x[i] * x[j] * M[i][j] for i in idx for j in idx)


def signature(M: Sequence[Sequence[int]] | np.ndarray) -> int:
    """Positive minus negative inertia, by exact symmetric elimination.

    A nonzero diagonal entry is used as a 1x1 pivot; when the remaining
    diagonal is zero but some off-diagonal entry a is not, the block
    [[0, a], [a, 0]] is a 2x2 pivot contributing one positive and one
    negative square.
    """
    A = [[Fraction(x) for x in row] for row in as_symmetric(M)]
    sig = 0
    while A:
        n = len(A)
        piv = next((i for i in range(n) if A[i][i] != 0), None)
        if piv is not None:
            d = A[piv][piv]
            sig += 1 if d > 0 else -1
            rest = [i for i in range(n) if i != piv]
            A = [[A[i][j] - A[i][piv] * A[piv][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        a = A[i][j]
        # Schur complement against E = [[0, a], [a, 0]], E^-1 = [[0, 1/a], [1/a, 0]]
        rest = [r for r in range(n) if r not in (i, j)]
        A = [
            [A[r][c] - (A[r][i] * A[j][c] + A[r][j] * A[i][c]) / a for c in rest]
            for r in rest
        ]
    return sig


@dataclass(frozen=True)
class CongruenceCertificate:
    """``P^T (M + diag(stab)) P = D`` with P unimodular and D diagonal."""

    P: tuple[tuple[int, ...], ...]
    stab: tuple[int, ...]
    D: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(len(self.D))]


def verify_certificate(M: Sequence[Sequence[int]], cert: CongruenceCertificate) -> bool:
    """Check the certificate identity exactly, plus det P = +-1 and D diagonal."""
    big = block_diag(as_symmetric(M), cert.stab)
    P = [list(r) for r in cert.P]
    D = [list(r) for r in cert.D]
    if len(P) != len(big) or len(D) != len(big):
        return False
    if matmul(matmul(transpose(P), big), P) != D:
        return False
    if any(D[i][j] for i in range(len(D)) for j in range(len(D)) if i != j):
        return False
    return determinant(P) in (1, -1)


# -- diagonalization ---------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _basis_with_first_column(v: Sequence[int]) -> IntMatrix:
    """Unimodular Q whose first column is the primitive vector v."""
    r = len(v)
    w = list(v)
    Q = identity(r)  # maintained as the inverse of the accumulated row operations
    for i in range(r - 1, 0, -1):
        a, b = w[i - 1], w[i]
        if b == 0:
            continue
        g, x, y = _xgcd(a, b)
        # rows (i-1, i) <- [[x, y], [-b/g, a/g]] (rows); inverse [[a/g, -y], [b/g, x]]
        w[i - 1], w[i] = g, 0
        for row in Q:
            c0, c1 = row[i - 1], row[i]
            row[i - 1] = c0 * (a // g) + c1 * (b // g)
            row[i] = -c0 * y + c1 * x
    if w[0] == -1:
        for row in Q:
            row[0] = -row[0]
    elif w[0] != 1:
        raise ValueError("vector is not primitive")
    return Q


def _integer_kernel_vector(B: IntMatrix) -> list[int] | None:
    import sympy

    ns = sympy.Matrix(B).nullspace()
    if not ns:
        return None
    vec = ns[0]
    den = 1
    for x in vec:
        den = den * sympy.fraction(x)[1] // gcd(den, int(sympy.fraction(x)[1]))
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


@lru_cache(maxsize=None)
def _box(r: int, radius: int) -> np.ndarray:
    """Primitive vectors of [-radius, radius]^r with positive leading entry."""
    pts = np.array(list(itertools.product(range(-radius, radius + 1), repeat=r)), dtype=np.int64)
    lead = np.array([row[np.nonzero(row)[0][0]] if row.any() else 0 for row in pts])
    prim = np.gcd.reduce(np.abs(pts), axis=1) == 1
    pts = pts[(lead > 0) & prim]
    order = np.lexsort((np.count_nonzero(pts, axis=1), np.abs(pts).sum(axis=1)))
    return pts[order]


def _split_candidates(B: IntMatrix, skip: int | None, radius: int, limit: int) -> list[list[int]]:
    """Primitive v with d = v^T B v != 0 dividing every entry of B v.

    Candidates come from the box [-radius, radius]^r, ordered by |d| and
    then by l1 norm. The basis vector at index ``skip`` (a freshly adjoined
    stabilizer) is excluded, since splitting it off again undoes the
    stabilization.
    """
    r = len(B)
    if max(abs(x) for row in B for x in row) > 1 << 20:
        return []
    V = _box(r, radius)
    if skip is not None:
        unit = np.zeros(r, dtype=np.int64)
        unit[skip] = 1
        V = V[~(V == unit).all(axis=1)]
    BV = V @ np.array(B, dtype=np.int64)
    d = (BV * V).sum(axis=1)
    ok = d != 0
    safe_d = np.where(ok, d, 1)
    ok &= ~(BV % safe_d[:, None]).any(axis=1)
    idx = np.nonzero(ok)[0]
    idx = idx[np.argsort(np.abs(d[idx]), kind="stable")]
    out: list[list[int]] = []
    seen_d: dict[int, int] = {}
    for i in idx:
        dv = int(d[i])
        # a few representatives per square value keep the branching small
        if seen_d.get(dv, 0) >= 3:
            continue
        seen_d[dv] = seen_d.get(dv, 0) + 1
        out.append([int(x) for x in V[i]])
        if len(out) >= limit:
            break
    return out


def _norm_fix(N: int) -> tuple[list[int], list[int]] | None:
    """Signs eps and integers t with sum eps_i t_i^2 = N, using few blocks."""
    if N == 0:
        return [], []
    r = isqrt(abs(N))
    if r * r == abs(N):
        return [1 if N > 0 else -1], [r]
    if N % 4 != 2:
        # N = (t1 - t2)(t1 + t2) with factors of equal parity
        p, q = (1, N) if N % 2 else (2, N // 2)
        return [1, -1], [(p + q) // 2, (q - p) // 2]
    rest = _norm_fix(N - 1)
    return [1] + rest[0], [1] + rest[1]


def _dual_elements(B: IntMatrix, D: int):
    """Yield (w, scale, d, n): y = scale * w / D has order d and norm n.

    The probes are z = e_i and e_i +- e_j with w = adj(B) z, together with
    multiples of each probe of every smaller order.
    """
    r = len(B)
    adj = _adjugate(B, D)
    probes = [[int(t == i) for t in range(r)] for i in range(r)]
    probes += [
        [int(t == i) + s * int(t == j) for t in range(r)]
        for i in range(r) for j in range(i + 1, r) for s in (1, -1)
    ]
    for z in probes:
        w = [sum(adj[i][j] * z[j] for j in range(r) if z[j]) for i in range(r)]
        g = abs(D)
        for x in w:
            g = gcd(g, x)
        order = abs(D) // g
        if order == 1:
            continue
        n_full = Fraction(sum(z[i] * w[i] for i in range(r) if z[i]), D)
        for d in divisors(order)[1:]:
            m = order // d
            yield w, m, d, n_full * m * m


def _dual_split_moves(B: IntMatrix, limit: int) -> list[tuple[list[int], list[int]]]:
    """Split vectors of the form d*y with y in the dual lattice, after padding.

    For y in the dual lattice of order d, rescaled by a unit c mod d so its
    norm is within an integer N of +-1/d, adjoining blocks that represent
    N (see _norm_fix) gives y' with y'.y' = +-1/d exactly. Then v = d*y'
    splits off a block <+-d>, dividing |det| by d. Returns (blocks, v)
    pairs, largest d first.
    """
    D = determinant(B)
    if abs(D) <= 1:
        return []
    moves = []
    seen = set()
    for w, m, d, n in _dual_elements(B, D):
        a = int(n * d) % d
        if gcd(a, d) != 1:
            continue
        for sgn in (1, -1):
            roots = sqrt_mod(sgn * pow(a, -1, d) % d, d, all_roots=True) if d > 2 else [1]
            roots = [c for c in roots if gcd(c, d) == 1]
            if not roots:
                continue
            c = min(roots, key=lambda t: min(t, d - t))
            c = c if c <= d - c else c - d
            N = Fraction(sgn, d) - n * c * c
            if N.denominator != 1:
                continue
            eps, ts = _norm_fix(int(N))
            v = [int(Fraction(c * m * d * x, D)) for x in w] + [d * t for t in ts]
            h = 0
            for x in v:
                h = gcd(h, x)
            v = [x // h for x in v]
            key = (tuple(eps), tuple(v))
            if key not in seen:
                seen.add(key)
                moves.append((-d, len(eps), abs(int(N)), eps, v))
    moves.sort(key=lambda mv: mv[:3])
    return [(mv[3], mv[4]) for mv in moves[:limit]]


def _adjugate(B: IntMatrix, D: int) -> IntMatrix:
    """Integer adjugate D * B^{-1} by exact rational elimination."""
    n = len(B)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(B)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [[int(x * D) for x in row[n:]] for row in aug]


def _reduce_block(A: IntMatrix, P: IntMatrix, k: int, max_steps: int = 200) -> tuple[IntMatrix, IntMatrix]:
    """Greedy size reduction of the trailing block by moves e_i -= q e_j.

    A move is taken when it lowers the sum of absolute entries of the
    block; this keeps box searches meaningful after large splits.
    """
    m = len(A) - k
    if m < 2:
        return A, P
    big = max(abs(x) for row in A[k:] for x in row[k:]) > 1 << 24
    blk = np.array([row[k:] for row in A[k:]], dtype=object if big else np.int64)
    T = np.eye(m, dtype=object if big else np.int64)
    steps = 0
    improved = True
    while improved and steps < max_steps:
        improved = False
        for i in range(m):
            for j in range(m):
                a_ij = int(blk[i, j])
                if i == j or a_ij == 0:
                    continue
                a_jj, a_ii = int(blk[j, j]), int(blk[i, i])
                qs = {1, -1}
                if a_jj:
                    qs |= {a_ij // a_jj, -((-a_ij) // a_jj)}
                qs.discard(0)
                old = np.abs(blk[i]).sum() - abs(a_ii)
                best = (0, 0, None, 0)
                for q in qs:
                    row = blk[i] - q * blk[j]
                    new_ii = a_ii - 2 * q * a_ij + q * q * a_jj
                    delta = abs(new_ii) - abs(a_ii) + 2 * (np.abs(row).sum() - abs(row[i]) - old)
                    if delta < best[0]:
                        best = (delta, q, row, new_ii)
                if best[2] is None:
                    continue
                _, q, row, new_ii = best
                row[i] = new_ii
                blk[i] = row
                blk[:, i] = row
                T[:, i] -= q * T[:, j]
                steps += 1
                improved = True
    if steps == 0:
        return A, P
    Q = [[int(x) for x in r] for r in T]
    return _apply_congruence(A, P, k, Q)


def _apply_congruence(A: IntMatrix, P: IntMatrix, k: int, Q: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Replace the trailing block at offset k by Q^T B Q and P by P (I + Q)."""
    n = len(A)
    full = identity(n)
    for i, row in enumerate(Q):
        for j, x in enumerate(row):
            full[k + i][k + j] = x
    return matmul(matmul(transpose(full), A), full), matmul(P, full)


def _split(A: IntMatrix, P: IntMatrix, k: int, v: list[int]) -> tuple[IntMatrix, IntMatrix]:
    Q = _basis_with_first_column(v)
    A, P = _apply_congruence(A, P, k, Q)
    d = A[k][k]
    clear = identity(len(A) - k)
    for j in range(k + 1, len(A)):
        if A[k][j]:
            if d == 0 or A[k][j] % d:
                raise AssertionError("split vector does not divide its row")
            clear[0][j - k] = -(A[k][j] // d)
    return _apply_congruence(A, P, k, clear)


def _forced_split(B: IntMatrix, skip: int | None) -> list[int] | None:
    """A split vector that never needs backtracking: radical or dividing pivot."""
    r = len(B)
    for i in range(r):
        if not any(B[i]):
            return [int(t == i) for t in range(r)]
    for i in range(r):
        d = B[i][i]
        if i != skip and d and all(x % d == 0 for x in B[i]):
            return [int(t == i) for t in range(r)]
    if determinant(B) == 0:
        return _integer_kernel_vector(B)
    return None


def stable_diagonalize(
    M: Sequence[Sequence[int]] | np.ndarray,
    *,
    max_stabilizations: int | None = None,
    radius: int = 2,
    branching: int = 4,
    max_nodes: int = 300,
) -> CongruenceCertificate:
    """Diagonalize M over Z after adjoining +-1 diagonal blocks.

    Repeatedly splits off a primitive vector v whose square d divides its
    pairing with everything (d = 0 for radical vectors). Each search node
    first size-reduces the remaining block, then tries short vectors from
    a box, then vectors d*y built from discriminant-group elements y (these
    may adjoin +-1 blocks to fix the norm of y), and finally adjoins a
    single +1 or -1 block, which on the link side is a framed split unknot.
    The search backtracks and is capped at ``max_nodes`` calls.

    Raises NotStablyDiagonalizableError when no certificate is found. That
    is unavoidable for some inputs: +-1 blocks preserve the discriminant
    form, and forms such as [[2, 3], [3, 2]] or [[0, 2], [2, 0]] have one
    that no diagonal matrix realizes. discriminant_obstruction decides
    this up front (within its search limits); the error message says
    whether a proof of impossibility or an exhausted search stopped it.
    """
    A0 = as_symmetric(M)
    n0 = len(A0)
    if max_stabilizations is None:
        max_stabilizations = n0 + 2
    obstruction = discriminant_obstruction(A0)
    if obstruction is not None:
        raise NotStablyDiagonalizableError(obstruction)
    failed: set = set()
    nodes = [0]

    def search(A, P, k, stab, fresh, budget):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            return None
        A, P = _reduce_block(A, P, k)
        while True:
            B = [row[k:] for row in A[k:]]
            if not any(any(row) for row in B):
                return A, P, stab
            skip = fresh - k if fresh is not None else None
            v = _forced_split(B, skip)
            if v is None:
                break
            A, P = _split(A, P, k, v)
            k, fresh = k + 1, None

        key = (tuple(map(tuple, B)), skip, budget)
        if key in failed:
            return None
        for rad in range(1, radius + 1):
            for v in _split_candidates(B, skip, rad, branching):
                A2, P2 = _split(A, P, k, v)
                found = search(A2, P2, k + 1, stab, None, budget)
                if found is not None:
                    return found
        for eps, v in _dual_split_moves(B, branching):
            A2 = block_diag(A, eps)
            m = len(eps)
            P2 = [row + [0] * m for row in P] + [
                [0] * len(P) + [int(i == j) for j in range(m)] for i in range(m)
            ]
            A2, P2 = _split(A2, P2, k, v)
            found = search(A2, P2, k + 1, stab + eps, None, budget)
            if found is not None:
                return found
        if budget > 0:
            for s in (1, -1):
                A2 = block_diag(A, [s])
                P2 = [row + [0] for row in P] + [[0] * len(P) + [1]]
                found = search(A2, P2, k, stab + [s], len(A2) - 1, budget - 1)
                if found is not None:
                    return found
        failed.add(key)
        return None

    for budget in range(max_stabilizations + 1):
        if nodes[0] > max_nodes:
            break
        found = search(A0, identity(n0), 0, [], None, budget)
        if found is not None:
            A, P, stab = found
            return CongruenceCertificate(
                P=tuple(tuple(r) for r in P),
                stab=tuple(stab),
                D=tuple(tuple(r) for r in A),
            )
    raise NotStablyDiagonalizableError(
        f"no diagonal form reached with up to {max_stabilizations} stabilizations "
        f"({nodes[0]} search nodes)"
    )


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _padic_val(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _jordan_odd(A: IntMatrix, p: int) -> dict[int, tuple[int, int]]:
    """Jordan data of a nonsingular form over the p-adic integers, p odd.

    Returns {scale k: (rank, Legendre symbol of the unit determinant)} for
    the p^k-modular components with k >= 1.
    """
    B = [[Fraction(x) for x in row] for row in A]

    def val(x: Fraction) -> float:
        if x == 0:
            return float("inf")
        return _padic_val(x.numerator, p) - _padic_val(x.denominator, p)

    out: dict[int, list[int]] = {}
    while B:
        r = len(B)
        best = min((val(B[i][j]), i, j) for i in range(r) for j in range(r))
        _, i, j = best
        if i != j and val(B[j][j]) == best[0]:
            i = j
        elif i != j and val(B[i][i]) > best[0]:
            # e_i <- e_i + s e_j reaches the minimal valuation for s = 1 or
            # s = -1: the two new diagonals differ by 4 B[i][j], p odd
            s = 1 if val(B[i][i] + B[j][j] + 2 * B[i][j]) == best[0] else -1
            for t in range(r):
                B[i][t] += s * B[j][t]
            for t in range(r):
                B[t][i] += s * B[t][j]
        a = B[i][i]
        k = int(val(a))
        unit = a / Fraction(p) ** k
        leg = _legendre(unit.numerator * unit.denominator, p)
        if k >= 1:
            rk, eps = out.get(k, [0, 1])
            out[k] = [rk + 1, eps * leg]
        rest = [t for t in range(r) if t != i]
        B = [[B[x][y] - B[x][i] * B[i][y] / a for y in rest] for x in rest]
    return {k: (v[0], v[1]) for k, v in out.items()}


def _two_adic_lifts(A: IntMatrix, e: int) -> list[list[np.ndarray]]:
    """levels[j] lists every z mod 2^(j+1) with A z = 0 mod 2^(j+1)."""
    from .gf2 import bitmatrix, gf2_solve_affine, span

    n = len(A)
    M = np.array(A, dtype=object)
    M2 = bitmatrix(A)
    base, ker = gf2_solve_affine(M2, np.zeros(n, dtype=np.int64))
    levels = [[np.array(z, dtype=object) for z in span(base, ker)]]
    for j in range(1, e):
        nxt = []
        for z in levels[-1]:
            rhs = ((-(M.dot(z)) // (1 << j)) % 2).astype(np.int64)
            t0, _ = gf2_solve_affine(M2, rhs)
            if t0 is None:
                continue
            for t in span(t0, ker):
                nxt.append(z + (1 << j) * np.array(t, dtype=object))
        levels.append(nxt)
    return levels


def _unit_class(u: int, k: int) -> int:
    """Class of the odd unit u modulo squares in (Z/2^k)^*."""
    return u % (1 << min(k, 3)) if k > 1 else 1


class _TwoPrimary:
    """The 2-primary part G of the discriminant group with its bilinear form.

    Elements are z mod 2^e with A z = 0 mod 2^e, standing for z / 2^e in
    the dual lattice; b(z, z') = z^T A z' / 4^e mod 1.
    """

    def __init__(self, A: IntMatrix, e: int):
        self.e = e
        self.mod = 1 << (2 * e)
        elems = _two_adic_lifts(A, e)[e - 1]
        Z = np.array([[int(x) % (1 << e) for x in z] for z in elems], dtype=object)
        AZ = Z.dot(np.array(A, dtype=object)) % self.mod
        self.Z = Z.astype(np.int64)
        self.AZ = AZ.astype(np.int64)
        # entries of Z are below 2^e and of AZ below 4^e, so rows of Z @ AZ^T fit in int64
        nz = np.where(self.Z == 0, e, np.vectorize(lambda x: _padic_val(int(x), 2) if x else 0)(self.Z))
        self.order = e - nz.min(axis=1)
        q = np.einsum("ij,ij->i", self.Z, self.AZ) % self.mod
        self.kind = []
        for k, qv in zip(self.order.tolist(), q.tolist()):
            # b(x, x) = u / 2^k with u odd, when x generates a cyclic summand
            shift = 2 * e - k
            ok = k > 0 and qv % (1 << shift) == 0 and (qv >> shift) % 2 == 1
            self.kind.append(_unit_class(qv >> shift, k) if ok else -1)
        self.kind = np.array(self.kind)
        counts = [int((self.order <= j).sum()) for j in range(e + 1)]
        exps = [c.bit_length() - 1 for c in counts]
        # ge[j - 1] = number of cyclic summands of order >= 2^j
        ge = [exps[j] - exps[j - 1] for j in range(1, e + 1)]
        self.cyclic_orders = sorted(
            (j for j in range(1, e + 1) for _ in range(ge[j - 1] - (ge[j] if j < e else 0))), reverse=True
        )
        self._cache: dict[tuple, bool | None] = {}

    def is_diagonal_sum(self, targets: Sequence[tuple[int, int]], limit: int = 20000) -> bool | None:
        """Does G split orthogonally into cyclic forms <u/2^k>? None if undecided."""
        key = tuple(sorted(((k, _unit_class(u, k)) for k, u in targets), reverse=True))
        if key in self._cache:
            return self._cache[key]
        nodes = [0]

        def extend(i: int, allowed: np.ndarray) -> bool | None:
            if i == len(key):
                return True
            k, u = key[i]
            undecided = False
            for x in np.flatnonzero(allowed & (self.order == k) & (self.kind == u)):
                nodes[0] += 1
                if nodes[0] > limit:
                    return None
                orth = (self.Z.dot(self.AZ[x]) % self.mod) == 0
                found = extend(i + 1, allowed & orth)
                if found:
                    return True
                undecided |= found is None
            return None if undecided else False

        result = extend(0, np.ones(len(self.Z), dtype=bool))
        self._cache[key] = result
        return result


def _local_obstruction(A: IntMatrix, det: int, limit: int = 200000, cap: int = 1 << 12) -> str | None:
    """Search for a diagonal form with the discriminant bilinear form of A.

    Two nonsingular forms become congruent after adding unimodular blocks
    exactly when their discriminant bilinear forms are isomorphic, and odd
    indefinite unimodular forms are diagonal. So A is stably diagonalizable
    if and only if some integer diagonal D shares its discriminant form.
    A candidate D is built from entries, each carrying at most one scale
    p^k per prime p, and a sign. At odd p the scale ranks and Legendre
    symbols must match; at p = 2 the cyclic summands <u/2^k> (u the unit
    part of the entry) must split the 2-primary form, checked by search.
    Returns a description when no D exists, None when one does or when the
    search is too large to finish.
    """
    factors = _prime_factors(det)
    e2 = factors.pop(2, 0)
    two = None
    if e2:
        if (1 << e2) > cap:
            if not factors:
                return None
        else:
            two = _TwoPrimary(A, e2)
    primes = sorted(factors)
    jordan = {p: _jordan_odd(A, p) for p in primes}
    slots = [(p, k) for p in primes for k, (rk, _) in sorted(jordan[p].items()) for _ in range(rk)]
    if two is not None:
        slots += [(2, k) for k in two.cyclic_orders]
    if not slots:
        return None
    ranks = [sum(rk for rk, _ in jordan[p].values()) for p in primes]
    if two is not None:
        ranks.append(len(two.cyclic_orders))
    lo = max(ranks)
    # with the 2-part untracked, entries may carry a spare factor 2
    extra_choices = (1, -1) if two is not None or not e2 else (1, -1, 2, -2)
    tried = 0
    undecided = False
    for n_entries in range(lo, len(slots) + 1):
        def assign(idx, cur, used, taken):
            nonlocal tried
            if idx == len(slots):
                if used == n_entries:
                    yield list(cur)
                return
            p = slots[idx][0]
            for e in range(min(used + 1, n_entries)):
                if (e, p) in taken:
                    continue
                tried += 1
                if tried > limit:
                    return
                cur.append(e)
                taken.add((e, p))
                yield from assign(idx + 1, cur, max(used, e + 1), taken)
                taken.discard((e, p))
                cur.pop()

        for choice in assign(0, [], 0, set()):
            contents: list[dict[int, int]] = [dict() for _ in range(n_entries)]
            for (p, k), e in zip(slots, choice):
                contents[e][p] = k
            for extras in itertools.product(extra_choices, repeat=n_entries):
                if sum(1 for x in extras if abs(x) == 2) > e2:
                    continue
                entries = []
                for e in range(n_entries):
                    value = extras[e]
                    for q, kq in contents[e].items():
                        value *= q**kq
                    entries.append(value)
                ok = True
                for p in primes:
                    prod: dict[int, int] = {}
                    for e in range(n_entries):
                        k = contents[e].get(p)
                        if k is not None:
                            prod[k] = prod.get(k, 1) * _legendre(entries[e] // p**k, p)
                    if any(prod.get(k, 1) != eps for k, (_, eps) in jordan[p].items()):
                        ok = False
                        break
                if not ok:
                    continue
                if two is not None:
                    targets = [(contents[e][2], entries[e] >> contents[e][2]) for e in range(n_entries) if 2 in contents[e]]
                    found = two.is_diagonal_sum(targets)
                    if found is None:
                        undecided = True
                        continue
                    if not found:
                        continue
                return None
        if tried > limit:
            return None
    if undecided:
        return None
    data = {p: jordan[p] for p in primes}
    if two is not None:
        data[2] = f"cyclic orders {[1 << k for k in two.cyclic_orders]}"
    return f"determinant {det}: the discriminant form (local data {data}) matches no diagonal form"


def _two_power_obstruction(A: IntMatrix, det: int, cap: int = 1 << 14) -> str | None:
    """Parity tests on the 2-primary part G of the discriminant group.

    For each k the map f_k(x) = 2^k b(x, x) mod 2 on G[2^k] is linear. For
    a diagonal form it vanishes on elements x with 2^(k-1) x in 2^k G, and
    it is nonzero exactly when some cyclic summand has order 2^k. Both
    facts survive +-1 stabilization. Elements of G[2^k] are represented by
    z mod 2^k with A z = 0 mod 2^k (x = z / 2^k).
    """
    from .gf2 import bitmatrix, gf2_solve_affine, span

    e = _padic_val(det, 2)
    if e == 0 or (1 << e) > cap:
        return None
    n = len(A)
    M = np.array(A, dtype=object)
    M2 = bitmatrix(A)
    zero = np.zeros(n, dtype=np.int64)
    base, ker = gf2_solve_affine(M2, zero)
    levels = [[np.array(z, dtype=object) for z in span(base, ker)]]
    # lift solutions mod 2^j to solutions mod 2^(j+1)
    for j in range(1, e + 1):
        nxt = []
        for z in levels[-1]:
            rhs = ((-(M.dot(z)) // (1 << j)) % 2).astype(np.int64)
            t0, _ = gf2_solve_affine(M2, rhs)
            if t0 is None:
                continue
            for t in span(t0, ker):
                nxt.append(z + (1 << j) * np.array(t, dtype=object))
        levels.append(nxt)
    for k in range(1, e + 1):
        reach = {tuple(int(x) % 2 for x in w) for w in levels[k]}
        has_odd = False
        nonzero_level = False
        for z in levels[k - 1]:
            f = (int(z.dot(M.dot(z))) >> k) & 1
            trivial = tuple(int(x) % 2 for x in z) in reach
            if trivial and f:
                return f"the 2-adic parity map at order 2^{k} is nonzero on 2^{k}G"
            nonzero_level |= not trivial
            has_odd |= bool(f)
        if nonzero_level and not has_odd:
            return f"the discriminant form is even on its order-2^{k} summands"
    return None


def discriminant_obstruction(M: Sequence[Sequence[int]]) -> str | None:
    """Proof that M has no stable diagonalization, if there is one.

    Adjoining +-1 blocks leaves the discriminant bilinear form unchanged,
    and that form is a complete invariant for this kind of stabilization.
    The first test searches for a diagonal form with the same discriminant
    form; when the 2-primary part is too large to enumerate, a parity test
    on its 2-torsion is used instead. Returns a description of the
    obstruction, or None if there is none or the search was cut off.
    """
    A = as_symmetric(M)
    if not A:
        return None
    det = determinant(A)
    if det == 0:
        return None
    return _local_obstruction(A, det) or _two_power_obstruction(A, det)
