"""Linear algebra over GF(2) on uint8 numpy arrays.

A ``BitVec`` is a 1-d uint8 array of 0/1 entries and a ``BitMatrix`` a 2-d
one. Small dimensions (tens of coordinates) are the norm here, so dense
elimination is plenty.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionError

BitVec = np.ndarray
BitMatrix = np.ndarray


def bitvec(bits: Sequence[int] | np.ndarray | str) -> BitVec:
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    return np.asarray(bits, dtype=np.int64).astype(np.uint8) & 1


def bitmatrix(rows: Sequence[Sequence[int]] | np.ndarray, ncols: int | None = None) -> BitMatrix:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((len(rows), ncols or 0), dtype=np.uint8)
    if arr.ndim != 2:
        raise DimensionError("bit matrix must be 2-dimensional")
    return (arr & 1).astype(np.uint8)


def matvec(A: BitMatrix, x: BitVec) -> BitVec:
    if A.shape[1] != len(x):
        raise DimensionError(f"matrix has {A.shape[1]} columns, vector has length {len(x)}")
    return (A.astype(np.int64) @ x.astype(np.int64) % 2).astype(np.uint8)


def to_mask(x: BitVec) -> int:
    """Pack a bit vector into an int, coordinate i -> bit i."""
    return sum(1 << i for i, b in enumerate(x) if b)


def from_mask(mask: int, n: int) -> BitVec:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.uint8)


def _rref(M: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) in the first ``ncols`` columns."""
    M = M.copy()
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == M.shape[0]:
            break
        hits = np.nonzero(M[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            M[[row, p]] = M[[p, row]]
        others = np.nonzero(M[:, col])[0]
        others = others[others != row]
        M[others] ^= M[row]
        pivots.append(col)
        row += 1
    return M, pivots


def rank(A: BitMatrix) -> int:
    A = bitmatrix(A)
    return len(_rref(A, A.shape[1])[1])


def kernel(A: BitMatrix) -> list[BitVec]:
    """Basis of {x : A x = 0}."""
    A = bitmatrix(A)
    return gf2_solve_affine(A, np.zeros(A.shape[0], dtype=np.uint8))[1]


def gf2_solve_affine(A: BitMatrix, b: BitVec) -> tuple[BitVec | None, list[BitVec]]:
    """Solve ``A x = b`` over GF(2).

    Returns ``(particular, kernel_basis)``. ``particular`` is None when the
    system is inconsistent; the kernel basis is returned either way.
    """
    A = bitmatrix(A)
    b = bitvec(b)
    nrows, ncols = A.shape
    if len(b) != nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {nrows}")
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1) if nrows else np.zeros((0, ncols + 1), np.uint8)
    R, pivots = _rref(aug, ncols)
    free = [c for c in range(ncols) if c not in pivots]

    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.uint8)
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = R[r, f]
        basis.append(v)

    rk = len(pivots)
    if nrows and R[rk:, ncols].any():
        return None, basis
    x = np.zeros(ncols, dtype=np.uint8)
    for r, p in enumerate(pivots):
        x[p] = R[r, ncols]
    return x, basis


def span(particular: BitVec, basis: list[BitVec]):
    """Yield every vector of ``particular + span(basis)`` in Gray-code order."""
    x = particular.copy()
    yield x.copy()
    for g in range(1, 1 << len(basis)):
        # bit that flips between g-1 and g in the reflected Gray code
        x ^= basis[(g & -g).bit_length() - 1]
        yield x.copy()
