"""Dense linear algebra over a prime field F_p on integer numpy arrays.

Vectors are rows. Every routine reduces mod p on the way out, so callers may
pass arbitrary integer arrays.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped.

    Returns (R, pivots) where R has one row per pivot column.
    """
    A = np.array(A, dtype=np.int64) % p
    if A.ndim == 1:
        A = A[None, :]
    rows, cols = A.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv[A[r, c]]) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def row_space(A, p: int, ncols: int | None = None) -> np.ndarray:
    """Canonical basis (RREF rows) of the row space of A."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        n = ncols if ncols is not None else (A.shape[-1] if A.ndim == 2 else 0)
        return np.zeros((0, n), dtype=np.int64)
    return rref(A, p)[0]


def nullspace(A, p: int) -> np.ndarray:
    """Rows spanning {x : A @ x = 0 (mod p)}, in RREF."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = (-R[i, f]) % p
    return row_space(basis, p, n)


def in_span(basis, vectors, p: int) -> np.ndarray:
    """Boolean per row of `vectors`: is it in the row space of `basis`."""
    basis = np.asarray(basis, dtype=np.int64)
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % p
    if basis.shape[0] == 0:
        return ~vectors.any(axis=1)
    R, piv = rref(basis, p)
    # reduce each vector against the pivots
    residual = vectors.copy()
    for i, c in enumerate(piv):
        residual = (residual - np.outer(residual[:, c], R[i])) % p
    return ~residual.any(axis=1)


def is_subspace(U, V, p: int) -> bool:
    """Row space of U contained in row space of V."""
    U = np.asarray(U)
    if U.shape[0] == 0:
        return True
    return bool(in_span(V, U, p).all())


def subspace_sum(U, V, p: int) -> np.ndarray:
    return row_space(np.vstack([U, V]), p, np.asarray(U).shape[1])


def intersect(U, V, p: int) -> np.ndarray:
    """Intersection of two row spaces, via the kernel of [U; -V]^T."""
    U = np.asarray(U, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    n = U.shape[1]
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    M = np.vstack([U, (-V) % p]).T
    K = nullspace(M, p)
    if K.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return row_space(K[:, : U.shape[0]] @ U, p, n)


def batched_rref(A, p: int) -> tuple[np.ndarray, np.ndarray]:
    """RREF of a stack of matrices, shape (B, r, c).

    Returns (R, ranks); zero rows sit at the bottom of each R[b].
    """
    A = np.array(A, dtype=np.int64) % p
    B, r, c = A.shape
    inv = inverse_table(p)
    ranks = np.zeros(B, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        mask = (A[:, :, col] != 0) & (rows[None, :] >= ranks[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = mask[idx].argmax(axis=1)
        rk = ranks[idx]
        prow = A[idx, piv].copy()
        A[idx, piv] = A[idx, rk]
        prow = (prow * inv[prow[:, col]][:, None]) % p
        A[idx, rk] = prow
        sub = A[idx]
        factors = sub[:, :, col].copy()
        factors[np.arange(idx.size), rk] = 0
        sub = (sub - factors[:, :, None] * prow[:, None, :]) % p
        A[idx] = sub
        ranks[idx] += 1
        if (ranks == r).all():
            break
    return A, ranks


def batched_rank(A, p: int, chunk: int = 20000) -> np.ndarray:
    A = np.asarray(A)
    out = np.empty(A.shape[0], dtype=np.int64)
    for s in range(0, A.shape[0], chunk):
        out[s : s + chunk] = batched_rref(A[s : s + chunk], p)[1]
    return out


def all_combinations(k: int, p: int) -> np.ndarray:
    """Every vector of F_p^k as rows, in lexicographic order (last coord fastest)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * k).reshape(k, -1).T
    return grids.astype(np.int64)


def span_elements(basis, p: int) -> np.ndarray:
    """All p^k elements of the row space spanned by the rows of `basis`."""
    basis = np.asarray(basis, dtype=np.int64)
    coeffs = all_combinations(basis.shape[0], p)
    if basis.shape[0] == 0:
        return np.zeros((1, basis.shape[1]), dtype=np.int64)
    return (coeffs @ basis) % p
