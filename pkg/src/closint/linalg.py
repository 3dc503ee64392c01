"""Exact row reduction and subspace arithmetic over a :class:`GF`.

Subspaces are always stored as row spaces.  A matrix in reduced row-echelon
form with no zero rows is the canonical representative, so two subspaces are
equal exactly when their RREF matrices are equal.
"""

from __future__ import annotations

import numpy as np

from .fields import GF

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "span",
    "span_key",
    "sum_spaces",
    "intersect_spaces",
    "reduce_mod",
    "in_span",
    "contains",
    "solve",
    "complement_indices",
    "zeros",
    "identity",
]


def zeros(n: int, m: int = 0) -> np.ndarray:
    return np.zeros((n, m), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(M, F: GF):
    """Return ``(R, pivots)`` with ``R`` the reduced row-echelon form of ``M``.

    Zero rows are dropped.  Only columns at or right of the current pivot are
    updated, which keeps the elimination cheap on tall matrices.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    prime = F.d == 1
    p = F.p
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k], c:] = A[[k, r], c:]
        inv = int(F.inv(A[r, c]))
        if prime:
            A[r, c:] = (A[r, c:] * inv) % p
        else:
            A[r, c:] = F.mul(A[r, c:], inv)
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            if prime:
                A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
            else:
                A[rows, c:] = F.sub(A[rows, c:], F.mul(col[rows][:, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, F: GF) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, F)[1])


def span(M, F: GF, ncols: int | None = None) -> np.ndarray:
    """Canonical RREF basis of the row space of ``M``."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1:
        M = M[None, :]
    if M.shape[0] == 0:
        return zeros(0, M.shape[1] if ncols is None else ncols)
    return rref(M, F)[0]


def span_key(R: np.ndarray) -> bytes:
    """Hashable key of an RREF matrix."""
    R = np.ascontiguousarray(R, dtype=np.int64)
    return R.shape[0].to_bytes(4, "little") + R.tobytes()


def nullspace(M, F: GF, ncols: int | None = None) -> np.ndarray:
    """Rows spanning ``{x : M x = 0}`` (right kernel), in RREF."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1] if M.ndim == 2 and M.size else (ncols if ncols is not None else M.shape[-1])
    if M.ndim != 2 or M.shape[0] == 0:
        return identity(n)
    R, piv = rref(M, F)
    free = [c for c in range(n) if c not in set(piv)]
    K = zeros(len(free), n)
    for i, f in enumerate(free):
        K[i, f] = 1
        if piv:
            K[i, piv] = F.neg(R[:, f])
    return span(K, F, n) if len(free) else zeros(0, n)


def left_nullspace(M, F: GF) -> np.ndarray:
    """Rows spanning ``{y : y M = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    return nullspace(M.T, F, ncols=M.shape[0])


def sum_spaces(U, W, F: GF) -> np.ndarray:
    U = np.asarray(U, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    return span(np.vstack([U, W]), F, U.shape[1])


def intersect_spaces(U, W, F: GF) -> np.ndarray:
    """Intersection of row spaces as ``ann(ann(U) + ann(W))``."""
    U = np.asarray(U, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    n = U.shape[1]
    if U.shape[0] == 0 or W.shape[0] == 0:
        return zeros(0, n)
    if U.shape[0] == n and rank(U, F) == n:
        return span(W, F, n)
    if W.shape[0] == n and rank(W, F) == n:
        return span(U, F, n)
    annU = nullspace(U, F, n)
    annW = nullspace(W, F, n)
    both = np.vstack([annU, annW])
    if both.shape[0] == 0:
        return identity(n)
    return nullspace(both, F, n)


def reduce_mod(v, R: np.ndarray, pivots, F: GF) -> np.ndarray:
    """Reduce row vectors ``v`` modulo the RREF row space ``(R, pivots)``."""
    v = np.array(v, dtype=np.int64, copy=True)
    single = v.ndim == 1
    if single:
        v = v[None, :]
    for i, c in enumerate(pivots):
        coef = v[:, c].copy()
        rows = np.nonzero(coef)[0]
        if rows.size:
            v[rows] = F.sub(v[rows], F.mul(coef[rows][:, None], R[i][None, :]))
    return v[0] if single else v


def _pivots_of(R: np.ndarray):
    """Pivot columns of ``R`` when it is in RREF, else ``None``."""
    piv = []
    for row in R:
        nz = np.nonzero(row)[0]
        if nz.size == 0 or row[nz[0]] != 1 or (piv and nz[0] <= piv[-1]):
            return None
        piv.append(int(nz[0]))
    if piv and np.count_nonzero(R[:, piv]) != len(piv):
        return None
    return piv


def _reduced(R: np.ndarray, F: GF):
    piv = _pivots_of(R)
    if piv is None:
        R, piv = rref(R, F)
    return R, piv


def in_span(v, R: np.ndarray, F: GF) -> bool:
    """Whether ``v`` lies in the row space of ``R`` (any matrix; RREF is the fast path)."""
    R = np.asarray(R, dtype=np.int64)
    if R.shape[0] == 0:
        return not np.any(v)
    R, piv = _reduced(R, F)
    return not np.any(reduce_mod(v, R, piv, F))


def contains(R: np.ndarray, S: np.ndarray, F: GF) -> bool:
    """Whether the row space of ``S`` lies inside the row space of ``R``."""
    R = np.asarray(R, dtype=np.int64)
    S = np.asarray(S, dtype=np.int64)
    if S.shape[0] == 0:
        return True
    if R.shape[0] == 0:
        return not np.any(S)
    R, piv = _reduced(R, F)
    return not np.any(reduce_mod(S, R, piv, F))


def solve(A, b, F: GF):
    """One solution ``x`` of ``A x = b`` or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = A.shape[1]
    aug = np.hstack([A, b[:, None]])
    R, piv = rref(aug, F)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def complement_indices(R: np.ndarray, n: int) -> list[int]:
    """Standard basis indices spanning a complement of the RREF space ``R``."""
    piv = set(_pivots_of(R)) if R.shape[0] else set()
    return [c for c in range(n) if c not in piv]
