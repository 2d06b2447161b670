"""Gaussian elimination over F_p (numpy int64) and over F_{p^m} (table arithmetic)."""
from __future__ import annotations

import numpy as np

from .fields import ExtensionField


class SingularMatrix(ArithmeticError):
    pass


class InconsistentSystem(ArithmeticError):
    pass


class AmbiguousSystem(ArithmeticError):
    pass


def matmul_mod(A, B, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for small-entry integer matrices."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < 2**52:
        # BLAS in float64 is exact below 2^53
        out = np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
        return out % p
    return (A @ B) % p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the list of pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    # entries may grow by (p-1)^2 per unreduced update before overflow matters
    budget = max(1, (2**62) // ((p - 1) ** 2 + 1) // max(p, 2))
    pending = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        colvals = R[r:, c] % p
        nz = np.nonzero(colvals)[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        prow = R[r, c:] % p
        prow = (prow * pow(int(prow[0]), -1, p)) % p
        R[r, c:] = prow
        col = R[:, c] % p
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr, c:] -= np.outer(col[nzr], prow)
            pending += 1
            if pending >= budget:
                R %= p
                pending = 0
        pivots.append(c)
        r += 1
    R %= p
    return R, pivots


def rank_mod(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def right_kernel(A, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}`` over F_p.

    The basis has the identity on the non-pivot columns of ``rref(A)``.
    """
    return kernel_and_free_columns(A, p)[0]


def kernel_and_free_columns(A, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64), list(range(n))
    R, pivots = rref(A, p)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for row, pc in enumerate(pivots):
            K[i, pc] = -R[row, f] % p
    return K, free


def left_kernel(A, p: int) -> np.ndarray:
    return right_kernel(np.asarray(A).T, p)


def inverse_mod(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    R, pivots = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:]


def solve_mod(A, b, p: int) -> np.ndarray:
    """The unique solution of ``A x = b`` over F_p.

    Raises InconsistentSystem or AmbiguousSystem otherwise.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    R, pivots = rref(np.hstack([A, b]), p)
    if n in pivots:
        raise InconsistentSystem("system has no solution")
    if len(pivots) < n:
        raise AmbiguousSystem(f"solution space has dimension {n - len(pivots)}")
    return R[:n, n].copy()


def solve_left_mod(G, u, p: int) -> np.ndarray:
    """Solve ``x G = u`` for each row of ``u`` (G of full row rank)."""
    G = np.asarray(G, dtype=np.int64)
    u = np.atleast_2d(np.asarray(u, dtype=np.int64))
    k = G.shape[0]
    R, pivots = rref(np.hstack([G.T, u.T]), p)
    if any(c >= k for c in pivots):
        raise InconsistentSystem("vector not in the row space")
    if len(pivots) < k:
        raise AmbiguousSystem("generator matrix is rank deficient")
    return R[:k, k:].T.copy()


# -- extension-field elimination (decoder key equation) ---------------------

def rref_fq(F: ExtensionField, A) -> tuple[np.ndarray, list[int]]:
    R = np.array(A, dtype=np.int64)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.vmul(R[r], F.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = F.vsub(R[nzr], F.vmul(col[nzr, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def right_kernel_fq(F: ExtensionField, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref_fq(F, A)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for row, pc in enumerate(pivots):
            K[i, pc] = F.neg(int(R[row, f]))
    return K


def rank_fq(F: ExtensionField, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref_fq(F, A)[1])
