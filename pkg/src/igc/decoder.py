"""Collaborative decoding of s-interleaved Goppa words in the GRS supercode.

The joint key equation is solved as a stacked homogeneous Hankel system over
F_q, searching for the smallest error-locator degree that admits a solution.
Error values are then recovered over F_p by erasure decoding on the located
columns, and every row is re-checked for code membership.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ExtensionField, Poly
from .goppa import GoppaCode
from .linalg import AmbiguousSystem, InconsistentSystem, rref, right_kernel_fq


class DecodingFailure(Exception):
    """The decoder could not produce a verified result."""


@dataclass(frozen=True)
class BurstError:
    support: tuple[int, ...]
    values: np.ndarray  # s x t over F_p, column j sits at support[j]

    @property
    def weight(self) -> int:
        return len(self.support)

    def expand(self, n: int) -> np.ndarray:
        s = self.values.shape[0]
        E = np.zeros((s, n), dtype=np.int64)
        E[:, list(self.support)] = self.values
        return E


@dataclass(frozen=True)
class DecodeResult:
    codewords: np.ndarray  # s x n
    error: BurstError
    locator: Poly | None = None


def irs_radius(s: int, r: int) -> int:
    """Decoding radius floor(s*r/(s+1)) of the s-interleaved supercode."""
    if s < 1 or r < 1:
        raise ValueError("s and r must be positive")
    return s * r // (s + 1)


def rs_syndromes(Y, code: GoppaCode) -> np.ndarray:
    """Syndromes ``S[l, j] = sum_i Y[l, i] alpha_i^j / g(alpha_i)`` (s x r over F_q)."""
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
    F = code.field
    if np.all(Y < code.p) and np.all(Y >= 0):
        # F_p words: contract against the subfield expansion of H
        d = (code.H_fp @ Y.T) % code.p  # (r*m) x s
        d = d.reshape(code.r, F.m, -1).transpose(2, 0, 1)  # s x r x m
        return d @ F.weights
    return F.matmul(Y, code.H_fq.T)


def _stacked_hankel(S: np.ndarray, t: int) -> np.ndarray:
    windows = np.lib.stride_tricks.sliding_window_view(S, t + 1, axis=1)
    return windows.reshape(-1, t + 1)


def key_equation_candidates(S: np.ndarray, F: ExtensionField, t_max: int) -> tuple[int, list[Poly]]:
    """Smallest ``t <= t_max`` whose stacked Hankel system has a kernel vector
    with nonzero top coefficient, and the monic locators from its kernel basis."""
    S = np.atleast_2d(S)
    r = S.shape[1]
    if not S.any():
        return 0, [Poly(F, [1])]
    for t in range(1, min(t_max, r - 1) + 1):
        K = right_kernel_fq(F, _stacked_hankel(S, t))
        cands = [Poly(F, row.tolist()).monic() for row in K if row[t] != 0]
        if cands:
            return t, cands
    raise DecodingFailure(f"no error locator of degree <= {t_max}")


def joint_key_equation(S: np.ndarray, F: ExtensionField, t_max: int) -> Poly:
    return key_equation_candidates(S, F, t_max)[1][0]


def solve_erasures(H, p: int, Y, positions) -> np.ndarray:
    """Error matrix supported on ``positions`` with ``H E^T = H Y^T`` over F_p.

    One elimination serves all rows.  Raises InconsistentSystem when some row
    cannot be explained by errors on ``positions`` and AmbiguousSystem when the
    columns of H on ``positions`` are dependent.
    """
    H = np.asarray(H, dtype=np.int64)
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
    J = list(positions)
    t = len(J)
    synd = (H @ Y.T) % p
    E = np.zeros_like(Y)
    if t == 0:
        if synd.any():
            raise InconsistentSystem("nonzero syndrome without erasures")
        return E
    R, pivots = rref(np.hstack([H[:, J], synd]), p)
    if any(c >= t for c in pivots):
        raise InconsistentSystem("syndrome outside the span of the erased columns")
    if len(pivots) < t:
        raise AmbiguousSystem("erased columns are linearly dependent")
    E[:, J] = R[:t, t:].T
    return E


def erasure_decode(y_row, positions, code: GoppaCode) -> np.ndarray:
    """Codeword obtained by correcting ``y_row`` on the given positions only."""
    try:
        E = solve_erasures(code.H_fp, code.p, y_row, positions)
    except (InconsistentSystem, AmbiguousSystem) as exc:
        raise DecodingFailure(str(exc)) from exc
    c = (np.asarray(y_row) - E[0]) % code.p
    if ((code.H_fp @ c) % code.p).any():
        raise DecodingFailure("erasure result is not a codeword")
    return c


def decode_interleaved(Y, code: GoppaCode, s: int | None = None, t_max: int | None = None) -> DecodeResult:
    """Decode an s x n received matrix up to the interleaved radius.

    Raises DecodingFailure on any verification miss: locator degree differs
    from its number of roots among the locators, the erasure systems are
    inconsistent (this covers error values outside F_p), or a corrected row
    is not a codeword.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64)) % code.p
    if Y.shape[1] != code.n:
        raise ValueError(f"word length {Y.shape[1]} != n = {code.n}")
    s = s or Y.shape[0]
    if t_max is None:
        t_max = irs_radius(s, code.r)
    F = code.field
    S = rs_syndromes(Y, code)
    if not S.any():
        return DecodeResult(Y.copy(), BurstError((), np.zeros((Y.shape[0], 0), dtype=np.int64)), Poly(F, [1]))
    t, candidates = key_equation_candidates(S, F, t_max)
    reasons = []
    for lam in candidates:
        roots = np.nonzero(lam.eval_many(code.locators) == 0)[0]
        if len(roots) != lam.degree:
            reasons.append(f"locator of degree {lam.degree} has {len(roots)} roots")
            continue
        try:
            E = solve_erasures(code.H_fp, code.p, Y, roots)
        except (InconsistentSystem, AmbiguousSystem) as exc:
            reasons.append(str(exc))
            continue
        C = (Y - E) % code.p
        if ((code.H_fp @ C.T) % code.p).any():
            reasons.append("corrected row is not a codeword")
            continue
        support = tuple(int(i) for i in roots)
        return DecodeResult(C, BurstError(support, E[:, list(support)]), lam)
    raise DecodingFailure("; ".join(reasons) or "no candidate locator")
