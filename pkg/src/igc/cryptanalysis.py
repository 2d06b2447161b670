"""Attacks and work-factor estimators for interleaved Goppa McEliece.

Contains the Metzner-Kapturowski support-recovery attack (effective when the
interleaving order reaches the burst weight), the ball-collision work factor
with its p-ary log-scaling, the one-out-of-many gain test, and the security /
key-size formulas used for the three parameter-selection methods.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import mpmath
import numpy as np

from .decoder import irs_radius, solve_erasures
from .goppa import InvalidParameters
from .linalg import (AmbiguousSystem, InconsistentSystem, left_kernel, matmul_mod, rank_mod,
                     right_kernel, solve_left_mod)

_PREC = 160  # bits of working precision for key-size products


class NoSolution(ValueError):
    pass


class AttackFailed(Exception):
    """The rank test could not isolate an error support that decodes."""

    def __init__(self, msg: str, rank: int, t: int, support_size: int):
        super().__init__(msg)
        self.rank = rank
        self.t = t
        self.support_size = support_size


# -- key sizes ----------------------------------------------------------------

def _ceil_or_floor_log2_times(p: int, X: int, rounding: str) -> int:
    if rounding not in ("ceil", "floor"):
        raise ValueError("rounding must be 'ceil' or 'floor'")
    if X == 0:
        return 0
    if p & (p - 1) == 0:
        return (p.bit_length() - 1) * X  # log2 p is an integer
    with mpmath.workprec(_PREC + X.bit_length()):
        v = mpmath.log(p, 2) * X
        return int(mpmath.ceil(v) if rounding == "ceil" else mpmath.floor(v))


def key_size_bits(p: int, n: int, k: int, rounding: str = "ceil") -> int:
    """``ceil(log2(p) * (n-k) * k)``: size of the redundancy part of a systematic generator."""
    if not 0 <= k <= n:
        raise InvalidParameters(f"need 0 <= k <= n, got k={k}, n={n}")
    return _ceil_or_floor_log2_times(p, (n - k) * k, rounding)


def key_size_bits_long(p: int, s: int, n: int, k_star: int, rounding: str = "ceil") -> int:
    return key_size_bits(p, s * n, k_star, rounding)


def method_c_dimensions(K, p: int, s: int, n: int) -> tuple[int, int]:
    """Integer dimensions (low rate, high rate) of a length-sn code with key size about K.

    Solves ``log2(p) (sn - k) k = K`` and returns the innermost integers,
    ``ceil`` of the small root and ``floor`` of the large one, whose key
    size is at least K.
    """
    N = s * n
    with mpmath.workprec(_PREC):
        disc = mpmath.mpf(N) ** 2 - 4 * mpmath.mpf(K) / mpmath.log(p, 2)
        if disc < 0:
            raise NoSolution(f"K={K} exceeds the maximal key size for length {N}")
        root = mpmath.sqrt(disc)
        lo = (N - root) / 2
        hi = (N + root) / 2
        return int(mpmath.ceil(lo)), int(mpmath.floor(hi))


# -- ball-collision work factor ---------------------------------------------

def _log2_binomials(N: int, lo: int, hi: int) -> dict[int, float]:
    """log2 C(N, j) for j in [lo, hi], from exact integers by the ratio recurrence."""
    out: dict[int, float] = {}
    if lo > hi:
        return out
    c = math.comb(N, lo)
    out[lo] = math.log2(c)
    for j in range(lo + 1, hi + 1):
        c = c * (N - j + 1) // j
        out[j] = math.log2(c)
    return out


def ball_collision_terms(n: int, k: int, t: int) -> dict[int, float]:
    """log2 of ``C(n,t) / (2 C(n-k, t-l) sqrt(C(k, l)))`` for every admissible l."""
    if not (0 <= k <= n and 0 <= t <= n):
        raise InvalidParameters(f"need 0 <= k <= n and 0 <= t <= n (n={n}, k={k}, t={t})")
    l_min, l_max = max(0, t - (n - k)), min(t, k)
    red = _log2_binomials(n - k, t - l_max, t - l_min)
    info = _log2_binomials(k, l_min, l_max)
    base = math.log2(math.comb(n, t)) - 1
    return {l: base - red[t - l] - 0.5 * info[l] for l in range(l_min, l_max + 1)}


def ball_collision_log2(n: int, k: int, t: int) -> float:
    return min(ball_collision_terms(n, k, t).values())


def ball_collision_argmin(n: int, k: int, t: int) -> int:
    terms = ball_collision_terms(n, k, t)
    return min(terms, key=terms.__getitem__)


# -- security levels ---------------------------------------------------------

def _log2_log2(p: int) -> float:
    return math.log2(math.log2(p))


def unique_radius(p: int, r: int) -> int:
    """Error weight ``floor(2r/p)`` of the square-free Goppa decoder used by methods B and C."""
    return 2 * r // p


def security_bits_method_a(p: int, n: int, k: int, t_irs: int) -> float:
    return _log2_log2(p) + ball_collision_log2(n, k, t_irs)


def security_bits_method_b(p: int, n: int, k: int, r: int, s: int) -> float:
    return math.log2(s) + _log2_log2(p) + ball_collision_log2(n, k, unique_radius(p, r))


def security_bits_method_c(p: int, s: int, n: int, r_star: int, k_star: int) -> float:
    return _log2_log2(p) + ball_collision_log2(s * n, k_star, unique_radius(p, r_star))


def doom_gain_applies(work_factor_log2: float, s: int) -> bool:
    """True iff decoding one out of s instances beats the single-target cost."""
    return work_factor_log2 <= 1.5 * math.log2(s)


def doom_reduced_log2(work_factor_log2: float) -> float:
    return 2.0 * work_factor_log2 / 3.0


def mk_solution_space_log2(p: int, m: int, t_irs: int, s: int, n: int) -> float:
    """log2 of ``n^3 p^(m (t - s))``, the cost of searching the decoder's solution space."""
    if s > t_irs:
        raise ValueError("the estimate applies for s <= t_IRS")
    return 3 * math.log2(n) + m * (t_irs - s) * math.log2(p)


def johnson_radius(n: int, r: int) -> int:
    """``floor(n/2 (1 - sqrt(1 - (4r+2)/n)))`` computed exactly with integer square roots."""
    D = n * n - n * (4 * r + 2)
    if n <= 0 or D < 0:
        raise InvalidParameters(f"need 4r+2 <= n (n={n}, r={r})")
    root = math.isqrt(D)
    if root * root == D:
        return (n - root) // 2
    return (n - root - 1) // 2


@dataclass(frozen=True)
class SecurityReport:
    method: str  # "A-interleaved", "B-independent", "C-long-code", "list-decoding"
    p: int
    m: int
    n: int  # length of the code actually used (sn for the long code)
    r: int
    s: int
    k: int
    t: int
    work_factor_log2: float
    security_bits: float
    key_size_bits: int
    code_rate: float
    solution_space_log2: float | None = None

    @property
    def doom_applies(self) -> bool:
        return doom_gain_applies(self.work_factor_log2, self.s)


def security_report(method: str, p: int, m: int, n: int, r: int, s: int,
                    k: int | None = None, t: int | None = None,
                    key_rounding: str = "ceil") -> SecurityReport:
    """Evaluate one parameter set.

    ``n`` is the base length; for the long code the report uses ``s*n``.
    ``k`` defaults to the bound ``n - r m``. ``t`` is required only for the
    list-decoding rows, where it is the Johnson radius.
    """
    if k is None:
        k = n - r * m
    if method == "A-interleaved":
        t = irs_radius(s, r)
        wf = security_bits_method_a(p, n, k, t)
        sec = wf
        sol = mk_solution_space_log2(p, m, t, s, n) if s <= t else None
        return SecurityReport(method, p, m, n, r, s, k, t, wf, sec,
                              key_size_bits(p, n, k, key_rounding), k / n, sol)
    if method == "B-independent":
        t = unique_radius(p, r)
        sec = security_bits_method_b(p, n, k, r, s)
        return SecurityReport(method, p, m, n, r, s, k, t, sec, sec,
                              key_size_bits(p, n, k, key_rounding), k / n)
    if method == "C-long-code":
        N = s * n
        t = unique_radius(p, r)
        sec = security_bits_method_c(p, s, n, r, k)
        return SecurityReport(method, p, m, N, r, s, k, t, sec, sec,
                              key_size_bits(p, N, k, key_rounding), k / N)
    if method == "list-decoding":
        if t is None:
            t = johnson_radius(n, r)
        sec = _log2_log2(p) + ball_collision_log2(n, k, t)
        return SecurityReport(method, p, m, n, r, s, k, t, sec, sec,
                              key_size_bits(p, n, k, key_rounding), k / n)
    raise ValueError(f"unknown method {method!r}")


# -- Metzner-Kapturowski attack ---------------------------------------------

@dataclass(frozen=True)
class AttackResult:
    recovered_plaintexts: np.ndarray  # s x k
    recovered_support: tuple[int, ...]
    recovered_error: np.ndarray  # s x n
    elapsed: float
    rank: int
    parity_shape: tuple[int, int]


def support_from_syndromes(H: np.ndarray, Ssyn: np.ndarray, p: int) -> tuple[list[int], int]:
    """Columns of H lying in the column space of the syndrome matrix, and its rank.

    Uses the left kernel Q of the syndromes: ``h_j`` is in the span iff
    ``Q h_j = 0``, which is the same as ``rank([S' | h_j]) = rank(S')``.
    """
    rho = rank_mod(Ssyn, p)
    if rho == 0:
        return [], 0
    Q = left_kernel(Ssyn, p)
    if Q.shape[0] == 0:
        return list(range(H.shape[1])), rho
    hit = ~matmul_mod(Q, H, p).any(axis=0)
    return [int(j) for j in np.nonzero(hit)[0]], rho


def support_by_rank(H: np.ndarray, Ssyn: np.ndarray, p: int) -> list[int]:
    """Column-by-column rank comparison; slow reference for ``support_from_syndromes``."""
    rho = rank_mod(Ssyn, p)
    return [j for j in range(H.shape[1]) if rank_mod(np.hstack([Ssyn, H[:, [j]]]), p) == rho]


def mk_attack(pk, ct, t: int | None = None) -> AttackResult:
    """Recover all plaintexts from the public key and one ciphertext block.

    Raises AttackFailed when the identified columns do not explain the
    syndromes, which is the expected outcome when s < t.
    """
    start = time.perf_counter()
    p = pk.p
    G = np.asarray(pk.G_pub, dtype=np.int64)
    C = np.atleast_2d(np.asarray(ct.rows, dtype=np.int64))
    if C.shape[1] != G.shape[1]:
        raise ValueError(f"ciphertext length {C.shape[1]} != code length {G.shape[1]}")
    t = pk.t if t is None else t
    H = right_kernel(G, p)
    Ssyn = matmul_mod(H, C.T, p)
    J, rho = support_from_syndromes(H, Ssyn, p)
    if len(J) > H.shape[0]:
        raise AttackFailed(f"{len(J)} candidate positions exceed the {H.shape[0]} parity checks "
                           f"(rank {rho}, t={t})", rho, t, len(J))
    try:
        E = solve_erasures(H, p, C, J)
        M = solve_left_mod(G, (C - E) % p, p)
    except (InconsistentSystem, AmbiguousSystem) as exc:
        raise AttackFailed(str(exc), rho, t, len(J)) from exc
    support = tuple(int(j) for j in np.nonzero(E.any(axis=0))[0])
    return AttackResult(M, support, E, time.perf_counter() - start, rho, H.shape)
