"""Monte-Carlo decryption-failure measurement and exhaustive decoding oracles."""
from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import beta

from .cryptosystem import DecryptionFailure, decrypt, encrypt, keygen
from .decoder import BurstError
from .goppa import GoppaCode


def clopper_pearson(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Exact two-sided binomial confidence interval."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    alpha = 1.0 - confidence
    lo = 0.0 if failures == 0 else float(beta.ppf(alpha / 2, failures, trials - failures + 1))
    hi = 1.0 if failures == trials else float(beta.ppf(1 - alpha / 2, failures + 1, trials - failures))
    return lo, hi


@dataclass(frozen=True)
class FailureStats:
    params: tuple[int, int, int, int, int]
    t: int
    trials: int
    failures: int
    miscorrections: int  # decryptions that returned a wrong plaintext
    ci_low: float
    ci_high: float

    @property
    def rate(self) -> float:
        return self.failures / self.trials


def _run_trials(params, key_seed: np.random.SeedSequence, trial_seeds) -> list[int]:
    """0 = success, 1 = detected failure, 2 = wrong plaintext."""
    p, m, n, r, s = params
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pk, sk = keygen(p, m, n, r, s, np.random.default_rng(key_seed))
    out = []
    for seed in trial_seeds:
        rng = np.random.default_rng(seed)
        M = rng.integers(0, p, size=(s, pk.k))
        ct = encrypt(pk, M, rng)
        try:
            out.append(0 if np.array_equal(decrypt(sk, ct), M) else 2)
        except DecryptionFailure:
            out.append(1)
    return out


def simulate_failures(p: int, m: int, n: int, r: int, s: int, trials: int, seed: int,
                      workers: int = 1, chunk: int = 250) -> FailureStats:
    """Encrypt/decrypt ``trials`` fresh messages and bursts under one key.

    Every trial draws from its own child of ``SeedSequence(seed)``, so the
    outcome does not depend on ``workers``.
    """
    root = np.random.SeedSequence(seed)
    key_seed, trial_root = root.spawn(2)
    seeds = trial_root.spawn(trials)
    params = (p, m, n, r, s)
    batches = [seeds[i:i + chunk] for i in range(0, trials, chunk)]
    if workers > 1 and len(batches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_trials, [params] * len(batches),
                                  [key_seed] * len(batches), batches))
    else:
        parts = [_run_trials(params, key_seed, b) for b in batches]
    codes = [c for part in parts for c in part]
    fails = sum(1 for c in codes if c == 1)
    wrong = sum(1 for c in codes if c == 2)
    lo, hi = clopper_pearson(fails + wrong, trials)
    return FailureStats(params, s * r // (s + 1), trials, fails, wrong, lo, hi)


# -- exhaustive oracles ------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    weight: int
    solutions: list[BurstError]

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1


def _row_patterns(p: int, w: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=w)), dtype=np.int64).reshape(-1, w)


def min_burst_by_supports(Y, code: GoppaCode, max_weight: int) -> OracleResult | None:
    """Smallest burst explaining Y, by trying every support and every error pattern on it.

    Returns every error matrix of the minimal weight, or None when no burst of
    weight <= max_weight explains Y.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64)) % code.p
    p, H = code.p, code.H_fp
    synd = (H @ Y.T) % p  # rm x s
    if not synd.any():
        return OracleResult(0, [BurstError((), np.zeros((Y.shape[0], 0), dtype=np.int64))])
    s = Y.shape[0]
    packed = synd_keys = None
    if H.shape[0] * np.log2(p) < 62:
        # a syndrome vector packs into one integer
        packed = p ** np.arange(H.shape[0], dtype=np.int64)
        synd_keys = packed @ synd
    for w in range(1, max_weight + 1):
        pats = _row_patterns(p, w)
        found = []
        combos = np.array(list(itertools.combinations(range(code.n), w)), dtype=np.int64)
        step = max(1, 4_000_000 // (H.shape[0] * len(pats)))
        for start in range(0, len(combos), step):
            Js = combos[start:start + step]
            # syndromes of every pattern on every support: rm x supports x patterns
            sub = H[:, Js].reshape(-1, w).astype(np.float64)
            produced = np.rint(sub @ pats.T.astype(np.float64)).astype(np.int64) % p
            produced = produced.reshape(H.shape[0], len(Js), len(pats))
            if packed is not None:
                keys = np.tensordot(packed, produced, axes=(0, 0))
                hits = [keys == sk for sk in synd_keys]
            else:
                hits = [(produced == synd[:, l][:, None, None]).all(axis=0) for l in range(s)]
            ok = np.logical_and.reduce([h.any(axis=1) for h in hits])
            for c in np.nonzero(ok)[0]:
                per_row = [pats[np.nonzero(h[c])[0]] for h in hits]
                for choice in itertools.product(*per_row):
                    V = np.array(choice, dtype=np.int64)
                    if V.any(axis=0).all():  # support is exactly J
                        found.append(BurstError(tuple(int(j) for j in Js[c]), V))
        if found:
            return OracleResult(w, found)
    return None


def all_codewords(code: GoppaCode) -> np.ndarray:
    info = _row_patterns(code.p, code.k)
    return (info @ code.G_fp) % code.p


def min_burst_by_codewords(Y, code: GoppaCode, limit: int = 5_000_000) -> OracleResult:
    """Nearest interleaved codeword in burst weight by enumerating codeword tuples."""
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64)) % code.p
    s = Y.shape[0]
    words = all_codewords(code)
    if len(words) ** s > limit:
        raise ValueError(f"{len(words)}^{s} codeword tuples exceed the enumeration limit")
    bits = 1 << np.arange(code.n, dtype=np.int64)
    masks = [(((Y[l] - words) % code.p != 0) * bits).sum(axis=1) for l in range(s)]
    union = masks[0]
    for mk in masks[1:]:
        union = (union[:, None] | mk[None, :]).ravel()
    weights = np.array([bin(int(u)).count("1") for u in union])
    best = int(weights.min())
    sols = []
    for flat in np.nonzero(weights == best)[0]:
        idx = np.unravel_index(flat, (len(words),) * s)
        E = (Y - words[list(idx)]) % code.p
        support = tuple(int(j) for j in np.nonzero(E.any(axis=0))[0])
        sols.append(BurstError(support, E[:, list(support)]))
    return OracleResult(best, sols)


@dataclass(frozen=True)
class OracleComparison:
    trials: int
    unique: int  # instances whose minimal burst is unique
    agree: int  # decoder output equals the unique oracle answer
    decoder_failures: int
    disagreements: int  # decoder returned something else (must stay 0)


def oracle_crosscheck(p: int, m: int, n: int, r: int, s: int, trials: int, seed: int) -> OracleComparison:
    """Compare the interleaved decoder with the exhaustive minimal-burst decoder."""
    from .cryptosystem import sample_burst_error
    from .decoder import DecodingFailure, decode_interleaved, irs_radius
    from .goppa import build_goppa

    root = np.random.SeedSequence(seed)
    code_seed, trial_root = root.spawn(2)
    code = build_goppa(p, m, n, r, np.random.default_rng(code_seed))
    t = irs_radius(s, r)
    unique = agree = fails = bad = 0
    for child in trial_root.spawn(trials):
        rng = np.random.default_rng(child)
        burst = sample_burst_error(s, t, p, n, rng)
        Y = (rng.integers(0, p, size=(s, code.k)) @ code.G_fp + burst.expand(n)) % p
        oracle = min_burst_by_supports(Y, code, t)
        try:
            got = decode_interleaved(Y, code, s).error
        except DecodingFailure:
            got = None
            fails += 1
        if oracle is not None and oracle.unique:
            unique += 1
            ref = oracle.solutions[0]
            if got is None:
                continue
            if got.support == ref.support and np.array_equal(got.values, ref.values):
                agree += 1
            else:
                bad += 1
        elif got is not None and (oracle is None or not any(
                got.support == x.support and np.array_equal(got.values, x.values)
                for x in oracle.solutions)):
            bad += 1
    return OracleComparison(trials, unique, agree, fails, bad)
