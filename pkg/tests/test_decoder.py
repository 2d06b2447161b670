import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from igc.cryptosystem import sample_burst_error
from igc.decoder import (BurstError, DecodingFailure, decode_interleaved, erasure_decode, irs_radius,
                         joint_key_equation, key_equation_candidates, rs_syndromes, _stacked_hankel)
from igc.fields import Poly
from igc.goppa import build_goppa, is_codeword
from igc.linalg import rank_fq, rank_mod, right_kernel_fq
from igc.simulate import min_burst_by_codewords, min_burst_by_supports


def test_radius_examples():
    assert irs_radius(2, 54) == 36
    assert irs_radius(7, 54) == 47
    assert irs_radius(1, 54) == 27
    assert irs_radius(3, 54) == 40
    assert irs_radius(20, 58) == 55
    for r in range(2, 40):
        assert irs_radius(r - 1, r) == r - 1


@given(st.integers(1, 200), st.integers(1, 300))
def test_radius_monotone_and_bounded(s, r):
    assert irs_radius(s, r) <= irs_radius(s + 1, r)
    assert irs_radius(s, r) <= r - 1 or r == 1
    assert irs_radius(s, r) == (s * r) // (s + 1)


def test_syndromes_of_codewords_and_zero(mid_code):
    code = mid_code
    assert not rs_syndromes(np.zeros((3, code.n), dtype=np.int64), code).any()
    assert not rs_syndromes(code.G_fp[:4], code).any()


def test_single_error_syndrome_formula(small_code):
    code = small_code
    F = code.field
    i, v = 5, 2
    Y = np.zeros((2, code.n), dtype=np.int64)
    Y[1, i] = v
    S = rs_syndromes(Y, code)
    a = int(code.locators[i])
    nu = F.inv(code.g(a))
    for j in range(code.r):
        assert S[1, j] == F.mul(v, F.mul(F.pow(a, j), nu))
    assert not S[0].any()
    # the F_q path agrees with the subfield path
    assert np.array_equal(F.matmul(Y, code.H_fq.T), S)


def test_single_common_error_locator(small_code):
    code = small_code
    F = code.field
    Y = np.zeros((2, code.n), dtype=np.int64)
    Y[:, 7] = [1, 2]
    lam = joint_key_equation(rs_syndromes(Y, code), F, irs_radius(2, code.r))
    assert lam == Poly(F, [F.neg(int(code.locators[7])), 1])
    t, cands = key_equation_candidates(np.zeros((2, code.r), dtype=np.int64), F, 2)
    assert t == 0 and cands == [Poly(F, [1])]


def test_error_free_word_unchanged(mid_code):
    code = mid_code
    rng = np.random.default_rng(0)
    C = code.encode(rng.integers(0, code.p, size=(3, code.k)))
    res = decode_interleaved(C, code, 3)
    assert np.array_equal(res.codewords, C)
    assert res.error.weight == 0


GUARANTEED = [(3, 2, 9, 3), (3, 3, 27, 4), (5, 2, 25, 4), (3, 3, 27, 6), (5, 3, 125, 10)]


@pytest.mark.parametrize("p,m,n,r", GUARANTEED)
def test_guaranteed_regime(p, m, n, r):
    """s = t = r-1 with full-rank bursts always decodes; syndrome rank and kernel are as predicted."""
    rng = np.random.default_rng(r * 31 + n)
    code = build_goppa(p, m, n, r, rng)
    s = t = r - 1
    assert irs_radius(s, r) == t
    F = code.field
    for _ in range(60):
        burst = sample_burst_error(s, t, p, n, rng)
        E = burst.expand(n)
        C = code.encode(rng.integers(0, p, size=(s, code.k)))
        Y = (C + E) % p
        S = rs_syndromes(E, code)
        assert rank_fq(F, S) == t
        assert right_kernel_fq(F, _stacked_hankel(rs_syndromes(Y, code), t)).shape[0] == 1
        res = decode_interleaved(Y, code, s)
        assert np.array_equal(res.codewords, C)
        assert res.error.support == burst.support
        assert np.array_equal(res.error.values, burst.values)


def test_success_implies_membership_beyond_radius(small_code):
    code = small_code
    rng = np.random.default_rng(3)
    outcomes = {"ok": 0, "fail": 0}
    for _ in range(200):
        t = int(rng.integers(3, 7))
        E = sample_burst_error(2, t, code.p, code.n, rng).expand(code.n)
        Y = (code.encode(rng.integers(0, 3, size=(2, code.k))) + E) % 3
        try:
            res = decode_interleaved(Y, code, 2, t_max=code.r - 1)
        except DecodingFailure:
            outcomes["fail"] += 1
            continue
        outcomes["ok"] += 1
        assert all(is_codeword(row, code) for row in res.codewords)
        assert np.array_equal((res.codewords + res.error.expand(code.n)) % 3, Y)
    assert outcomes["fail"] > 0


def test_erasure_decoding(toy_code):
    code = toy_code
    rng = np.random.default_rng(4)
    c = code.encode(rng.integers(0, 3, size=code.k))
    assert np.array_equal(erasure_decode(c, [], code), c)
    y = c.copy()
    y[[1, 4]] = (y[[1, 4]] + [1, 2]) % 3
    assert np.array_equal(erasure_decode(y, [1, 4], code), c)
    assert np.array_equal(erasure_decode(y, [0, 1, 4], code), c)


def test_d_minus_one_erasures_unique(toy_code):
    """Any r columns of the parity check are independent, so r erasures always resolve."""
    code = toy_code
    rng = np.random.default_rng(5)
    for J in itertools.combinations(range(code.n), code.r):
        assert rank_mod(code.H_fp[:, J], code.p) == code.r
        c = code.encode(rng.integers(0, 3, size=code.k))
        y = c.copy()
        y[list(J)] = rng.integers(0, 3, size=code.r)
        assert np.array_equal(erasure_decode(y, J, code), c)


def test_erasure_failure_is_reported(toy_code):
    code = toy_code
    y = np.zeros(code.n, dtype=np.int64)
    y[0] = 1
    with pytest.raises(DecodingFailure):
        erasure_decode(y, [3], code)


def test_matches_codeword_enumeration_oracle(toy_code):
    """Toy code, s=2, full-rank weight-2 bursts: decoder equals the nearest interleaved codeword."""
    code = toy_code
    rng = np.random.default_rng(6)
    checked = 0
    for _ in range(100):
        burst = sample_burst_error(2, 2, 3, code.n, rng)
        Y = (code.encode(rng.integers(0, 3, size=(2, code.k))) + burst.expand(code.n)) % 3
        oracle = min_burst_by_codewords(Y, code)
        if not oracle.unique:
            continue
        checked += 1
        res = decode_interleaved(Y, code, 2)
        assert res.error.support == oracle.solutions[0].support
        assert np.array_equal(res.error.values, oracle.solutions[0].values)
    assert checked == 100


def test_oracles_agree(toy_code):
    rng = np.random.default_rng(8)
    for _ in range(40):
        t = int(rng.integers(0, 4))
        E = BurstError(tuple(sorted(rng.choice(9, size=t, replace=False).tolist())),
                       rng.integers(1, 3, size=(2, t))).expand(9)
        Y = (toy_code.encode(rng.integers(0, 3, size=(2, toy_code.k))) + E) % 3
        a = min_burst_by_supports(Y, toy_code, 9)
        b = min_burst_by_codewords(Y, toy_code)
        assert a.weight == b.weight
        key = lambda x: (x.support, x.values.tobytes())
        assert sorted(map(key, a.solutions)) == sorted(map(key, b.solutions))
