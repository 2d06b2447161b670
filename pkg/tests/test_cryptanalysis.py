import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quiet_keygen
from igc.cryptanalysis import (AttackFailed, NoSolution, ball_collision_argmin, ball_collision_log2,
                               doom_gain_applies, doom_reduced_log2, johnson_radius, key_size_bits,
                               key_size_bits_long, method_c_dimensions, mk_attack, mk_solution_space_log2,
                               security_bits_method_a, security_bits_method_b, security_bits_method_c,
                               security_report, support_by_rank, support_from_syndromes)
from igc.cryptosystem import encrypt
from igc.goppa import InvalidParameters
from igc.linalg import matmul_mod, right_kernel


def bc_mpmath(n, k, t, dps=60):
    """Direct high-precision evaluation of the minimum over every admissible l."""
    with mpmath.workdps(dps):
        best = None
        for l in range(0, min(t, k) + 1):
            if t - l > n - k:
                continue
            v = mpmath.binomial(n, t) / (2 * mpmath.binomial(n - k, t - l) * mpmath.sqrt(mpmath.binomial(k, l)))
            best = v if best is None or v < best else best
        return float(mpmath.log(best, 2))


@pytest.mark.parametrize("n,k,t", [(1876, 1436, 41), (3262, 2482, 66), (2187, 1809, 36), (1331, 1157, 55),
                                   (4374, 163, 351), (100, 90, 20), (50, 10, 45), (30, 30, 5)])
def test_ball_collision_matches_direct_evaluation(n, k, t):
    assert abs(ball_collision_log2(n, k, t) - bc_mpmath(n, k, t)) < 1e-6


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 400).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, n))))
def test_ball_collision_random(nkt):
    n, k, t = nkt
    assert abs(ball_collision_log2(n, k, t) - bc_mpmath(n, k, t)) < 1e-6


def test_ball_collision_examples():
    assert abs(ball_collision_log2(1876, 1436, 41) - 80) <= 1
    assert abs(ball_collision_log2(3262, 2482, 66) - 128) <= 1
    assert ball_collision_log2(100, 50, 0) == -1
    for bad in [(10, 11, 1), (10, 5, 11), (10, -1, 2)]:
        with pytest.raises(InvalidParameters):
            ball_collision_log2(*bad)


def test_argmin_is_a_full_scan_minimum():
    n, k, t = 2187, 1809, 40
    l = ball_collision_argmin(n, k, t)
    with mpmath.workdps(50):
        def term(j):
            return mpmath.log(mpmath.binomial(n, t) / (2 * mpmath.binomial(n - k, t - j)
                                                       * mpmath.sqrt(mpmath.binomial(k, j))), 2)
        assert all(term(l) <= term(j) for j in range(0, t + 1))


def test_method_a_examples():
    assert abs(security_bits_method_a(3, 2187, 1809, 40) - 93) <= 1
    assert abs(security_bits_method_a(11, 1331, 1157, 55) - 129) <= 1
    assert security_bits_method_a(2, 1876, 1436, 41) == ball_collision_log2(1876, 1436, 41)


def test_method_b_examples():
    assert 2 * 54 // 3 == 36
    rep = security_report("B-independent", 3, 7, 2187, 54, 3)
    assert rep.t == 36 and rep.k == 1809
    assert abs(security_bits_method_b(3, 2187, 1809, 54, 3) - 86) <= 1
    diff = security_bits_method_b(3, 2187, 1809, 54, 3) - security_bits_method_b(3, 2187, 1809, 54, 2)
    assert abs(diff - math.log2(1.5)) < 1e-12


def test_method_c_examples():
    assert abs(security_bits_method_c(3, 2, 2187, 21, 4211) - 58) <= 1
    assert abs(security_bits_method_c(3, 3, 2187, 14, 6455) - 45) <= 1


def test_method_c_dimensions():
    assert method_c_dimensions(1083801, 3, 2, 2187) == (163, 4211)
    assert method_c_dimensions(1083801, 3, 3, 2187) == (106, 6455)
    # innermost integers: both have key size >= K, their outer neighbours do not
    for s in (2, 3):
        lo, hi = method_c_dimensions(1083801, 3, s, 2187)
        assert key_size_bits_long(3, s, 2187, lo) >= 1083801 > key_size_bits_long(3, s, 2187, lo - 1)
        assert key_size_bits_long(3, s, 2187, hi) >= 1083801 > key_size_bits_long(3, s, 2187, hi + 1)
    # vertex of the parabola
    with mpmath.workprec(200):
        K = mpmath.log(3, 2) * 2000 * 2000
    assert method_c_dimensions(K, 3, 2, 2000) == (2000, 2000)
    with pytest.raises(NoSolution):
        method_c_dimensions(K * 1.0001, 3, 2, 2000)


def test_doom():
    assert doom_gain_applies(2, 1000)
    assert not doom_gain_applies(4, 1)
    assert not doom_gain_applies(80, 21)
    assert doom_reduced_log2(90) == 60


def test_key_size_examples():
    assert key_size_bits(3, 2187, 1809) == 1083801
    assert key_size_bits(3, 100, 100) == 0
    assert key_size_bits(4, 1024, 814) == 341880
    assert key_size_bits(2, 1876, 1436) == 631840
    assert key_size_bits(11, 1331, 1157, "floor") == 696445
    assert key_size_bits(11, 1331, 1157) == 696446
    for p in (3, 5, 7, 11, 13):
        for n, k in [(9, 3), (25, 13), (40, 21), (64, 30)]:
            X = (n - k) * k
            assert key_size_bits(p, n, k) == (p**X - 1).bit_length()
            assert key_size_bits(p, n, k, "floor") == (p**X).bit_length() - 1


def test_solution_space():
    assert mk_solution_space_log2(3, 7, 40, 40, 2187) == 3 * math.log2(2187)
    assert abs(mk_solution_space_log2(11, 3, 55, 20, 1331) - (3 * math.log2(1331) + 105 * math.log2(11))) < 1e-9
    assert abs(mk_solution_space_log2(11, 3, 55, 20, 1331) - 394.4) < 0.5
    assert abs(mk_solution_space_log2(3, 7, 47, 7, 2187) - 477) < 1
    with pytest.raises(ValueError):
        mk_solution_space_log2(3, 7, 4, 5, 2187)


def test_johnson_radius():
    assert johnson_radius(1876, 40) == 41
    assert johnson_radius(3262, 65) == 66
    assert johnson_radius(7008, 130) == 133
    assert johnson_radius(42, 10) == 21
    rng = np.random.default_rng(0)
    for _ in range(2000):
        n = int(rng.integers(10, 10**6))
        r = int(rng.integers(0, (n - 2) // 4 + 1))
        with mpmath.workdps(50):
            want = int(mpmath.floor(n / mpmath.mpf(2) * (1 - mpmath.sqrt(1 - mpmath.mpf(4 * r + 2) / n))))
        assert johnson_radius(n, r) == want


# -- attack ------------------------------------------------------------------

@pytest.mark.parametrize("params", [(3, 2, 9, 3, 2), (5, 3, 125, 10, 9), (3, 3, 27, 4, 5)])
def test_attack_breaks_s_at_least_t(params):
    rng = np.random.default_rng(sum(params))
    pk, _ = quiet_keygen(*params, rng)
    assert pk.s >= pk.t
    for _ in range(30):
        M = rng.integers(0, pk.p, size=(pk.s, pk.k))
        ct = encrypt(pk, M, rng)
        res = mk_attack(pk, ct)
        assert np.array_equal(res.recovered_plaintexts, M)
        assert res.rank == pk.t
        recon = (matmul_mod(res.recovered_plaintexts, pk.G_pub, pk.p) + res.recovered_error) % pk.p
        assert np.array_equal(recon, ct.rows)


def test_attack_fails_for_single_row():
    rng = np.random.default_rng(9)
    pk, _ = quiet_keygen(5, 3, 125, 10, 1, rng)
    for _ in range(20):
        ct = encrypt(pk, rng.integers(0, 5, size=(1, pk.k)), rng)
        with pytest.raises(AttackFailed) as info:
            mk_attack(pk, ct)
        assert info.value.rank == 1 < info.value.t


def test_support_equals_sampled_support_toy():
    rng = np.random.default_rng(10)
    pk, _ = quiet_keygen(3, 2, 9, 3, 2, rng)
    H = right_kernel(pk.G_pub, 3)
    for i in range(1000):
        M = rng.integers(0, 3, size=(2, pk.k))
        ct = encrypt(pk, M, rng)
        E = (ct.rows - matmul_mod(M, pk.G_pub, 3)) % 3
        true = np.nonzero(E.any(axis=0))[0].tolist()
        Ssyn = matmul_mod(H, ct.rows.T, 3)
        J, rho = support_from_syndromes(H, Ssyn, 3)
        assert J == true and rho == 2
        if i < 100:
            assert support_by_rank(H, Ssyn, 3) == J
