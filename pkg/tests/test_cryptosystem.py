import itertools
import math
import warnings

import numpy as np
import pytest

from conftest import quiet_keygen
from igc.cryptanalysis import key_size_bits
from igc.cryptosystem import (DecryptionFailure, DimensionMismatch, InsecureParameters, decrypt, encrypt,
                              keygen, pack_systematic, sample_burst_error, systematic_form)
from igc.goppa import InvalidParameters
from igc.linalg import matmul_mod, rank_mod


@pytest.fixture(scope="module")
def keys():
    return quiet_keygen(5, 3, 125, 10, 3, np.random.default_rng(21))


def test_key_invariants(keys):
    pk, sk = keys
    p = pk.p
    assert pk.t == 7 and pk.s == 3
    assert rank_mod(pk.G_pub, p) == pk.k
    assert np.array_equal(matmul_mod(sk.S, sk.S_inv, p), np.eye(pk.k, dtype=np.int64))
    assert sorted(sk.perm.tolist()) == list(range(pk.n))
    assert np.array_equal(pk.G_pub, matmul_mod(sk.S, sk.code.G_fp, p)[:, sk.perm])
    # the public code is the permuted secret code
    H = sk.code.H_fp[:, sk.perm]
    assert not matmul_mod(pk.G_pub, H.T, p).any()


def test_rejects_bad_parameters():
    rng = np.random.default_rng(0)
    for bad in [(2, 3, 8, 2, 1), (4, 2, 16, 2, 1), (3, 2, 10, 2, 1), (3, 2, 9, 5, 1), (3, 2, 9, 2, 0)]:
        with pytest.raises(InvalidParameters):
            keygen(*bad, rng)


def test_insecure_warning():
    with pytest.warns(InsecureParameters):
        keygen(3, 2, 9, 3, 2, np.random.default_rng(0))
    with warnings.catch_warnings():
        warnings.simplefilter("error", InsecureParameters)
        keygen(3, 3, 27, 6, 2, np.random.default_rng(0))


def test_singular_rate_for_2x2_no_zero_matrices():
    mats = [np.array(v).reshape(2, 2) for v in itertools.product([1, 2], repeat=4)]
    assert sum(rank_mod(M, 3) < 2 for M in mats) == 8


@pytest.mark.parametrize("s,t,p", [(1, 1, 3), (2, 2, 3), (3, 5, 5), (6, 4, 3), (9, 9, 5)])
def test_burst_sampling(s, t, p):
    rng = np.random.default_rng(s * 10 + t)
    for _ in range(50):
        b = sample_burst_error(s, t, p, 30, rng)
        assert b.values.shape == (s, t)
        assert np.all(b.values != 0)
        assert rank_mod(b.values, p) == min(s, t)
        assert len(set(b.support)) == t and max(b.support) < 30


def test_encrypt_contract(keys):
    pk, _ = keys
    rng = np.random.default_rng(1)
    ct = encrypt(pk, np.zeros((pk.s, pk.k), dtype=np.int64), rng)
    support = np.nonzero(ct.rows.any(axis=0))[0]
    assert len(support) == pk.t
    assert np.all(ct.rows[:, support] != 0)
    M = rng.integers(0, pk.p, size=(pk.s, pk.k))
    ct = encrypt(pk, M, rng)
    E = (ct.rows - matmul_mod(M, pk.G_pub, pk.p)) % pk.p
    assert all((row != 0).sum() == pk.t for row in E)
    assert all(np.array_equal(np.nonzero(row)[0], np.nonzero(E[0])[0]) for row in E)


def test_dimension_mismatch(keys):
    pk, sk = keys
    rng = np.random.default_rng(2)
    with pytest.raises(DimensionMismatch):
        encrypt(pk, np.zeros((pk.s - 1, pk.k), dtype=np.int64), rng)
    with pytest.raises(DimensionMismatch):
        encrypt(pk, np.zeros((pk.s, pk.k + 1), dtype=np.int64), rng)
    with pytest.raises(DimensionMismatch):
        encrypt(pk, np.full((pk.s, pk.k), pk.p), rng)


def test_round_trip(keys):
    pk, sk = keys
    rng = np.random.default_rng(3)
    ok = 0
    for _ in range(100):
        M = rng.integers(0, pk.p, size=(pk.s, pk.k))
        try:
            ok += np.array_equal(decrypt(sk, encrypt(pk, M, rng)), M)
        except DecryptionFailure:
            pass
    assert ok >= 95


def test_tampering_is_detected_or_harmless(keys):
    pk, sk = keys
    rng = np.random.default_rng(4)
    for _ in range(30):
        M = rng.integers(0, pk.p, size=(pk.s, pk.k))
        ct = encrypt(pk, M, rng)
        extra = rng.choice(pk.n, size=pk.t + 2, replace=False)
        ct.rows[:, extra] = (ct.rows[:, extra] + rng.integers(1, pk.p, size=(pk.s, len(extra)))) % pk.p
        try:
            out = decrypt(sk, ct)
        except DecryptionFailure:
            continue
        # any output must re-encrypt to a word within burst distance t of the ciphertext
        diff = (ct.rows - matmul_mod(out, pk.G_pub, pk.p)) % pk.p
        assert diff.any(axis=0).sum() <= pk.t


def test_guaranteed_regime_round_trip():
    rng = np.random.default_rng(5)
    pk, sk = quiet_keygen(3, 2, 9, 3, 2, rng)
    for _ in range(200):
        M = rng.integers(0, 3, size=(2, pk.k))
        assert np.array_equal(decrypt(sk, encrypt(pk, M, rng)), M)


@pytest.mark.parametrize("p,m,n,r,s", [(3, 2, 9, 3, 2), (5, 3, 125, 10, 3), (11, 2, 121, 6, 2)])
def test_key_size_from_generated_keys(p, m, n, r, s):
    pk, _ = quiet_keygen(p, m, n, r, s, np.random.default_rng(6))
    A, pivots = systematic_form(pk)
    assert A.shape == (pk.k, pk.n - pk.k)
    data, bits = pack_systematic(pk)
    X = (pk.n - pk.k) * pk.k
    assert bits == (p**X - 1).bit_length() == key_size_bits(p, pk.n, pk.k) == pk.size_bits()
    assert bits == math.ceil(X * math.log2(p))
    assert len(data) == (bits + 7) // 8
    # systematic generator spans the public code
    G_sys = np.zeros_like(pk.G_pub)
    G_sys[:, pivots] = np.eye(pk.k, dtype=np.int64)
    G_sys[:, [j for j in range(pk.n) if j not in set(pivots)]] = A
    assert rank_mod(np.vstack([G_sys, pk.G_pub]), p) == pk.k
    # the packed integer unpacks to A
    value = int.from_bytes(data, "little")
    digits = []
    for _ in range(X):
        value, d = divmod(value, p)
        digits.append(d)
    assert np.array_equal(np.array(digits).reshape(A.shape), A)
