"""Key generation, burst-error encryption and decryption for interleaved Goppa codes."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .cryptanalysis import key_size_bits
from .decoder import BurstError, DecodingFailure, decode_interleaved, irs_radius
from .fields import is_prime
from .goppa import GoppaCode, InvalidParameters, build_goppa
from .linalg import SingularMatrix, inverse_mod, matmul_mod, rank_mod, rref


class InsecureParameters(UserWarning):
    pass


class DimensionMismatch(ValueError):
    pass


class DecryptionFailure(Exception):
    pass


@dataclass(frozen=True, eq=False)
class PublicKey:
    G_pub: np.ndarray
    t: int
    s: int
    p: int
    m: int

    @property
    def k(self) -> int:
        return self.G_pub.shape[0]

    @property
    def n(self) -> int:
        return self.G_pub.shape[1]

    def __eq__(self, other):
        return (isinstance(other, PublicKey)
                and (self.t, self.s, self.p, self.m) == (other.t, other.s, other.p, other.m)
                and np.array_equal(self.G_pub, other.G_pub))

    def size_bits(self) -> int:
        """Storage cost of the systematic generator ``[I_k | A]``."""
        return key_size_bits(self.p, self.n, self.k)


@dataclass(frozen=True, eq=False)
class PrivateKey:
    S: np.ndarray
    S_inv: np.ndarray
    perm: np.ndarray  # G_pub = (S G)[:, perm]
    code: GoppaCode
    s: int

    @property
    def t(self) -> int:
        return irs_radius(self.s, self.code.r)

    def public_key(self) -> PublicKey:
        SG = matmul_mod(self.S, self.code.G_fp, self.code.p)
        return PublicKey(SG[:, self.perm], self.t, self.s, self.code.p, self.code.m)


@dataclass(frozen=True, eq=False)
class Ciphertext:
    rows: np.ndarray  # s x n
    p: int

    @property
    def s(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other):
        return isinstance(other, Ciphertext) and self.p == other.p and np.array_equal(self.rows, other.rows)


def random_invertible(k: int, p: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    while True:
        S = rng.integers(0, p, size=(k, k))
        try:
            return S, inverse_mod(S, p)
        except SingularMatrix:
            continue


def check_parameters(p: int, m: int, n: int, r: int, s: int) -> None:
    if not is_prime(p):
        raise InvalidParameters(f"p={p} must be prime (prime-power base fields are not supported)")
    if p <= 2:
        raise InvalidParameters("binary codes are excluded; use p > 2")
    if n > p**m:
        raise InvalidParameters(f"n={n} exceeds q={p**m}")
    if s < 1:
        raise InvalidParameters("interleaving order s must be >= 1")
    if r < 2:
        raise InvalidParameters("r must be at least 2")
    if n - m * r < 1:
        raise InvalidParameters(f"k >= n - m*r = {n - m * r} must be positive")


def keygen(p: int, m: int, n: int, r: int, s: int,
           rng: np.random.Generator) -> tuple[PublicKey, PrivateKey]:
    check_parameters(p, m, n, r, s)
    t = irs_radius(s, r)
    if s >= t:
        warnings.warn(InsecureParameters(
            f"s={s} >= t_IRS={t}: ciphertexts are decodable by the Metzner-Kapturowski attack"),
            stacklevel=2)
    code = build_goppa(p, m, n, r, rng)
    S, S_inv = random_invertible(code.k, p, rng)
    perm = rng.permutation(n)
    sk = PrivateKey(S, S_inv, perm, code, s)
    return sk.public_key(), sk


def sample_burst_error(s: int, t: int, p: int, n: int, rng: np.random.Generator) -> BurstError:
    """t random columns; s x t values with no zero entry and rank min(s, t)."""
    if t > n:
        raise ValueError("burst weight exceeds length")
    if p < 3 and min(s, t) > 1:
        raise ValueError("full-rank bursts without zeros need p >= 3")
    support = tuple(sorted(int(i) for i in rng.choice(n, size=t, replace=False)))
    while True:
        V = rng.integers(1, p, size=(s, t))
        if t == 0 or rank_mod(V, p) == min(s, t):
            return BurstError(support, V)


def encrypt(pk: PublicKey, plaintexts, rng: np.random.Generator,
            burst: BurstError | None = None) -> Ciphertext:
    M = np.atleast_2d(np.asarray(plaintexts, dtype=np.int64))
    if M.shape != (pk.s, pk.k):
        raise DimensionMismatch(f"plaintext block must be {pk.s} x {pk.k}, got {M.shape[0]} x {M.shape[1]}")
    if M.min(initial=0) < 0 or M.max(initial=0) >= pk.p:
        raise DimensionMismatch(f"plaintext symbols must lie in [0, {pk.p})")
    if burst is None:
        burst = sample_burst_error(pk.s, pk.t, pk.p, pk.n, rng)
    C = (matmul_mod(M, pk.G_pub, pk.p) + burst.expand(pk.n)) % pk.p
    return Ciphertext(C, pk.p)


def decrypt(sk: PrivateKey, ct: Ciphertext) -> np.ndarray:
    code = sk.code
    if ct.rows.shape != (sk.s, code.n):
        raise DimensionMismatch(f"ciphertext must be {sk.s} x {code.n}")
    Y = np.empty_like(ct.rows)
    Y[:, sk.perm] = ct.rows
    try:
        res = decode_interleaved(Y, code, sk.s)
    except DecodingFailure as exc:
        raise DecryptionFailure(str(exc)) from exc
    mS = res.codewords[:, list(code.info_set)]
    return matmul_mod(mS, sk.S_inv, code.p)


def systematic_form(pk: PublicKey) -> tuple[np.ndarray, list[int]]:
    """Redundancy part ``A`` of ``[I_k | A]`` and the information columns."""
    R, pivots = rref(pk.G_pub, pk.p)
    rest = [j for j in range(pk.n) if j not in set(pivots)]
    return R[:, rest], pivots


def pack_systematic(pk: PublicKey) -> tuple[bytes, int]:
    """Pack the (n-k)k redundancy symbols as one base-p integer.

    Returns the byte string and its exact bit length.
    """
    A, _ = systematic_form(pk)
    value = _pack_digits(A.ravel().tolist(), pk.p)
    bits = (pk.p ** A.size - 1).bit_length()
    return value.to_bytes((bits + 7) // 8, "little"), bits


def _pack_digits(digits: list[int], p: int) -> int:
    if len(digits) <= 64:
        value = 0
        for d in reversed(digits):
            value = value * p + d
        return value
    mid = len(digits) // 2
    return _pack_digits(digits[:mid], p) + _pack_digits(digits[mid:], p) * p**mid
