"""Irreducible Goppa codes as F_p-subfield subcodes of a GRS code over F_{p^m}."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .fields import ExtensionField, Poly, poly_inverse_mod, random_irreducible
from .linalg import kernel_and_free_columns, rank_mod


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class GrsSupercode:
    """GRS code over F_q with column multipliers ``1/g(alpha_i)``."""

    locators: np.ndarray
    multipliers: np.ndarray
    k_rs: int


@dataclass(frozen=True, eq=False)
class GoppaCode:
    field: ExtensionField
    locators: np.ndarray  # n distinct F_q codes
    g: Poly
    H_fq: np.ndarray  # r x n over F_q
    H_fp: np.ndarray  # rm x n over F_p
    G_fp: np.ndarray  # k x n over F_p
    info_set: tuple[int, ...] = field(default=())

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def n(self) -> int:
        return len(self.locators)

    @property
    def r(self) -> int:
        return self.g.degree

    @property
    def k(self) -> int:
        return self.G_fp.shape[0]

    @property
    def supercode(self) -> GrsSupercode:
        nu = self.field.vinv(self.g.eval_many(self.locators))
        return GrsSupercode(self.locators, nu, self.n - self.r)

    @cached_property
    def syndrome_basis(self) -> np.ndarray:
        """Row i holds the coefficients of ``(x - alpha_i)^{-1} mod g``."""
        F, r = self.field, self.r
        out = np.zeros((self.n, r), dtype=np.int64)
        for i, a in enumerate(self.locators.tolist()):
            inv = poly_inverse_mod(Poly(F, [F.neg(a), 1]), self.g)
            out[i, : len(inv.coeffs)] = inv.coeffs
        return out

    def encode(self, info) -> np.ndarray:
        info = np.asarray(info, dtype=np.int64)
        return (info @ self.G_fp) % self.p


def parity_check_fq(F: ExtensionField, locators: np.ndarray, g: Poly) -> np.ndarray:
    """``H[j, i] = alpha_i^j / g(alpha_i)`` for ``j = 0 .. r-1``."""
    nu = F.vinv(g.eval_many(locators))
    H = np.zeros((g.degree, len(locators)), dtype=np.int64)
    row = nu
    for j in range(g.degree):
        H[j] = row
        row = F.vmul(row, locators)
    return H


def expand_to_subfield(F: ExtensionField, H: np.ndarray) -> np.ndarray:
    """Replace every F_q entry by its m coordinates, stacked as m rows."""
    r, n = H.shape
    d = F.expand(H)  # r x n x m
    return d.transpose(0, 2, 1).reshape(r * F.m, n)


def code_from_support(F: ExtensionField, locators, g: Poly) -> GoppaCode:
    locators = np.asarray(locators, dtype=np.int64)
    if len(set(locators.tolist())) != len(locators):
        raise InvalidParameters("locators must be distinct")
    if np.any(g.eval_many(locators) == 0):
        raise InvalidParameters("g vanishes on a locator")
    H_fq = parity_check_fq(F, locators, g)
    H_fp = expand_to_subfield(F, H_fq)
    G_fp, free = kernel_and_free_columns(H_fp, F.p)
    if G_fp.shape[0] == 0:
        raise InvalidParameters("code has dimension 0")
    # G_fp restricted to the free columns is the identity
    return GoppaCode(F, locators, g, H_fq, H_fp, G_fp, tuple(free))


def build_goppa(p: int, m: int, n: int, r: int, rng: np.random.Generator,
                field: ExtensionField | None = None) -> GoppaCode:
    """Random irreducible Goppa code of length n with a degree-r Goppa polynomial."""
    if r < 2:
        raise InvalidParameters("r must be at least 2")
    if n > p**m:
        raise InvalidParameters(f"n={n} exceeds field size {p**m}")
    if n - m * r < 1:
        raise InvalidParameters(f"n - m*r = {n - m * r} leaves no information symbols")
    F = field or ExtensionField(p, m)
    locators = rng.permutation(F.order)[:n]
    g = random_irreducible(F, r, rng)
    code = code_from_support(F, locators, g)
    assert code.k >= n - m * r
    return code


def goppa_syndrome(e, code: GoppaCode) -> Poly:
    """``sum_i e_i / (x - alpha_i) mod g`` for a word ``e`` over F_p."""
    e = np.asarray(e, dtype=np.int64) % code.p
    F = code.field
    coeffs = F.vsum(F.vscale(code.syndrome_basis, e[:, None]), axis=0)
    return Poly(F, coeffs.tolist())


def is_codeword(c, code: GoppaCode) -> bool:
    return goppa_syndrome(c, code).is_zero()


def is_codeword_hfp(c, code: GoppaCode) -> bool:
    c = np.asarray(c, dtype=np.int64)
    return not np.any((code.H_fp @ c) % code.p)


def dimension_bound(n: int, m: int, r: int) -> int:
    return n - m * r


def check_code(code: GoppaCode) -> None:
    """Assert the structural invariants of a constructed code."""
    p = code.p
    assert not np.any((code.G_fp @ code.H_fp.T) % p)
    assert rank_mod(code.G_fp, p) == code.k
    assert rank_mod(code.G_fp, p) + rank_mod(code.H_fp, p) == code.n
    assert code.k >= code.n - code.m * code.r
