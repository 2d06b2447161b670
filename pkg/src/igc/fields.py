"""Prime fields, extension fields F_{p^m} and univariate polynomials over them.

Extension-field elements are encoded as integers ``sum(c_i * p**i)`` where
``c_0 .. c_{m-1}`` are the polynomial-basis coordinates modulo the field
modulus.  The encoding is canonical, so equality of elements is integer
equality, and the codes ``0 .. p-1`` are exactly the embedded prime field.
Multiplication goes through exp/log tables and addition through Zech
logarithms, both scalar and numpy-vectorized.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """The prime field F_p with elements ``0 .. p-1``."""

    m = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    # vectorized counterparts, used by the polynomial helpers
    def vadd(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % self.p

    def vsub(self, a, b):
        return (np.asarray(a) - np.asarray(b)) % self.p

    def vmul(self, a, b):
        return (np.asarray(a) * np.asarray(b)) % self.p

    def vneg(self, a):
        return (-np.asarray(a)) % self.p

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        out = np.ones_like(a)
        base = a % self.p
        while e:
            if e & 1:
                out = (out * base) % self.p
            base = (base * base) % self.p
            e >>= 1
        return out

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a % self.p == 0):
            raise DivisionByZero("inverse of zero")
        return self.vpow(a, self.p - 2)

    def vsum(self, a, axis=None):
        return np.asarray(a).sum(axis=axis) % self.p


def _raw_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Multiply coordinate vectors modulo a monic modulus over F_p (table-free)."""
    m = len(modulus) - 1
    prod = [0] * (2 * m - 1 if m else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for top in range(len(prod) - 1, m - 1, -1):
        c = prod[top]
        if c:
            for j in range(m + 1):
                prod[top - m + j] = (prod[top - m + j] - c * modulus[j]) % p
    return prod[:m] + [0] * (m - len(prod[:m]))


class ExtensionField:
    """F_{p^m} in polynomial basis over a monic irreducible modulus.

    ``modulus`` is a coefficient list over F_p, lowest degree first.  When it
    is omitted the lexicographically first primitive polynomial is used.
    """

    def __init__(self, base: PrimeField | int, m: int, modulus: Sequence[int] | None = None):
        if isinstance(base, int):
            base = PrimeField(base)
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.p = p = base.p
        self.m = m
        self.order = q = p**m
        if modulus is None:
            modulus = _first_primitive_modulus(base, m)
        modulus = [int(c) % p for c in modulus]
        while len(modulus) > 1 and modulus[-1] == 0:
            modulus.pop()
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(Poly(base, modulus)):
            raise ValueError(f"modulus {modulus} is not irreducible over F_{p}")
        self.modulus = tuple(modulus)
        self._build_tables()

    def __repr__(self):
        return f"ExtensionField(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("F", self.p, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    def _build_tables(self):
        p, m, q = self.p, self.m, self.order
        self.weights = p ** np.arange(m, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = (codes[:, None] // self.weights[None, :]) % p
        self.neg_table = ((p - self.digits) % p) @ self.weights

        gen = self._find_generator()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        cur = [1] + [0] * (m - 1)
        gen_coords = self.coords(gen)
        mod = list(self.modulus)
        for i in range(q - 1):
            exp[i] = self.from_coords(cur)
            if gen == p and m > 1:
                # multiply by x: shift and reduce
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c - top * mc) % p for c, mc in zip(cur, mod)]
            else:
                cur = _raw_mulmod(cur, gen_coords, mod, p)
        exp[q - 1:] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        if len(set(exp[: q - 1].tolist())) != q - 1:
            raise AssertionError("generator search produced a non-primitive element")
        self.generator = gen
        self.exp_table = exp
        self.log_table = log
        # Zech logarithm: log(1 + g^d); -1 marks 1 + g^d == 0
        powers = exp[: q - 1]
        low = powers % p
        one_plus = powers - low + (low + 1) % p
        self.zech_table = np.where(one_plus == 0, -1, log[one_plus])
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._zech = self.zech_table.tolist()
        self._neg = self.neg_table.tolist()

    def _find_generator(self) -> int:
        p, m, q = self.p, self.m, self.order
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        mod = list(self.modulus)

        def raw_pow(coords, e):
            result = [1] + [0] * (m - 1)
            base = list(coords)
            while e:
                if e & 1:
                    result = _raw_mulmod(result, base, mod, p)
                base = _raw_mulmod(base, base, mod, p)
                e >>= 1
            return result

        one = [1] + [0] * (m - 1)
        candidates = [p] + list(range(2, q)) if m > 1 else list(range(2, q))
        for g in candidates:
            c = self.coords(g)
            if all(raw_pow(c, (q - 1) // f) != one for f in factors):
                return g
        raise AssertionError("no primitive element found")

    # -- element conversion -------------------------------------------------
    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coords(self, coords: Iterable[int]) -> int:
        code, w = 0, 1
        for c in coords:
            code += (int(c) % self.p) * w
            w *= self.p
        return code

    def elements(self) -> range:
        return range(self.order)

    def in_subfield(self, a) -> bool:
        return bool(np.all(np.asarray(a) < self.p))

    # -- scalar arithmetic --------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    # -- vectorized arithmetic ---------------------------------------------
    def vmul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        la = self.log_table[a]
        z = self.zech_table[(self.log_table[b] - la) % (self.order - 1)]
        out = np.where(z < 0, 0, self.exp_table[la + np.maximum(z, 0)])
        return np.where(a == 0, b, np.where(b == 0, a, out))

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp_table[(self.order - 1 - self.log_table[a]) % (self.order - 1)]

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        out = self.exp_table[(self.log_table[a] * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vsum(self, a, axis=None):
        """Field sum along ``axis`` (coordinate-wise integer sum mod p)."""
        d = self.digits[np.asarray(a, dtype=np.int64)]
        if axis is None:
            s = d.reshape(-1, self.m).sum(axis=0)
        else:
            axis = axis % np.ndim(a)
            s = d.sum(axis=axis)
        return (s % self.p) @ self.weights

    def vscale(self, a, c):
        """Multiply F_q elements by F_p scalars (coordinate scaling)."""
        d = self.digits[np.asarray(a, dtype=np.int64)]
        return ((d * np.asarray(c, dtype=np.int64)[..., None]) % self.p) @ self.weights

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        return self.vsum(self.vmul(A[:, :, None], B[None, :, :]), axis=1)

    def expand(self, a):
        """Coordinates of each element, shape ``a.shape + (m,)``."""
        return self.digits[np.asarray(a, dtype=np.int64)]


def _first_primitive_modulus(base: PrimeField, m: int) -> list[int]:
    p = base.p
    if m == 1:
        return [0, 1]
    q = p**m
    factors = _prime_factors(q - 1)
    x = [0, 1] + [0] * (m - 2)
    one = [1] + [0] * (m - 1)
    for idx in range(p**m):
        low = [(idx // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        mod = low + [1]
        if not is_irreducible(Poly(base, mod)):
            continue

        def raw_pow(e):
            result, b = list(one), list(x)
            while e:
                if e & 1:
                    result = _raw_mulmod(result, b, mod, p)
                b = _raw_mulmod(b, b, mod, p)
                e >>= 1
            return result

        if all(raw_pow((q - 1) // f) != one for f in factors):
            return mod
    raise AssertionError("no primitive polynomial found")


Field = PrimeField | ExtensionField


class Poly:
    """Univariate polynomial over a field, coefficients lowest degree first.

    Instances are immutable and kept in canonical form (no trailing zeros;
    the zero polynomial has an empty coefficient tuple).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c: int) -> Poly:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[int]) -> Poly:
        out = cls(field, [1])
        for a in roots:
            out = out * cls(field, [field.neg(a), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F.add(out[i], v)
        return Poly(F, out)

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(v) for v in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        F = self.field
        if isinstance(other, int):
            return Poly(F, [F.mul(v, other) for v in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        F = self.field
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Poly(F), self
        inv_lead = F.inv(other.lead())
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for top in range(len(rem) - 1, db - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            f = F.mul(c, inv_lead)
            quot[top - db] = f
            shift = top - db
            for j in range(db + 1):
                if bc[j]:
                    rem[shift + j] = F.sub(rem[shift + j], F.mul(f, bc[j]))
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_many(self, xs) -> np.ndarray:
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = F.vadd(F.vmul(acc, xs), c)
        return acc

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead())

    def derivative(self) -> Poly:
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(F.mul(c, i % F.characteristic))
        return Poly(F, out)

    def powmod(self, e: int, mod: Poly) -> Poly:
        result = Poly(self.field, [1]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_egcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, u, v)`` with ``u*a + v*b = d`` and ``d`` monic."""
    F = a.field
    r0, r1 = a, b
    u0, u1 = Poly(F, [1]), Poly(F)
    v0, v1 = Poly(F), Poly(F, [1])
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - qt * u1
        v0, v1 = v1, v0 - qt * v1
    if r0.is_zero():
        return r0, u0, v0
    s = F.inv(r0.lead())
    return r0 * s, u0 * s, v0 * s


def poly_inverse_mod(a: Poly, mod: Poly) -> Poly:
    d, u, _ = poly_egcd(a % mod, mod)
    if d.coeffs != (1,):
        raise DivisionByZero(f"{a} is not invertible modulo {mod}")
    return u % mod


class _FastModulus:
    """Vectorized multiplication modulo a fixed monic polynomial over F_q."""

    def __init__(self, f: Poly):
        F = self.field = f.field
        self.f = f
        r = self.r = f.degree
        # rows: x^(r+j) mod f for j = 0 .. r-2
        red = np.zeros((max(r - 1, 1), r), dtype=np.int64)
        cur = np.array([F.neg(c) for c in f.coeffs[:r]], dtype=np.int64)  # x^r mod f
        for j in range(r - 1):
            red[j] = cur
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            if top:
                cur = F.vadd(cur, F.vmul(top, red[0]))
        self.red = red

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F, r = self.field, self.r
        prod = F.vmul(a[:, None], b[None, :])
        d = F.digits[prod]
        acc = np.zeros((2 * r - 1, F.m), dtype=np.int64)
        idx = np.add.outer(np.arange(r), np.arange(r)).ravel()
        np.add.at(acc, idx, d.reshape(-1, F.m))
        full = (acc % F.p) @ F.weights
        low, high = full[:r], full[r:]
        if r > 1 and np.any(high):
            low = F.vadd(low, F.vsum(F.vmul(high[:, None], self.red), axis=0))
        return low

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.zeros(self.r, dtype=np.int64)
        result[0] = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test: gcd(x^(q^i) - x, f) == 1 for i = 1 .. deg(f) // 2."""
    F = f.field
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    if f.coeffs[0] == 0:
        return False
    q = F.order
    x = Poly.x(F)
    if isinstance(F, ExtensionField) and n > 8:
        fm = _FastModulus(f)
        h = np.zeros(n, dtype=np.int64)
        h[1] = 1
        for _ in range(n // 2):
            h = fm.pow(h, q)
            if poly_gcd(Poly(F, h.tolist()) - x, f).degree > 0:
                return False
        return True
    h = x
    for _ in range(n // 2):
        h = h.powmod(q, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


def random_irreducible(field: Field, degree: int, rng: np.random.Generator) -> Poly:
    """Rejection-sample a monic irreducible polynomial of the given degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    while True:
        low = rng.integers(0, field.order, size=degree).tolist()
        f = Poly(field, low + [1])
        if is_irreducible(f):
            return f


def poly_roots_in_field(f: Poly, field: Field | None = None) -> set[int]:
    """All roots of ``f`` in its coefficient field, by exhaustive evaluation."""
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    field = field or f.field
    xs = np.arange(field.order, dtype=np.int64)
    vals = f.eval_many(xs)
    return set(xs[vals == 0].tolist())
