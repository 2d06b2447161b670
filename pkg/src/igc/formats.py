"""Line-oriented, version-tagged text formats for keys, ciphertexts and messages.

Public key::

    IGC-PUB v1
    p m n k s t
    <k lines of n symbols>

Private key::

    IGC-PRIV v1
    p m n k r s
    <m+1 modulus coefficients over F_p>
    <r+1 coefficients of g, each an F_q coordinate tuple "c0,c1,...">
    <n locators as coordinate tuples>
    <n permutation indices>
    <k lines of k entries of S>

Ciphertext::

    IGC-CT v1
    p n s
    <s lines of n symbols>

All integers are decimal and whitespace separated.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .cryptosystem import Ciphertext, PrivateKey, PublicKey
from .decoder import irs_radius
from .fields import ExtensionField, Poly
from .goppa import InvalidParameters, code_from_support
from .linalg import SingularMatrix, inverse_mod


class MalformedInput(ValueError):
    pass


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def _tuple(F: ExtensionField, a: int) -> str:
    return ",".join(str(c) for c in F.coords(int(a)))


def dump_public_key(pk: PublicKey) -> str:
    lines = ["IGC-PUB v1", _row([pk.p, pk.m, pk.n, pk.k, pk.s, pk.t])]
    lines += [_row(row) for row in pk.G_pub]
    return "\n".join(lines) + "\n"


def dump_private_key(sk: PrivateKey) -> str:
    code = sk.code
    F = code.field
    lines = [
        "IGC-PRIV v1",
        _row([code.p, code.m, code.n, code.k, code.r, sk.s]),
        _row(F.modulus),
        " ".join(_tuple(F, c) for c in code.g.coeffs),
        " ".join(_tuple(F, a) for a in code.locators),
        _row(sk.perm),
    ]
    lines += [_row(row) for row in sk.S]
    return "\n".join(lines) + "\n"


def dump_ciphertext(ct: Ciphertext) -> str:
    lines = ["IGC-CT v1", _row([ct.p, ct.n, ct.s])]
    lines += [_row(row) for row in ct.rows]
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str, what: str):
        self.lines = text.splitlines()
        while self.lines and not self.lines[-1].strip():
            self.lines.pop()
        self.pos = 0
        self.what = what

    def fail(self, msg: str, line: int | None = None):
        line = self.pos if line is None else line
        raise MalformedInput(f"{self.what}, line {line}: {msg}")

    def next_tokens(self, count: int | None = None, label: str = "") -> list[str]:
        if self.pos >= len(self.lines):
            self.fail(f"unexpected end of input, expected {label or 'more data'}", self.pos + 1)
        toks = self.lines[self.pos].split()
        self.pos += 1
        if count is not None and len(toks) != count:
            self.fail(f"expected {count} {label or 'values'}, found {len(toks)}")
        return toks

    def ints(self, count: int | None = None, label: str = "", lo: int | None = None,
             hi: int | None = None) -> list[int]:
        toks = self.next_tokens(count, label)
        out = []
        for col, tok in enumerate(toks, start=1):
            try:
                v = int(tok, 10)
            except ValueError:
                self.fail(f"token {col} {tok!r} is not a decimal integer")
            if (lo is not None and v < lo) or (hi is not None and v >= hi):
                self.fail(f"token {col} value {v} outside [{lo}, {hi})")
            out.append(v)
        return out

    def header(self, tag: str):
        toks = self.next_tokens(label="header")
        if toks != tag.split():
            self.fail(f"expected header {tag!r}")

    def end(self):
        if self.pos != len(self.lines):
            self.fail("trailing data", self.pos + 1)

    def matrix(self, rows: int, cols: int, p: int, label: str) -> np.ndarray:
        return np.array([self.ints(cols, label, 0, p) for _ in range(rows)], dtype=np.int64).reshape(rows, cols)


def parse_public_key(text: str) -> PublicKey:
    rd = _Reader(text, "public key")
    rd.header("IGC-PUB v1")
    p, m, n, k, s, t = rd.ints(6, "header fields", 0)
    if p < 2 or k < 1 or k > n or s < 1:
        rd.fail("inconsistent header parameters")
    G = rd.matrix(k, n, p, "symbols")
    rd.end()
    return PublicKey(G, t, s, p, m)


def parse_ciphertext(text: str) -> Ciphertext:
    rd = _Reader(text, "ciphertext")
    rd.header("IGC-CT v1")
    p, n, s = rd.ints(3, "header fields", 0)
    if p < 2 or s < 1 or n < 1:
        rd.fail("inconsistent header parameters")
    C = rd.matrix(s, n, p, "symbols")
    rd.end()
    return Ciphertext(C, p)


def parse_private_key(text: str) -> PrivateKey:
    rd = _Reader(text, "private key")
    rd.header("IGC-PRIV v1")
    p, m, n, k, r, s = rd.ints(6, "header fields", 0)
    if p < 2 or m < 1 or r < 1 or s < 1 or k < 1:
        rd.fail("inconsistent header parameters")
    modulus = rd.ints(m + 1, "modulus coefficients", 0, p)
    try:
        F = ExtensionField(p, m, modulus)
    except ValueError as exc:
        rd.fail(str(exc))

    def tuples(count, label):
        toks = rd.next_tokens(count, label)
        out = []
        for col, tok in enumerate(toks, start=1):
            parts = tok.split(",")
            if len(parts) != m or not all(x.isdigit() and int(x) < p for x in parts):
                rd.fail(f"token {col} {tok!r} is not an F_q coordinate tuple")
            out.append(F.from_coords(int(x) for x in parts))
        return out

    g = Poly(F, tuples(r + 1, "Goppa polynomial coefficients"))
    locators = tuples(n, "locators")
    line = rd.pos + 1
    perm = np.array(rd.ints(n, "permutation indices", 0, n), dtype=np.int64)
    if len(set(perm.tolist())) != n:
        rd.fail("permutation is not a bijection", line)
    S = rd.matrix(k, k, p, "entries of S")
    rd.end()
    try:
        code = code_from_support(F, locators, g)
    except InvalidParameters as exc:
        raise MalformedInput(f"private key: {exc}") from exc
    if code.k != k:
        raise MalformedInput(f"private key: code dimension {code.k} != header k={k}")
    try:
        S_inv = inverse_mod(S, p)
    except SingularMatrix as exc:
        raise MalformedInput("private key: S is singular") from exc
    return PrivateKey(S, S_inv, perm, code, s)


def parse_message(text: str, p: int, s: int, k: int) -> np.ndarray:
    """A message file holds s*k symbols, split row-major into s plaintexts."""
    toks = text.split()
    if not toks:
        raise MalformedInput("message: empty input")
    if len(toks) != s * k:
        raise MalformedInput(f"message: expected {s * k} symbols, found {len(toks)}")
    out = []
    for i, tok in enumerate(toks, start=1):
        try:
            v = int(tok, 10)
        except ValueError:
            raise MalformedInput(f"message: symbol {i} {tok!r} is not a decimal integer") from None
        if not 0 <= v < p:
            raise MalformedInput(f"message: symbol {i} value {v} outside [0, {p})")
        out.append(v)
    return np.array(out, dtype=np.int64).reshape(s, k)


def dump_message(M: np.ndarray) -> str:
    return "\n".join(_row(row) for row in np.atleast_2d(M)) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a temporary file so a failure never leaves partial output."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


def check_key_pair(pk: PublicKey, sk: PrivateKey) -> bool:
    return pk.t == irs_radius(sk.s, sk.code.r) and pk == sk.public_key()
