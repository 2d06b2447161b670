"""Command-line interface: key lifecycle, attack demo, failure simulation and table reproduction.

Exit codes: 0 success, 1 usage or input error, 2 decryption (or attack)
failure, 3 table mismatch.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import formats
from .cryptanalysis import (AttackFailed, johnson_radius, mk_attack, mk_solution_space_log2,
                            security_bits_method_a)
from .cryptosystem import (DecryptionFailure, DimensionMismatch, InsecureParameters, decrypt,
                           encrypt, keygen)
from .decoder import irs_radius
from .formats import MalformedInput
from .goppa import InvalidParameters

EXIT_OK, EXIT_USAGE, EXIT_FAILURE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        formats.write_atomic(path, text)


def cmd_keygen(args) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", InsecureParameters)
        pk, sk = keygen(args.p, args.m, args.n, args.r, args.s, np.random.default_rng(args.seed))
    t = pk.t
    for w in caught:
        if issubclass(w.category, InsecureParameters):
            print(f"WARNING: {w.message}", file=sys.stderr)
    if 0 < t - args.s < args.warn_margin:
        print(f"WARNING: t_IRS - s = {t - args.s} < {args.warn_margin}; s is close to the "
              f"radius where the Metzner-Kapturowski attack applies", file=sys.stderr)
    formats.write_atomic(args.out_pub, formats.dump_public_key(pk))
    formats.write_atomic(args.out_priv, formats.dump_private_key(sk))
    sec = security_bits_method_a(args.p, pk.n, pk.k, t)
    print(f"t_IRS: {t}")
    print(f"k: {pk.k} (bound n - rm = {args.n - args.r * args.m})")
    print(f"key size: {pk.size_bits()} bits")
    print(f"security (method A, ball-collision lower bound): {sec:.2f} bits")
    if args.s <= t:
        sol = mk_solution_space_log2(args.p, args.m, t, args.s, args.n)
        print(f"solution-space search: 2^{sol:.1f}")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = formats.parse_public_key(_read(args.pub))
    M = formats.parse_message(_read(args.message), pk.p, pk.s, pk.k)
    ct = encrypt(pk, M, np.random.default_rng(args.seed))
    _emit(args.out, formats.dump_ciphertext(ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = formats.parse_private_key(_read(args.priv))
    ct = formats.parse_ciphertext(_read(args.ct))
    try:
        M = decrypt(sk, ct)
    except DecryptionFailure as exc:
        print(f"FAILURE: decryption failed ({exc})", file=sys.stderr)
        return EXIT_FAILURE
    _emit(args.out, formats.dump_message(M))
    return EXIT_OK


def cmd_attack_mk(args) -> int:
    pk = formats.parse_public_key(_read(args.pub))
    ct = formats.parse_ciphertext(_read(args.ct))
    if ct.n != pk.n or ct.p != pk.p:
        raise DimensionMismatch("ciphertext does not match the public key")
    print(f"public code: n={pk.n} k={pk.k} s={ct.s} t={pk.t}; parity check {pk.n - pk.k} x {pk.n}, "
          f"syndromes {pk.n - pk.k} x {ct.s}")
    try:
        res = mk_attack(pk, ct)
    except AttackFailed as exc:
        print(f"FAILURE: rank of syndromes {exc.rank} vs t={exc.t}; "
              f"{exc.support_size} candidate positions ({exc})")
        return EXIT_FAILURE
    print(f"recovered support ({len(res.recovered_support)}): {' '.join(map(str, res.recovered_support))}")
    print(f"syndrome rank: {res.rank}; elapsed: {res.elapsed:.4f} s")
    _emit(args.out, formats.dump_message(res.recovered_plaintexts))
    return EXIT_OK


def cmd_tables(args) -> int:
    from . import tables

    selected = [args.table] if args.table else [1, 2]
    results = []
    for tb in selected:
        rounding = args.key_rounding
        if rounding == "table":
            rounding = "ceil" if tb == 1 else "floor"
        res = tables.evaluate_table(tb, rounding)
        if args.rows:
            res = [res[i - 1] for i in args.rows if 1 <= i <= len(res)]
        results.append((tb, rounding, res))
    csv_parts = []
    bad, unexpected = [], []
    for tb, rounding, res in results:
        print(f"Table {tb} (key sizes rounded with {rounding})")
        print(tables.to_text(res, rounding))
        csv_parts.append(tables.to_csv(res, rounding))
        bad += tables.all_mismatches(res)
        unexpected += tables.unexpected_mismatches(res, rounding)
    if args.csv:
        header, *rest = csv_parts[0].splitlines(keepends=True)
        body = [header] + rest + [ln for part in csv_parts[1:] for ln in part.splitlines(keepends=True)[1:]]
        _emit(args.csv, "".join(body))
    if args.figure:
        from .plotting import security_vs_key_size

        all_rows = [r for _, _, res in results for r in res]
        security_vs_key_size(all_rows, args.figure)
        print(f"figure written to {args.figure}")
    gate = unexpected if args.allow_errata else bad
    if gate:
        print(f"{len(gate)} mismatching cell(s): {'; '.join(gate)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_simulate_failures(args) -> int:
    from .simulate import oracle_crosscheck, simulate_failures

    st = simulate_failures(args.p, args.m, args.n, args.r, args.s, args.trials, args.seed, args.workers)
    print(f"parameters p={args.p} m={args.m} n={args.n} r={args.r} s={args.s} t_IRS={st.t}")
    print(f"trials: {st.trials}  failures: {st.failures}  wrong plaintexts: {st.miscorrections}")
    print(f"failure rate: {st.rate:.6g}  95% Clopper-Pearson: [{st.ci_low:.6g}, {st.ci_high:.6g}]")
    if args.oracle_sample:
        cmp = oracle_crosscheck(args.p, args.m, args.n, args.r, args.s, args.oracle_sample, args.seed)
        print(f"oracle cross-check: {cmp.trials} trials, {cmp.unique} unique minimal bursts, "
              f"{cmp.agree} agreements, {cmp.decoder_failures} decoder failures, "
              f"{cmp.disagreements} disagreements")
        if cmp.disagreements:
            return EXIT_FAILURE
    return EXIT_OK


def cmd_johnson_radius(args) -> int:
    print(johnson_radius(args.n, args.r))
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="igc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def code_params(sp):
        sp.add_argument("--p", type=int, required=True, help="prime field size")
        sp.add_argument("--m", type=_positive, required=True, help="extension degree")
        sp.add_argument("--n", type=_positive, required=True, help="code length")
        sp.add_argument("--r", type=_positive, required=True, help="Goppa polynomial degree")
        sp.add_argument("--s", type=_positive, required=True, help="interleaving order")

    sp = sub.add_parser("keygen", help="generate a key pair")
    code_params(sp)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out-pub", required=True)
    sp.add_argument("--out-priv", required=True)
    sp.add_argument("--warn-margin", type=int, default=3,
                    help="warn when t_IRS - s is below this (default 3)")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt s*k symbols")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--message", default="-", help="message file, '-' for stdin")
    sp.add_argument("--out", default="-")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt a ciphertext block")
    sp.add_argument("--priv", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("attack-mk", help="Metzner-Kapturowski attack with the public key only")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_attack_mk)

    sp = sub.add_parser("tables", help="recompute the reference parameter tables")
    sp.add_argument("--table", type=int, choices=[1, 2], default=None)
    sp.add_argument("--rows", type=_positive, nargs="+", help="1-based row numbers")
    sp.add_argument("--csv", metavar="FILE", help="also write CSV ('-' for stdout)")
    sp.add_argument("--figure", metavar="PNG", help="write a security vs key size plot")
    sp.add_argument("--key-rounding", choices=["ceil", "floor", "table"], default="ceil",
                    help="rounding of log2(p)(n-k)k; 'table' uses ceil for table 1, floor for table 2")
    sp.add_argument("--allow-errata", action="store_true",
                    help="exit 0 when every mismatch is a registered erratum")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("simulate-failures", help="Monte-Carlo decryption failure rate")
    code_params(sp)
    sp.add_argument("--trials", type=_positive, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--oracle-sample", type=int, default=0,
                    help="cross-check this many trials against the exhaustive decoder")
    sp.set_defaults(func=cmd_simulate_failures)

    sp = sub.add_parser("johnson-radius", help="binary Johnson radius")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(func=cmd_johnson_radius)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, MalformedInput, DimensionMismatch, InvalidParameters) as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
