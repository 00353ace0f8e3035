"""Command line driver: single cells, sweep tables and verification suites.

TSV output of ``table`` has the header ``a  b  k  computed  expected  match``
(tab separated).  ``expected`` is filled in for Weyl coefficients in degree 2
and for skew coefficients in degrees 1 and 2; otherwise it and ``match`` are
empty.  Exit codes: 0 success, 1 certificate or verification failure, 2 usage
error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .extcalc import CertificateError, ExtQuery, expected_ext2, expected_skew_ext, ext
from .resolution import MatrixCache
from .suites import DEFAULTS, SUITES, run_suite

TSV_COLUMNS = ("a", "b", "k", "computed", "expected", "match")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _primes(text: str) -> tuple:
    try:
        values = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    if not values or any(p < 2 or any(p % q == 0 for q in range(2, p)) for p in values):
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    return values


def _cache(args):
    path = os.environ.get("WEYLEXT_CACHE") or args.cache_dir
    return MatrixCache(path) if path else None


def _expected(a: int, b: int, k: int, degree: int, skew: bool):
    if skew:
        return expected_skew_ext(k, degree) if degree in (1, 2) else None
    return expected_ext2(a, b, k) if degree == 2 else None


def _cell(task):
    a, b, k, degree, skew, cache_dir = task
    cache = MatrixCache(cache_dir) if cache_dir else None
    result = ext(ExtQuery(a, b, k, degree, skew=skew), cache=cache)
    record = result.to_json()
    want = _expected(a, b, k, degree, skew)
    record["computed"] = str(result.group)
    record["expected"] = "" if want is None else str(want)
    record["match"] = "" if want is None else ("true" if want == result.group else "false")
    return record


def cmd_ext(args, parser) -> int:
    if args.k > args.b:
        parser.error(f"k = {args.k} exceeds b = {args.b}")
    try:
        result = ext(ExtQuery(args.a, args.b, args.k, args.degree, skew=args.skew),
                     with_generator=args.generator, cache=_cache(args))
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(result.to_json(), sort_keys=True))
    else:
        print(result.group)
    return 0


def cmd_table(args, parser) -> int:
    if args.amin > args.amax or args.bmin > args.bmax:
        parser.error("empty range")
    cache = _cache(args)
    cache_dir = str(cache.directory) if cache else None
    tasks = []
    for a in range(args.amin, args.amax + 1):
        for b in range(args.bmin, args.bmax + 1):
            for k in range(0, b if args.skew else b + 1):
                tasks.append((a, b, k, args.degree, args.skew, cache_dir))
    start = time.perf_counter()
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_cell, tasks))
        else:
            rows = [_cell(t) for t in tasks]
    except CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True, indent=1))
    else:
        sys.stdout.write("\t".join(TSV_COLUMNS) + "\n")
        for r in rows:
            sys.stdout.write("\t".join(str(r[c]) for c in TSV_COLUMNS) + "\n")
    print(f"table: {len(rows)} cells in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return 0


def cmd_verify(args, parser) -> int:
    names = args.suite or list(SUITES)
    ok = True
    for name in names:
        ranges = DEFAULTS[name]
        if args.amax is not None:
            ranges = replace(ranges, amax=args.amax)
        if args.bmax is not None:
            ranges = replace(ranges, bmax=args.bmax)
        if args.primes is not None:
            ranges = replace(ranges, primes=args.primes)
        if ranges.amin > ranges.amax or ranges.bmin > ranges.bmax:
            parser.error(f"empty range for suite {name}")
        start = time.perf_counter()
        reports = run_suite(name, ranges, args.jobs)
        failed = [r for r in reports if not r.ok]
        status = "FAIL" if failed else "PASS"
        print(f"{status} {name}: {len(reports) - len(failed)}/{len(reports)} checks")
        for r in failed:
            print(str(r))
        if args.verbose:
            for r in reports:
                if r.ok:
                    print(str(r))
        print(f"{name}: {time.perf_counter() - start:.2f}s", file=sys.stderr)
        ok = ok and not failed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--cache-dir", default=None,
                        help="directory for cached differential matrices (WEYLEXT_CACHE overrides)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="weylext", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ext", parents=[common], help="compute one Ext group")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_nonnegative, required=True)
    p.add_argument("--k", type=_nonnegative, required=True)
    p.add_argument("--degree", type=_nonnegative, required=True)
    p.add_argument("--skew", action="store_true",
                   help="use D_{a+k} (x) Lambda^{b-k} as coefficients")
    p.add_argument("--generator", action="store_true",
                   help="also certify a generator of the torsion part")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("table", parents=[common], help="sweep (a, b, k) and compare with closed forms",
                       description="Columns: " + ", ".join(TSV_COLUMNS) + ".")
    p.add_argument("--amin", type=_positive, default=1)
    p.add_argument("--amax", type=_positive, required=True)
    p.add_argument("--bmin", type=_nonnegative, default=2)
    p.add_argument("--bmax", type=_nonnegative, required=True)
    p.add_argument("--degree", type=_nonnegative, required=True)
    p.add_argument("--skew", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="suite to run (repeatable; default all)")
    p.add_argument("--amax", type=_positive, default=None)
    p.add_argument("--bmax", type=_nonnegative, default=None)
    p.add_argument("--primes", type=_primes, default=None, help="comma separated, e.g. 2,3,5")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    return args.func(args, sub)


if __name__ == "__main__":
    sys.exit(main())
