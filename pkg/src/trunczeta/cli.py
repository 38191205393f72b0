"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
Tables go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import closed_forms as cf
from . import dirichlet
from .enumeration import BudgetExceeded, CountRow, CountTable, count_cocyclic, count_subrings, is_prime
from .exact import rf_series
from .verification import SUITES, run_suite
from .volume import local_series_via_cells

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

METHOD_TAGS = {"enum": "enumeration", "cells": "cells", "formula": "formula"}


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {n}")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def local_series(p: int, order: int, cocyclic: bool, method: str) -> list[int]:
    """Counts for exponents ``0..order`` by one of the three methods."""
    if method == "enum":
        count = count_cocyclic if cocyclic else count_subrings
        return [count(p, m) for m in range(order + 1)]
    if method == "cells":
        if cocyclic:
            # no volume rules exist for cocyclic cells; count cell by cell
            return [count_cocyclic(p, m) for m in range(order + 1)]
        return local_series_via_cells(p, order)
    if method == "formula":
        kind = "cocyclic" if cocyclic else "subring"
        return rf_series(dirichlet.local_factor(p, kind), p, order)
    raise UsageError(f"unknown method {method!r}")


def cmd_count(args: argparse.Namespace) -> int:
    if args.method == "enum":
        count = count_cocyclic if args.cocyclic else count_subrings
        value = count(args.prime, args.exponent)
    else:
        value = local_series(args.prime, args.exponent, args.cocyclic, args.method)[-1]
    print(f"{value} (method: {METHOD_TAGS[args.method]})")
    return EXIT_OK


def build_table(p: int, max_exponent: int, method: str) -> CountTable:
    subs = local_series(p, max_exponent, False, method)
    ccs = local_series(p, max_exponent, True, method)
    tag = METHOD_TAGS[method]
    return CountTable(p, [CountRow(m, subs[m], ccs[m], tag) for m in range(max_exponent + 1)])


def table_to_json(table: CountTable) -> str:
    return json.dumps(table.to_dict(), indent=2) + "\n"


def table_to_csv(table: CountTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["prime", "m", "subrings", "cocyclic", "method"])
    for r in table.rows:
        w.writerow([table.prime, r.m, r.subrings, r.cocyclic, r.method])
    return buf.getvalue()


def cmd_table(args: argparse.Namespace) -> int:
    table = build_table(args.prime, args.max_exponent, args.method)
    out = table_to_json(table) if args.format == "json" else table_to_csv(table)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render())
    if not report.ok:
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_zeta(args: argparse.Namespace) -> int:
    p = args.prime
    if args.display:
        if args.which == "subring":
            f = cf.subring_local_factor("two" if p == 2 else "odd")
        else:
            f = cf.cocyclic_local_factor("two" if p == 2 else "odd")
    else:
        f = dirichlet.local_factor(p, args.which)
    print(",".join(str(c) for c in rf_series(f, p, args.terms)))
    return EXIT_OK


def cmd_constants(args: argparse.Namespace) -> int:
    acc = 0 if args.no_accelerate else args.accelerate
    if args.truncation < 3:
        raise UsageError("--truncation must be at least 3")
    if args.which == "C":
        prefactor = dirichlet.C_PREFACTOR if args.variant == "stated" else dirichlet.two_adic_subring_prefactor()
        est = dirichlet.constant_C(args.truncation, acc, prefactor)
    else:
        est = dirichlet.constant_D(args.truncation, acc, args.variant)
    print(f"{args.which} = {est.value:.12g}")
    print(f"tail bound (relative) = {est.tail:.3e}")
    print(f"odd product = {est.odd_product:.12g}")
    print(f"prime bound = {est.prime_bound}, accelerated = {est.accelerated}, variant = {args.variant}")
    return EXIT_OK


def _bounds_up_to(B: int) -> list[int]:
    out, b = [], 10
    while b < B:
        out.append(b)
        b *= 10
    out.append(B)
    return out


def cmd_asymptotics(args: argparse.Namespace) -> int:
    kind = "cocyclic" if args.cocyclic else "subring"
    filt = "odd" if args.odd_only else "all"
    rows = dirichlet.growth_diagnostic(_bounds_up_to(args.bound), kind, filt)
    print("B\ts(B)\ts(B)/B^1.5")
    for B, s, ratio in rows:
        print(f"{B}\t{s}\t{ratio:.6f}")
    if kind == "subring":
        ref = dirichlet.constant_C()
        print(f"# C (stated prefactor) = {ref.value:.6f}")
        alt = dirichlet.constant_C(prefactor=dirichlet.two_adic_subring_prefactor())
        print(f"# C (derived prefactor) = {alt.value:.6f}")
    else:
        print(f"# D = {dirichlet.constant_D().value:.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trunczeta", description="Subring counts and zeta factors of Z[t]/(t^4).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of subrings of index p^m")
    p.add_argument("--prime", type=_prime, required=True)
    p.add_argument("--exponent", type=_nonneg, required=True)
    p.add_argument("--cocyclic", action="store_true")
    p.add_argument("--method", choices=sorted(METHOD_TAGS), default="enum")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="count table for m = 0..M")
    p.add_argument("--prime", type=_prime, required=True)
    p.add_argument("--max-exponent", type=_nonneg, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--method", choices=sorted(METHOD_TAGS), default="enum")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeta", help="local series coefficients")
    p.add_argument("--which", choices=["subring", "cocyclic"], required=True)
    p.add_argument("--prime", type=_prime, required=True)
    p.add_argument("--terms", type=_nonneg, required=True, help="highest exponent printed")
    p.add_argument("--display", action="store_true", help="use the consolidated display instead of the verified form")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("constants", help="asymptotic constants as truncated Euler products")
    p.add_argument("--which", choices=["C", "D"], required=True)
    p.add_argument("--truncation", type=_positive, default=10**4)
    p.add_argument("--accelerate", type=_nonneg, default=12)
    p.add_argument("--no-accelerate", action="store_true")
    p.add_argument("--variant", choices=["stated", "corrected"], default="stated")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("asymptotics", help="s(B)/B^(3/2) growth rows")
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--cocyclic", action="store_true")
    p.add_argument("--odd-only", action="store_true")
    p.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
