"""Command-line front end.

Usage:
    mobern bern --max-k 10
    mobern mb --n 6 --max-k 8
    mobern mbn --n 6 --N 2 --k 2 --method auto
    mobern psi --n 6 --k 1 --x 6
    mobern psiprod --n 6 --N 2 --k 1 --poly
    mobern verify --suite all --jobs 4

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .bernoulli import bernoulli
from .moebius_bernoulli import HigherMBRequest, Method, RouteDisagreement, mb_higher, mb_number
from .powersums import Polynomial, psi_poly, psi_products_conv, psi_products_poly
from .verify import SUITES, Bounds, build_properties, erratum_record, run_properties

__all__ = ["main", "encode_value", "decode_value"]

MAX_TABLE_K = 200
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def encode_value(value: Fraction | int | Polynomial) -> dict[str, Any]:
    """JSON encoding: rationals as decimal strings, polynomials ascending."""
    if isinstance(value, Polynomial):
        return {"coeffs": [encode_value(c) for c in value.coeffs]}
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def decode_value(obj: dict[str, Any]) -> Fraction | Polynomial:
    if "coeffs" in obj:
        return Polynomial(decode_value(c) for c in obj["coeffs"])
    return Fraction(int(obj["num"]), int(obj["den"]))


def _csv_cell(value: Any) -> str:
    if isinstance(value, Polynomial):
        return ";".join(_csv_cell(c) for c in value.coeffs)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _record(params: dict[str, Any], value: Any, route: str) -> dict[str, Any]:
    return {"params": params, "value": value, "route": route}


def _emit(records: list[dict[str, Any]], fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        names = list(records[0]["params"]) if records else []
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names + ["route", "value"])
        for rec in records:
            writer.writerow(
                [_csv_cell(rec["params"][name]) for name in names]
                + [rec["route"], _csv_cell(rec["value"])]
            )
        out.write(buf.getvalue())
        return
    doc = [
        {
            "params": {
                name: encode_value(v) if isinstance(v, Fraction) else v
                for name, v in rec["params"].items()
            },
            "value": encode_value(rec["value"]),
            "route": rec["route"],
        }
        for rec in records
    ]
    out.write(json.dumps(doc, indent=2) + "\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _add_global_flags(parser: argparse.ArgumentParser, default: Any) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default=default,
                        help="output format (json for tables; verify defaults to text)")
    parser.add_argument("--jobs", type=_positive, default=default,
                        help="worker processes for verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobern", description="Exact Möbius-Bernoulli numbers and coprime power sums."
    )
    _add_global_flags(parser, argparse.SUPPRESS)
    parser.set_defaults(format=None, jobs=1)
    # global flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bern", parents=[common], help="Bernoulli numbers B_0..B_max_k")
    p.add_argument("--max-k", type=_nonneg, required=True)

    p = sub.add_parser("mb", parents=[common], help="Möbius-Bernoulli numbers M_0(n)..M_max_k(n)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--max-k", type=_nonneg, required=True)

    p = sub.add_parser("mbn", parents=[common], help="higher-order Möbius-Bernoulli numbers M_k^N(n)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--N", type=_positive, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=_nonneg)
    group.add_argument("--max-k", type=_nonneg)
    p.add_argument("--method", choices=[m.value for m in Method], default="auto")

    for name, help_text in (("psi", "power sum Ψ_k(x, n)"), ("psiprod", "sums of products Ψ_k^N(x, n)")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--n", type=_positive, required=True)
        if name == "psiprod":
            p.add_argument("--N", type=_positive, required=True)
        p.add_argument("--k", type=_nonneg, required=True)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--x", type=_rational)
        group.add_argument("--poly", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--max-n", type=_positive)
    p.add_argument("--max-k", type=_positive)
    p.add_argument("--max-N", type=_positive)
    p.add_argument("--order", type=_positive)
    return parser


def _cmd_bern(args, out) -> int:
    if args.max_k > MAX_TABLE_K:
        raise UsageError(f"--max-k is capped at {MAX_TABLE_K}")
    records = [_record({"k": k}, bernoulli(k), "recurrence") for k in range(args.max_k + 1)]
    _emit(records, args.format or "json", out)
    return EXIT_OK


def _cmd_mb(args, out) -> int:
    if args.max_k > MAX_TABLE_K:
        raise UsageError(f"--max-k is capped at {MAX_TABLE_K}")
    records = [
        _record({"n": args.n, "k": k}, mb_number(k, args.n), "closed_form")
        for k in range(args.max_k + 1)
    ]
    _emit(records, args.format or "json", out)
    return EXIT_OK


def _cmd_mbn(args, out) -> int:
    ks = [args.k] if args.k is not None else list(range(args.max_k + 1))
    if max(ks) > MAX_TABLE_K:
        raise UsageError(f"k is capped at {MAX_TABLE_K}")
    try:
        requests = [HigherMBRequest(n=args.n, N=args.N, k=k, method=args.method) for k in ks]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = [
        _record({"n": r.n, "N": r.N, "k": r.k}, mb_higher(r), r.method.value) for r in requests
    ]
    _emit(records, args.format or "json", out)
    return EXIT_OK


def _cmd_psi(args, out) -> int:
    poly = psi_poly(args.k, args.n)
    params: dict[str, Any] = {"n": args.n, "k": args.k}
    if args.poly:
        value: Any = poly
    else:
        params["x"] = args.x
        value = poly(args.x)
    _emit([_record(params, value, "closed_form")], args.format or "json", out)
    return EXIT_OK


def _cmd_psiprod(args, out) -> int:
    if args.n >= 2:
        poly, route = psi_products_poly(args.k, args.N, args.n), "stirling"
    else:
        poly, route = psi_products_conv(args.k, args.N, args.n), "convolution"
    params: dict[str, Any] = {"n": args.n, "N": args.N, "k": args.k}
    if args.poly:
        value: Any = poly
    else:
        params["x"] = args.x
        value = poly(args.x)
    _emit([_record(params, value, route)], args.format or "json", out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    try:
        bounds = Bounds(max_n=args.max_n, max_k=args.max_k, max_N=args.max_N, order=args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    props = build_properties(args.suite, bounds)
    outcomes = run_properties(props, jobs=args.jobs)
    erratum = erratum_record() if args.suite in ("all", "mb") else None
    failures = [
        {"property": o.name, "suite": o.suite, "failed_cells": o.failures, **o.counterexample}
        for o in outcomes
        if not o.passed
    ]

    if args.format == "json":
        doc: dict[str, Any] = {
            "properties": [
                {"name": o.name, "suite": o.suite, "cells": o.cells, "passed": o.passed}
                for o in outcomes
            ],
            "failures": failures,
        }
        if erratum:
            doc["erratum"] = {k: _csv_cell(v) for k, v in erratum.items()}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for o in outcomes:
            status = "PASS" if o.passed else "FAIL"
            out.write(f"{status} {o.suite}.{o.name} ({o.cells} cells)\n")
        if erratum:
            out.write(
                "ERRATUM M_2^2(6) documented discrepancy: "
                f"generating-function value {erratum['generating_function_value']}, "
                f"printed-table convention value {erratum['table_convention_value']} "
                f"(table uses phi(n)^(N-1) where the generating function gives (phi(n)/n)^(N-1))\n"
            )
        passed = sum(o.passed for o in outcomes)
        out.write(f"{passed}/{len(outcomes)} properties passed\n")
        if failures:
            out.write("FAILURE REPORT " + json.dumps({"failures": failures}, sort_keys=True) + "\n")
    return EXIT_FAIL if failures else EXIT_OK


COMMANDS = {
    "bern": _cmd_bern,
    "mb": _cmd_mb,
    "mbn": _cmd_mbn,
    "psi": _cmd_psi,
    "psiprod": _cmd_psiprod,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"mobern: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RouteDisagreement as exc:
        print(f"mobern: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
