"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 term budget refusal, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import coefficients, series
from .evaluator import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    SeriesId,
    convergence_report,
    eval_constant,
    eval_pi,
)
from .exact import fxp_ceil, fxp_to_string

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4

BUDGET_ENV = "BASEL_ACCEL_BUDGET"

TRUNCATION_NOTE = (
    "Digits are truncated, not rounded: the last printed digit can differ from "
    "round-to-nearest output of other tools, but every printed digit is certified."
)


def _int_at_least(least: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
        if value < least:
            raise argparse.ArgumentTypeError(f"must be >= {least}, got {value}")
        return value

    return parse


def _int_list(text: str) -> List[int]:
    parse = _int_at_least(1)
    return [parse(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basel-accel",
        description="Certified digits of pi**2/6 and pi from sum 3/(n**2 C(2n,n)).",
        epilog=TRUNCATION_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="certified digits of pi**2/6", epilog=TRUNCATION_NOTE)
    p.add_argument("--digits", type=_int_at_least(1), required=True)
    p.add_argument("--series", choices=[s.value for s in SeriesId], default=SeriesId.STIRLING.value)
    p.add_argument("--budget", type=_int_at_least(1), help=f"max summed terms (env {BUDGET_ENV})")

    p = sub.add_parser("pi", help="certified digits of pi", epilog=TRUNCATION_NOTE)
    p.add_argument("--digits", type=_int_at_least(1), required=True)

    p = sub.add_parser("verify", help="exact checks of the coefficient derivation")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--coeffs", dest="target", action="store_const", const="coeffs",
                        help="cauchy / recurrence / closed form agreement for v_1..v_max-n")
    target.add_argument("--identity", dest="target", action="store_const", const="identity",
                        help="central binomial identity for n=0..max-n")
    target.add_argument("--ode", dest="target", action="store_const", const="ode",
                        help="differential equation residual of arcsin**2 through --order")
    p.add_argument("--max-n", type=_int_at_least(0))
    p.add_argument("--order", type=_int_at_least(2))

    for name, help_text, default_format in (
        ("compare", "terms needed per digit target for both series", "csv"),
        ("report", "full convergence report", "json"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--digits", type=_int_at_least(1), default=6, help="largest digit target")
        p.add_argument("--format", choices=["json", "csv"], default=default_format)
        p.add_argument("--output", "-o", help="write to this path instead of stdout")
        p.add_argument("--samples", type=_int_list, help="comma-separated N values")
        p.add_argument("--budget", type=_int_at_least(1), help=f"max summed terms (env {BUDGET_ENV})")
    return parser


def _budget(parser: argparse.ArgumentParser, args) -> int:
    if args.budget is not None:
        return args.budget
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        parser.error(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


def _tail_text(tail: Fraction, digits: int) -> str:
    return fxp_to_string(fxp_ceil(tail, digits))


def cmd_digits(args, budget: int, out) -> int:
    try:
        result = eval_constant(args.digits, args.series, budget=budget)
    except BudgetExceeded as exc:
        print(f"refused: {exc}; raise --budget or {BUDGET_ENV} to allow it", file=sys.stderr)
        return EXIT_BUDGET
    print(result.text, file=out)
    print(
        f"# series={result.series} terms={result.terms_used} "
        f"tail_bound<={_tail_text(result.tail_bound, args.digits + 3)}",
        file=out,
    )
    return EXIT_OK


def cmd_pi(args, out) -> int:
    result = eval_pi(args.digits)
    print(result.text, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.target == "coeffs":
        max_n = 200 if args.max_n is None else args.max_n
        for n in range(1, max_n + 1):
            a = coefficients.v_via_cauchy(n)
            b = coefficients.v_via_recurrence(n)
            c = coefficients.v_closed_form(n)
            if not a == b == c:
                print(f"three-way agreement fails at n={n}: cauchy={a} recurrence={b} closed={c}", file=out)
                return EXIT_FAILED
        print(f"three-way agreement holds for n=1..{max_n}", file=out)
        return EXIT_OK
    if args.target == "identity":
        max_n = 200 if args.max_n is None else args.max_n
        for n in range(max_n + 1):
            check = coefficients.verify_identity(n)
            if not check.holds:
                print(f"identity fails at n={n}: left={check.left} right={check.right}", file=out)
                return EXIT_FAILED
        print(f"identity holds for n=0..{max_n}", file=out)
        return EXIT_OK
    order = 64 if args.order is None else args.order
    residual = series.ode_residual(series.f_series(order))
    for k, c in enumerate(residual):
        if c != 0:
            print(f"residual nonzero at degree {k}: {c}", file=out)
            return EXIT_FAILED
    print(f"residual zero through degree {residual.order}", file=out)
    return EXIT_OK


def cmd_compare_report(args, budget: int, out) -> int:
    report = convergence_report(args.digits, args.samples, budget=budget)
    if args.command == "compare":
        if args.format == "csv":
            text = report.summary_csv()
        else:
            text = json.dumps({"summary": report.to_dict()["summary"]}, indent=2) + "\n"
    else:
        text = report.to_json() if args.format == "json" else report.to_csv()
    if args.output is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "verify":
        if args.target == "ode" and args.max_n is not None:
            print("error: --max-n applies to --coeffs and --identity, not --ode", file=sys.stderr)
            return EXIT_USAGE
        if args.target != "ode" and args.order is not None:
            print("error: --order applies only to --ode", file=sys.stderr)
            return EXIT_USAGE
        if args.target == "coeffs" and args.max_n == 0:
            print("error: --coeffs needs --max-n >= 1", file=sys.stderr)
            return EXIT_USAGE
        return cmd_verify(args, out)
    if args.command == "pi":
        return cmd_pi(args, out)
    try:
        budget = _budget(parser, args)
    except SystemExit:
        return EXIT_USAGE
    if args.command == "digits":
        return cmd_digits(args, budget, out)
    return cmd_compare_report(args, budget, out)


if __name__ == "__main__":
    sys.exit(main())
