"""Command-line frontend.

Subcommands: log, exp, preimage, roots, verify, table.  Digit strings are
comma separated and little endian, e.g. "1,3,0,2" = 1 + 3·π + 2·π³.

Exit codes: 0 success, 1 verification failure, 2 usage or parse errors,
3 domain precondition violations, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from .errors import (
    BranchZero,
    CapExceeded,
    ContextMismatch,
    DigitStringError,
    NotAUnit,
    NotDivisible,
    NotInMSquared,
    NotPrincipalUnit,
    ValuationTooSmall,
)
from .ring import Context, PiElement, format_digits, parse_digits, _is_prime
from .series import pexp, plog
from .preimage import preimage, preimage_all, roots_of_unity
from .verify import DEFAULT_CAP, run_all

_DOMAIN_ERRORS = (
    NotPrincipalUnit,
    NotInMSquared,
    BranchZero,
    ValuationTooSmall,
    NotAUnit,
    NotDivisible,
    ContextMismatch,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclolog",
        description="Exact arithmetic and p-adic log/exp in Z_p[pi], pi^(p-1) = -p.",
        epilog='Digit strings are comma separated, little endian: "1,3,0,2" = 1 + 3·π + 2·π³.',
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--p", type=int, required=True, help="odd prime >= 3")
        sp.add_argument("--prec", type=int, required=True, help="precision N >= 4")

    sp_log = sub.add_parser("log", help="p-adic logarithm of a principal unit")
    add_common(sp_log)
    sp_log.add_argument("--unit", required=True, help="digit string with digit 0 equal to 1")

    sp_exp = sub.add_parser("exp", help="p-adic exponential of an element of m^2")
    add_common(sp_exp)
    sp_exp.add_argument("--y", required=True, help="digit string with digits 0,1 equal to 0")

    sp_pre = sub.add_parser("preimage", help="log preimages of a target in m^2")
    add_common(sp_pre)
    sp_pre.add_argument("--y", required=True, help="target digit string, digits 0,1 zero")
    group = sp_pre.add_mutually_exclusive_group(required=True)
    group.add_argument("--branch", type=int, help="leading digit a1 in 1..p-1")
    group.add_argument("--all", action="store_true", help="all p-1 branches")

    sp_roots = sub.add_parser("roots", help="the p-1 nontrivial p-th roots of unity")
    add_common(sp_roots)

    sp_verify = sub.add_parser("verify", help="run the exhaustive verification suite")
    add_common(sp_verify)
    sp_verify.add_argument("--json", action="store_true", help="machine-readable report")
    sp_verify.add_argument("--seed", type=int, default=0, help="seed for the property suites")
    sp_verify.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    sp_table = sub.add_parser("table", help="full fiber table of log over m^2")
    add_common(sp_table)
    sp_table.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    return parser


def _cmd_log(args, ctx: Context) -> int:
    unit = parse_digits(args.unit, ctx)
    result = plog(unit)
    print(format_digits(result))
    print(f"= {result.expansion()}")
    return 0


def _cmd_exp(args, ctx: Context) -> int:
    x = parse_digits(args.y, ctx)
    result = pexp(x)
    print(format_digits(result))
    print(f"= {result.expansion()}")
    return 0


def _cmd_preimage(args, ctx: Context) -> int:
    y = parse_digits(args.y, ctx)
    if args.all:
        units = preimage_all(y)
        branches = range(1, ctx.p)
    else:
        units = [preimage(y, args.branch)]
        branches = [args.branch]
    for branch, unit in zip(branches, units):
        print(f"branch {branch}: {format_digits(unit)}  log={format_digits(plog(unit))}")
    return 0


def _cmd_roots(args, ctx: Context) -> int:
    for branch, root in enumerate(roots_of_unity(ctx), start=1):
        print(f"branch {branch}: {format_digits(root)}  root^{ctx.p}={format_digits(root ** ctx.p)}")
    return 0


def _cmd_verify(args, ctx: Context) -> int:
    report = run_all(ctx, seed=args.seed, cap=args.cap)
    if args.json:
        print(report.to_json())
    else:
        print(f"p={report.p} precision={report.precision} seed={args.seed}")
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            counts = " ".join(f"{k}={v}" for k, v in check.counts.items())
            print(f"{check.name:<24} {status}  {counts}")
            for w in check.witnesses:
                print(f"    witness: {w}")
        print("all checks passed" if report.all_passed else "some checks FAILED")
    return 0 if report.all_passed else 1


def _cmd_table(args, ctx: Context) -> int:
    p, n = ctx.p, ctx.precision
    units_total = (p - 1) * p ** (n - 2)
    targets_total = p ** (n - 2)
    if units_total > args.cap:
        raise CapExceeded(units_total, args.cap)
    for tail in itertools.product(range(p), repeat=n - 2):
        y = PiElement._make((0, 0) + tail, ctx)
        fiber = " ".join(format_digits(u) for u in preimage_all(y))
        print(f"{format_digits(y)}: {fiber}")
    print(f"{units_total} units / {targets_total} targets")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not _is_prime(args.p) or args.p < 3:
        print(f"error: --p must be an odd prime >= 3, got {args.p}", file=sys.stderr)
        return 2
    if args.prec < 4:
        print(f"error: --prec must be >= 4, got {args.prec}", file=sys.stderr)
        return 2
    try:
        ctx = Context(args.p, args.prec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    handlers = {
        "log": _cmd_log,
        "exp": _cmd_exp,
        "preimage": _cmd_preimage,
        "roots": _cmd_roots,
        "verify": _cmd_verify,
        "table": _cmd_table,
    }
    try:
        return handlers[args.command](args, ctx)
    except DigitStringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
