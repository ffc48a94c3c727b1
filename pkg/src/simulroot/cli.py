"""Command-line interface: solve, verify, order, reproduce.

Exit codes are a stable contract:

* 0 success
* 1 input or usage error
* 2 non-convergence / insufficient data
* 3 verification or reproduction failure

The default working precision is 64 decimal digits; the environment
variable ``SIMULROOT_DIGITS`` overrides it when ``--digits`` is absent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal
from pathlib import Path

from .fixtures import EXAMPLES, TABLE_TOLERANCE, diff_against_table, run_example
from .ingest import (
    ExpressionError,
    SchemaError,
    parse_expression,
    parse_problem,
    parse_trace,
    render_theorem_report,
    render_trace,
)
from .numeric import ParseError, PoleError, PrecisionConfig, make_real
from .polys import DuplicateRootError
from .solver import (
    CollisionError,
    EstimateVector,
    InsufficientDataError,
    Method,
    MultiplicityProfile,
    SolveConfig,
    SolveReport,
    StopReason,
    empirical_order,
    pre_floor_errors,
    solve,
)
from .theory import (
    UndefinedSeparationError,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    max_separation,
    min_separation,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_VERIFICATION = 3

_INPUT_ERRORS = (
    ParseError,
    PoleError,
    ExpressionError,
    SchemaError,
    DuplicateRootError,
    CollisionError,
    UndefinedSeparationError,
    ValueError,
    OSError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the contract wants 1.
    def error(self, message):
        raise UsageError(message)


def _default_digits() -> int:
    env = os.environ.get("SIMULROOT_DIGITS")
    if env is None:
        return 64
    try:
        digits = int(env)
    except ValueError:
        raise UsageError(f"SIMULROOT_DIGITS must be an integer, got {env!r}")
    return digits


def _csv_strings(text: str) -> list[str]:
    items = [part.strip() for part in text.split(",")]
    if any(not part for part in items):
        raise UsageError(f"empty entry in comma-separated list {text!r}")
    return items


def _csv_ints(text: str) -> list[int]:
    out = []
    for part in _csv_strings(text):
        try:
            out.append(int(part))
        except ValueError:
            raise UsageError(f"expected an integer in {text!r}, got {part!r}")
    return out


def build_parser() -> _Parser:
    parser = _Parser(prog="simulroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a root-finding problem")
    p_solve.add_argument("--input", help="problem file (JSON)")
    p_solve.add_argument("--expr", help="factored expression, e.g. '(x+2)^2*(x-1)'")
    p_solve.add_argument("--init", help="comma-separated initial estimates")
    p_solve.add_argument("--mults", help="comma-separated multiplicities (default: factor powers)")
    p_solve.add_argument("--digits", type=int, default=None)
    p_solve.add_argument("--max-iters", type=int, default=None)
    p_solve.add_argument("--tolerance", default=None)
    p_solve.add_argument("--method", choices=[m.value for m in Method], default=None)
    p_solve.add_argument("--format", choices=["table", "csv", "json"], default="table")

    p_verify = sub.add_parser("verify", help="check a convergence guarantee's hypotheses")
    p_verify.add_argument("--theorem", type=int, choices=[1, 2, 3], required=True)
    p_verify.add_argument("--roots", help="comma-separated true roots")
    p_verify.add_argument("--d", help="minimum pairwise root distance (alternative to --roots)")
    p_verify.add_argument("--max-sep", help="maximum pairwise root distance (theorem 2)")
    p_verify.add_argument("--mults", required=True)
    p_verify.add_argument("--c", required=True)
    p_verify.add_argument("--q", required=True)
    p_verify.add_argument("--xi", help="separation angle (theorem 2)")
    p_verify.add_argument("--n", type=int, default=None, help="degree (default: from mults)")
    p_verify.add_argument("--digits", type=int, default=None)
    p_verify.add_argument("--json", action="store_true", help="emit the report as JSON")

    p_order = sub.add_parser("order", help="estimate empirical convergence order")
    p_order.add_argument("--input", required=True, help="trace file (JSON from solve)")
    p_order.add_argument("--true-roots", required=True)

    p_rep = sub.add_parser("reproduce", help="re-run a built-in example against its reference table")
    p_rep.add_argument("--table", type=int, choices=[1, 2, 3], required=True)
    p_rep.add_argument("--digits", type=int, default=None)

    return parser


_VALUE_FLAGS = {
    "--init",
    "--mults",
    "--roots",
    "--true-roots",
    "--d",
    "--max-sep",
    "--c",
    "--q",
    "--xi",
    "--tolerance",
}


def _normalize_argv(argv: list[str]) -> list[str]:
    # Merge "--flag value" into "--flag=value" so values that start with
    # a minus sign (negative roots, csv lists) survive argparse.
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def _resolve_digits(value: int | None) -> int:
    digits = value if value is not None else _default_digits()
    if digits < 30:
        raise UsageError(f"--digits must be >= 30, got {digits}")
    return digits


def _solve_exit_code(report: SolveReport) -> int:
    if report.stop_reason is StopReason.TOLERANCE:
        return EXIT_OK
    if report.stop_reason is StopReason.STEP_FAILURE:
        return EXIT_NO_CONVERGENCE
    # Budget exhausted: call the run converging if the last step shrank.
    steps = report.trace.step_sizes
    if len(steps) >= 2 and not max(steps[-1]) < max(steps[-2]):
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_solve(args) -> int:
    if (args.input is None) == (args.expr is None):
        raise UsageError("provide exactly one of --input or --expr")
    if args.input is not None:
        raw = Path(args.input).read_bytes()
        if args.digits is not None:
            # re-declare the precision before parsing so every parsed
            # numeral carries the overridden precision
            payload = json.loads(raw.decode("utf-8"), parse_float=str)
            if isinstance(payload, dict):
                payload["digits"] = args.digits
            raw = json.dumps(payload).encode("utf-8")
        spec = parse_problem(raw)
        digits = spec.digits
        cfg_prec = PrecisionConfig(digits=digits)
        poly = spec.poly
        profile = spec.profile()
        init = spec.initial_vector()
        tolerance = make_real(args.tolerance, cfg_prec) if args.tolerance else spec.tolerance
        solve_cfg = SolveConfig(
            max_iters=args.max_iters if args.max_iters is not None else spec.max_iters,
            step_tolerance=tolerance,
            precision=cfg_prec,
            method=Method(args.method) if args.method else spec.method,
        )
    else:
        if args.init is None:
            raise UsageError("--expr requires --init")
        digits = _resolve_digits(args.digits)
        cfg_prec = PrecisionConfig(digits=digits)
        poly = parse_expression(args.expr, cfg_prec)
        mults = _csv_ints(args.mults) if args.mults else list(poly.mults)
        if len(mults) != len(poly.mults):
            raise UsageError(
                f"--mults has {len(mults)} entries but the expression has "
                f"{len(poly.mults)} factors"
            )
        profile = MultiplicityProfile.for_family(poly.family, mults)
        init = EstimateVector(
            tuple(make_real(s, cfg_prec) for s in _csv_strings(args.init))
        )
        tolerance = make_real(args.tolerance, cfg_prec) if args.tolerance else None
        solve_cfg = SolveConfig(
            max_iters=args.max_iters if args.max_iters is not None else 50,
            step_tolerance=tolerance,
            precision=cfg_prec,
            method=Method(args.method) if args.method else Method.CHEBYSHEV,
        )

    report = solve(poly, profile, init, solve_cfg)
    sys.stdout.write(render_trace(report, args.format).decode())
    if report.failure:
        print(f"step failure: {report.failure}", file=sys.stderr)
    return _solve_exit_code(report)


def _format_side(value) -> str:
    if value is None:
        return "-"
    text = str(value)
    return text if len(text) <= 24 else f"{value.dec:.16E}"


def _print_theorem_report(report) -> None:
    print(f"theorem {report.theorem}: {'PASS' if report.passed else 'FAIL'}")
    for check in report.global_checks:
        if check.lhs is not None and check.rhs is not None:
            detail = f": {_format_side(check.lhs)} {check.relation} {_format_side(check.rhs)}"
        elif check.lhs is not None:
            detail = f": value {_format_side(check.lhs)}"
        else:
            detail = f": {check.reason}" if check.reason else ""
        print(f"  [{'ok' if check.passed else 'FAIL'}] {check.name}{detail}")
    for ic in report.per_index:
        for check in ic.checks:
            detail = (
                f"{_format_side(check.lhs)} {check.relation} {_format_side(check.rhs)}"
                if check.lhs is not None
                else (check.reason or "")
            )
            print(
                f"  [{'ok' if check.passed else 'FAIL'}] i={ic.index + 1} "
                f"(mult {ic.mult}) {check.name}: {detail}"
            )
    for note in report.notes:
        print(f"  note: {note}")


def cmd_verify(args) -> int:
    digits = _resolve_digits(args.digits)
    cfg = PrecisionConfig(digits=digits)
    mults = _csv_ints(args.mults)
    c = make_real(args.c, cfg)
    q = make_real(args.q, cfg)

    if (args.roots is None) == (args.d is None):
        raise UsageError("provide exactly one of --roots or --d")
    if args.roots is not None:
        roots = [make_real(s, cfg) for s in _csv_strings(args.roots)]
        d = min_separation(roots)
        max_sep = max_separation(roots)
    else:
        d = make_real(args.d, cfg)
        max_sep = make_real(args.max_sep, cfg) if args.max_sep else None

    total = sum(mults)
    if args.theorem == 1:
        n = args.n if args.n is not None else total
        report = check_theorem1(n, mults, d, c, q)
    elif args.theorem == 2:
        if args.xi is None:
            raise UsageError("--theorem 2 requires --xi")
        if max_sep is None:
            raise UsageError("--theorem 2 requires --max-sep when --d is used")
        if args.n is None and total % 2:
            raise UsageError(
                f"multiplicities sum to {total}; a trigonometric degree needs an even sum "
                "(or pass --n)"
            )
        n = args.n if args.n is not None else total // 2
        xi = make_real(args.xi, cfg)
        report = check_theorem2(n, mults, d, max_sep, c, q, xi)
    else:
        if args.n is None and total % 2:
            raise UsageError(
                f"multiplicities sum to {total}; an exponential degree needs an even sum "
                "(or pass --n)"
            )
        n = args.n if args.n is not None else total // 2
        report = check_theorem3(n, mults, d, c, q)

    if args.json:
        sys.stdout.write(render_theorem_report(report).decode())
    else:
        _print_theorem_report(report)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_order(args) -> int:
    report = parse_trace(Path(args.input).read_bytes())
    digits = max(x.digits for x in report.trace.snapshots[0].x)
    cfg = PrecisionConfig(digits=digits)
    true_roots = [make_real(s, cfg) for s in _csv_strings(args.true_roots)]
    m = report.trace.snapshots[0].m
    if len(true_roots) != m:
        raise UsageError(f"expected {m} true roots, got {len(true_roots)}")

    any_order = False
    for i in range(m):
        errors = [abs(snap.x[i] - true_roots[i]) for snap in report.trace.snapshots]
        usable = pre_floor_errors(errors, digits)
        try:
            order = empirical_order(usable)
        except InsufficientDataError as exc:
            print(f"x{i+1}: insufficient data ({exc})")
            continue
        any_order = True
        triple = ", ".join(str(e) for e in usable[-3:])
        print(f"x{i+1}: order {_round_for_display(order)} from errors ({triple})")
    return EXIT_OK if any_order else EXIT_NO_CONVERGENCE


def _round_for_display(x) -> str:
    return str(x.dec.quantize(Decimal("0.001")))


def cmd_reproduce(args) -> int:
    digits = _resolve_digits(args.digits)
    example = EXAMPLES[args.table]
    report = run_example(example, digits=digits)
    sys.stdout.write(render_trace(report, "table", places=19).decode())

    cfg = PrecisionConfig(digits=digits)
    tolerance = make_real(TABLE_TOLERANCE, cfg)
    diffs = diff_against_table(report, example, digits=digits)
    worst = max(diffs, key=lambda cell: cell.discrepancy)
    failures = [cell for cell in diffs if cell.discrepancy > tolerance]
    print(f"entries compared: {len(diffs)}")
    print(f"max |computed - reference| = {worst.discrepancy} (row {worst.row}, x{worst.col + 1})")
    for cell in failures:
        print(
            f"MISMATCH row {cell.row} x{cell.col + 1}: reference {cell.reference}, "
            f"computed {cell.computed}"
        )
        if cell.note:
            print(f"  note: {cell.note}")
    if failures:
        print(f"{len(failures)} of {len(diffs)} entries exceed {TABLE_TOLERANCE}")
        return EXIT_VERIFICATION
    print(f"all entries within {TABLE_TOLERANCE}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "order":
            return cmd_order(args)
        if args.command == "reproduce":
            return cmd_reproduce(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def app() -> None:
    sys.exit(main())
