"""Parsing of factored expressions and problem files; trace rendering.

The expression grammar covers exactly the factored shapes the worked
examples use::

    PRODUCT := FACTOR ('*' FACTOR)*
    FACTOR  := BASE ('^' INT)?
    BASE    := '(' 'x' SIGN NUM ')'
             | 'sin' '(' '(' 'x' SIGN NUM ')' '/' '2' ')'
             | 'sinh' '(' '(' 'x' SIGN NUM ')' '/' '2' ')'

Whitespace is insignificant; NUM is an unsigned decimal numeral.  All
numeric file I/O is decimal strings end to end, so parsing and printing
at the same precision is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .numeric import PrecisionConfig, Real, format_fixed, make_real
from .polys import (
    AlgebraicCoeffPoly,
    ExpCoeffPoly,
    Family,
    FactoredPoly,
    Polynomial,
    TrigCoeffPoly,
    degree_of,
)
from .solver import (
    EstimateVector,
    IterationTrace,
    Method,
    MultiplicityProfile,
    SolveConfig,
    SolveReport,
    StopReason,
)


class ExpressionError(ValueError):
    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


_BASE_FAMILY = {
    "linear": Family.ALGEBRAIC,
    "sin-half": Family.TRIGONOMETRIC,
    "sinh-half": Family.EXPONENTIAL,
}


@dataclass(frozen=True)
class ExpressionFactor:
    kind: str  # linear | sin-half | sinh-half
    shift: str  # decimal numeral with sign, as written
    power: int
    position: int  # where the factor started, for diagnostics


@dataclass(frozen=True)
class ExpressionAST:
    factors: tuple[ExpressionFactor, ...]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str):
        raise ExpressionError(self.text, self.pos, message)

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def match(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def number(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.pos += 1
            frac_start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == frac_start:
                self.fail("expected digits after decimal point")
        if self.pos == start:
            self.fail("expected a decimal numeral")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])


def _parse_shifted_x(sc: _Scanner) -> str:
    sc.expect("(")
    sc.expect("x")
    sc.skip_ws()
    if sc.peek() not in "+-":
        sc.fail("expected '+' or '-' after 'x'")
    sign = sc.text[sc.pos]
    sc.pos += 1
    num = sc.number()
    sc.expect(")")
    return sign + num


def _parse_factor(sc: _Scanner) -> ExpressionFactor:
    sc.skip_ws()
    position = sc.pos
    if sc.match("sinh"):
        sc.expect("(")
        shift = _parse_shifted_x(sc)
        sc.expect("/")
        sc.expect("2")
        sc.expect(")")
        kind = "sinh-half"
    elif sc.match("sin"):
        sc.expect("(")
        shift = _parse_shifted_x(sc)
        sc.expect("/")
        sc.expect("2")
        sc.expect(")")
        kind = "sin-half"
    else:
        shift = _parse_shifted_x(sc)
        kind = "linear"
    power = 1
    if sc.match("^"):
        sc.skip_ws()
        power_position = sc.pos
        power = sc.integer()
        if power < 1:
            raise ExpressionError(sc.text, power_position, "factor power must be >= 1")
    return ExpressionFactor(kind=kind, shift=shift, power=power, position=position)


def parse_expression_ast(text: str) -> ExpressionAST:
    sc = _Scanner(text)
    factors = [_parse_factor(sc)]
    while not sc.done():
        sc.expect("*")
        factors.append(_parse_factor(sc))
    return ExpressionAST(tuple(factors))


def _negate_numeral(signed: str) -> str:
    return signed[1:] if signed[0] == "-" else "-" + signed[1:]


def parse_expression(text: str, cfg: PrecisionConfig | None = None) -> FactoredPoly:
    """Parse a factored product into a FactoredPoly (root r = -shift)."""
    cfg = cfg or PrecisionConfig()
    ast = parse_expression_ast(text)
    kinds = {f.kind for f in ast.factors}
    if len(kinds) > 1:
        offender = next(f for f in ast.factors if f.kind != ast.factors[0].kind)
        raise ExpressionError(
            text, offender.position, "mixed factor families in one product"
        )
    family = _BASE_FAMILY[ast.factors[0].kind]
    roots = tuple(make_real(_negate_numeral(f.shift), cfg) for f in ast.factors)
    mults = tuple(f.power for f in ast.factors)
    return FactoredPoly(family=family, roots=roots, mults=mults)


def render_expression(f: FactoredPoly) -> str:
    """Canonical print; parse_expression of the result round-trips."""
    wrap = {
        Family.ALGEBRAIC: "(x{})",
        Family.TRIGONOMETRIC: "sin((x{})/2)",
        Family.EXPONENTIAL: "sinh((x{})/2)",
    }[f.family]
    parts = []
    for root, mult in zip(f.roots, f.mults):
        shift = ("+" + str(-root)) if root < 0 else ("-" + str(root))
        base = wrap.format(shift)
        parts.append(base if mult == 1 else f"{base}^{mult}")
    return "*".join(parts)


@dataclass(frozen=True)
class ProblemSpec:
    family: Family
    poly: Polynomial
    mults: tuple[int, ...]
    init: tuple[Real, ...]
    digits: int
    max_iters: int
    tolerance: Real | None
    method: Method

    def profile(self) -> MultiplicityProfile:
        return MultiplicityProfile.for_family(self.family, self.mults)

    def initial_vector(self) -> EstimateVector:
        return EstimateVector(self.init, k=0)

    def solve_config(self) -> SolveConfig:
        return SolveConfig(
            max_iters=self.max_iters,
            step_tolerance=self.tolerance,
            precision=PrecisionConfig(digits=self.digits),
            method=self.method,
        )


def _get(obj: dict, key: str, path: str, required: bool = True, default=None):
    if key not in obj:
        if required:
            raise SchemaError(f"{path}.{key}", "missing required field")
        return default
    return obj[key]


def _as_int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _as_decimal_string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a decimal string, got {value!r}")
    return value


def _string_list(value: Any, path: str) -> list[str]:
    if not isinstance(value, list) or not value:
        raise SchemaError(path, "expected a non-empty array")
    return [_as_decimal_string(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_coefficients(
    family: Family, obj: Any, path: str, cfg: PrecisionConfig
) -> Polynomial:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    a = [make_real(s, cfg) for s in _string_list(_get(obj, "a", path), f"{path}.a")]
    if family is Family.ALGEBRAIC:
        for forbidden in ("a0", "b"):
            if forbidden in obj:
                raise SchemaError(
                    f"{path}.{forbidden}", "not used by algebraic coefficients"
                )
        return AlgebraicCoeffPoly(tuple(a))
    a0 = make_real(_as_decimal_string(_get(obj, "a0", path), f"{path}.a0"), cfg)
    b = [make_real(s, cfg) for s in _string_list(_get(obj, "b", path), f"{path}.b")]
    if len(a) != len(b):
        raise SchemaError(f"{path}.b", f"length {len(b)} does not match a (length {len(a)})")
    cls = TrigCoeffPoly if family is Family.TRIGONOMETRIC else ExpCoeffPoly
    return cls(a0, tuple(a), tuple(b))


def parse_problem(data: bytes | str) -> ProblemSpec:
    """Parse and validate a problem file (JSON, numerics as decimal strings)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        # parse_float=str keeps any bare JSON reals exact instead of
        # rounding them through binary floats.
        raw = json.loads(data, parse_float=str)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("$", "expected a JSON object")

    family_name = _get(raw, "family", "$")
    try:
        family = Family(family_name)
    except ValueError:
        raise SchemaError(
            "$.family",
            f"expected one of {[f.value for f in Family]}, got {family_name!r}",
        )

    digits = _as_int(_get(raw, "digits", "$", required=False, default=64), "$.digits")
    if digits < 30:
        raise SchemaError("$.digits", f"must be >= 30, got {digits}")
    cfg = PrecisionConfig(digits=digits)

    has_expr = "expr" in raw
    has_coeffs = "coefficients" in raw
    if has_expr == has_coeffs:
        raise SchemaError("$", "exactly one of 'expr' or 'coefficients' must be present")

    mults_raw = _get(raw, "mults", "$", required=not has_expr, default=None)
    mults = None
    if mults_raw is not None:
        if not isinstance(mults_raw, list) or not mults_raw:
            raise SchemaError("$.mults", "expected a non-empty array of integers")
        mults = [_as_int(v, f"$.mults[{i}]") for i, v in enumerate(mults_raw)]
        for i, v in enumerate(mults):
            if v < 1:
                raise SchemaError(f"$.mults[{i}]", f"must be positive, got {v}")

    if has_expr:
        expr = _get(raw, "expr", "$")
        if not isinstance(expr, str):
            raise SchemaError("$.expr", "expected a string")
        try:
            poly = parse_expression(expr, cfg)
        except ExpressionError as exc:
            raise SchemaError("$.expr", str(exc)) from exc
        if poly.family is not family:
            raise SchemaError(
                "$.family",
                f"declared {family.value} but the expression is {poly.family.value}",
            )
        if mults is None:
            mults = list(poly.mults)
        elif len(mults) != len(poly.mults):
            raise SchemaError(
                "$.mults",
                f"length {len(mults)} does not match the expression's {len(poly.mults)} factors",
            )
    else:
        poly = _parse_coefficients(family, raw["coefficients"], "$.coefficients", cfg)

    total = sum(mults)
    expected = degree_of(poly) if family is Family.ALGEBRAIC else 2 * degree_of(poly)
    if total != expected:
        raise SchemaError(
            "$.mults",
            f"multiplicities sum to {total}, expected {expected} for this "
            f"{family.value} polynomial of degree {degree_of(poly)}",
        )

    init_raw = _get(raw, "init", "$")
    init_strings = _string_list(init_raw, "$.init")
    if len(init_strings) != len(mults):
        raise SchemaError(
            "$.init", f"expected {len(mults)} initial estimates, got {len(init_strings)}"
        )
    init = tuple(make_real(s, cfg) for s in init_strings)
    EstimateVector(init, k=0)  # raises CollisionError on duplicates

    max_iters = _as_int(_get(raw, "max_iters", "$", required=False, default=50), "$.max_iters")
    if max_iters < 1:
        raise SchemaError("$.max_iters", f"must be >= 1, got {max_iters}")

    tolerance = None
    if "tolerance" in raw:
        tolerance = make_real(_as_decimal_string(raw["tolerance"], "$.tolerance"), cfg)
        if not tolerance > 0:
            raise SchemaError("$.tolerance", "must be positive")

    method_name = _get(raw, "method", "$", required=False, default=Method.CHEBYSHEV.value)
    try:
        method = Method(method_name)
    except ValueError:
        raise SchemaError(
            "$.method",
            f"expected one of {[m.value for m in Method]}, got {method_name!r}",
        )

    return ProblemSpec(
        family=family,
        poly=poly,
        mults=tuple(mults),
        init=init,
        digits=digits,
        max_iters=max_iters,
        tolerance=tolerance,
        method=method,
    )


# -- trace rendering ----------------------------------------------------


def _report_to_dict(report: SolveReport, digits: int) -> dict:
    trace = report.trace
    return {
        "digits": digits,
        "converged": report.converged,
        "stop_reason": report.stop_reason.value,
        "failure": report.failure,
        "snapshots": [
            {"k": snap.k, "x": [str(x) for x in snap.x]} for snap in trace.snapshots
        ],
        "step_sizes": [[str(s) for s in row] for row in trace.step_sizes],
        "errors": None
        if trace.errors is None
        else [[str(e) for e in row] for row in trace.errors],
    }


def render_trace(report: SolveReport, format: str = "table", places: int = 18) -> bytes:
    """Render a solve report; table mirrors the reference layout, csv and
    json are lossless decimal strings."""
    trace = report.trace
    if format == "table":
        m = trace.snapshots[0].m
        header = f"{'k':>4}  " + ", ".join(f"x{i+1}" for i in range(m))
        lines = [header]
        for snap in trace.snapshots:
            row = ", ".join(format_fixed(x, places) for x in snap.x)
            lines.append(f"{snap.k:>4}  {row}")
        return ("\n".join(lines) + "\n").encode()
    if format == "csv":
        m = trace.snapshots[0].m
        lines = ["k," + ",".join(f"x{i+1}" for i in range(m))]
        for snap in trace.snapshots:
            lines.append(f"{snap.k}," + ",".join(str(x) for x in snap.x))
        return ("\n".join(lines) + "\n").encode()
    if format == "json":
        digits = max(x.digits for x in trace.snapshots[0].x)
        return (json.dumps(_report_to_dict(report, digits), indent=2) + "\n").encode()
    raise ValueError(f"unknown trace format {format!r}; expected table, csv or json")


def parse_trace(data: bytes | str) -> SolveReport:
    """Re-parse the JSON produced by :func:`render_trace`."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data, parse_float=str)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    digits = _as_int(_get(raw, "digits", "$"), "$.digits")
    cfg = PrecisionConfig(digits=digits)
    snapshots = []
    for i, snap in enumerate(_get(raw, "snapshots", "$")):
        xs = tuple(make_real(s, cfg) for s in _string_list(snap["x"], f"$.snapshots[{i}].x"))
        snapshots.append(EstimateVector(xs, k=_as_int(snap["k"], f"$.snapshots[{i}].k")))
    step_sizes = tuple(
        tuple(make_real(s, cfg) for s in row) for row in _get(raw, "step_sizes", "$")
    )
    errors_raw = raw.get("errors")
    errors = (
        None
        if errors_raw is None
        else tuple(tuple(make_real(s, cfg) for s in row) for row in errors_raw)
    )
    trace = IterationTrace(snapshots=tuple(snapshots), step_sizes=step_sizes, errors=errors)
    return SolveReport(
        trace=trace,
        converged=bool(raw.get("converged", False)),
        stop_reason=StopReason(raw.get("stop_reason", StopReason.MAX_ITERS.value)),
        failure=raw.get("failure"),
    )


def render_theorem_report(report) -> bytes:
    """Serialize a TheoremReport to JSON (sides as decimal strings)."""

    def check_dict(c):
        return {
            "name": c.name,
            "lhs": None if c.lhs is None else str(c.lhs),
            "rhs": None if c.rhs is None else str(c.rhs),
            "relation": c.relation,
            "passed": c.passed,
            "reason": c.reason,
        }

    payload = {
        "theorem": report.theorem,
        "passed": report.passed,
        "global_checks": [check_dict(c) for c in report.global_checks],
        "per_index": [
            {
                "index": ic.index,
                "mult": ic.mult,
                "passed": ic.passed,
                "checks": [check_dict(c) for c in ic.checks],
            }
            for ic in report.per_index
        ],
        "notes": list(report.notes),
    }
    return (json.dumps(payload, indent=2) + "\n").encode()
