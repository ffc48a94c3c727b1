"""Simultaneous root-finding iterations and convergence-order estimation.

The main iteration updates every estimate from the previous vector only
(total-step / Jacobi discipline):

    x_i <- x_i - m_i * N_i * (1 + N_i * C_i)

where N_i = p(x_i)/p'(x_i), m_i is the known multiplicity and C_i is the
logarithmic derivative of the product of the other roots' factors:
a rational sum for algebraic polynomials, a half cotangent sum for
trigonometric ones and a half hyperbolic-cotangent sum for exponential
ones.  The second-order baseline drops the bracket, i.e. multiplicity
Newton, and is kept around as a foil for order measurements.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN
from enum import Enum
from typing import Sequence

from .numeric import PrecisionConfig, Real, cot, coth, ln, pi, ten_power, zero
from .polys import (
    DerivativeZeroError,
    Family,
    Polynomial,
    degree_of,
    family_of,
    newton_ratio,
)


class Method(str, Enum):
    CHEBYSHEV = "chebyshev"
    NEWTON_BASELINE = "newton_baseline"


class StopReason(str, Enum):
    TOLERANCE = "tolerance"
    MAX_ITERS = "max_iters"
    STEP_FAILURE = "step_failure"


class CollisionError(ValueError):
    """Two estimates coincide at working precision."""

    def __init__(self, i: int, j: int, value: Real):
        self.indices = (i, j)
        self.value = value
        super().__init__(f"estimates {i} and {j} coincide at {value}")


class StepFailure(RuntimeError):
    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"step failed for root index {index}: {cause}")


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicityProfile:
    """Known multiplicities m_1..m_m and the family degree they sum to."""

    mults: tuple[int, ...]
    family_degree: int

    def __post_init__(self):
        if not self.mults or any(m < 1 for m in self.mults):
            raise ValueError("multiplicities must be a non-empty tuple of positive integers")
        if self.family_degree < 1:
            raise ValueError("family degree must be >= 1")

    @classmethod
    def for_family(cls, family: Family, mults: Sequence[int]) -> "MultiplicityProfile":
        total = sum(mults)
        if family is Family.ALGEBRAIC:
            return cls(tuple(mults), total)
        if total % 2:
            raise ValueError(
                f"{family.value} multiplicities must sum to 2n, got odd total {total}"
            )
        return cls(tuple(mults), total // 2)

    def check_family(self, family: Family) -> None:
        total = sum(self.mults)
        expected = self.family_degree if family is Family.ALGEBRAIC else 2 * self.family_degree
        if total != expected:
            raise ValueError(
                f"multiplicities sum to {total}, expected {expected} for a "
                f"{family.value} polynomial of degree {self.family_degree}"
            )

    @property
    def m(self) -> int:
        return len(self.mults)


@dataclass(frozen=True)
class EstimateVector:
    """Simultaneous approximations at one iteration."""

    x: tuple[Real, ...]
    k: int = 0

    def __post_init__(self):
        for i in range(len(self.x)):
            for j in range(i + 1, len(self.x)):
                if self.x[i] == self.x[j]:
                    raise CollisionError(i, j, self.x[i])

    @property
    def m(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class SolveConfig:
    max_iters: int = 50
    step_tolerance: Real | None = None  # None -> 10^(-digits+6)
    precision: PrecisionConfig = PrecisionConfig()
    method: Method = Method.CHEBYSHEV

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.step_tolerance is not None and not self.step_tolerance > 0:
            raise ValueError("step_tolerance must be positive")

    def resolved_tolerance(self) -> Real:
        if self.step_tolerance is not None:
            return self.step_tolerance
        return ten_power(-self.precision.digits + 6, self.precision.digits)


@dataclass(frozen=True)
class IterationTrace:
    snapshots: tuple[EstimateVector, ...]
    step_sizes: tuple[tuple[Real, ...], ...]
    errors: tuple[tuple[Real, ...], ...] | None = None

    def final(self) -> EstimateVector:
        return self.snapshots[-1]

    def max_errors(self) -> tuple[Real, ...] | None:
        """Max-norm error per iteration, when true roots were supplied."""
        if self.errors is None:
            return None
        return tuple(max(row) for row in self.errors)

    def root_errors(self, i: int) -> tuple[Real, ...] | None:
        if self.errors is None:
            return None
        return tuple(row[i] for row in self.errors)


@dataclass(frozen=True)
class SolveReport:
    trace: IterationTrace
    converged: bool
    stop_reason: StopReason
    failure: str | None = None

    def __post_init__(self):
        if self.converged and self.stop_reason is not StopReason.TOLERANCE:
            raise ValueError("a converged report must stop on tolerance")


def correction_sum(
    family: Family, estimates: EstimateVector, profile: MultiplicityProfile, i: int
) -> Real:
    """Q_i'(x_i)/Q_i(x_i) over the other estimates' factors (0-based i)."""
    if not 0 <= i < estimates.m:
        raise IndexError(f"root index {i} out of range for m = {estimates.m}")
    if estimates.m != profile.m:
        raise ValueError("estimate vector and multiplicity profile disagree on m")
    xi = estimates.x[i]
    total = zero(xi.digits)
    for j, (xj, mult) in enumerate(zip(estimates.x, profile.mults)):
        if j == i:
            continue
        dx = xi - xj
        if dx.is_zero():
            raise CollisionError(i, j, xi)
        if family is Family.ALGEBRAIC:
            total = total + mult / dx
        elif family is Family.TRIGONOMETRIC:
            total = total + mult * cot(dx / 2)
        else:
            total = total + mult * coth(dx / 2)
    if family is Family.ALGEBRAIC:
        return total
    return total / 2


def _advance(
    family: Family,
    p: Polynomial,
    estimates: EstimateVector,
    profile: MultiplicityProfile,
    chebyshev: bool,
) -> EstimateVector:
    if family_of(p) is not family:
        raise ValueError(f"polynomial family {family_of(p).value} does not match {family.value}")
    new = []
    for i, (xi, mult) in enumerate(zip(estimates.x, profile.mults)):
        try:
            ratio = newton_ratio(p, xi)
            if chebyshev:
                bracket = 1 + ratio * correction_sum(family, estimates, profile, i)
            else:
                bracket = 1
            new.append(xi - mult * ratio * bracket)
        except (DerivativeZeroError, CollisionError) as exc:
            raise StepFailure(i, exc) from exc
    try:
        return EstimateVector(tuple(new), estimates.k + 1)
    except CollisionError as exc:
        raise StepFailure(exc.indices[0], exc) from exc


def step(
    family: Family,
    p: Polynomial,
    estimates: EstimateVector,
    profile: MultiplicityProfile,
) -> EstimateVector:
    """One total-step update of every estimate (third-order method)."""
    return _advance(family, p, estimates, profile, chebyshev=True)


def newton_baseline_step(
    family: Family,
    p: Polynomial,
    estimates: EstimateVector,
    profile: MultiplicityProfile,
) -> EstimateVector:
    """One multiplicity-Newton update (second-order baseline)."""
    return _advance(family, p, estimates, profile, chebyshev=False)


def solve(
    p: Polynomial,
    profile: MultiplicityProfile,
    init: EstimateVector,
    cfg: SolveConfig | None = None,
    true_roots: Sequence[Real] | None = None,
) -> SolveReport:
    """Iterate until the largest per-root step falls below tolerance.

    Step failures (estimate collisions, stationary points) abort the run
    and are reported, never patched around.  When ``true_roots`` is given
    the trace also records |x_i^[k] - x_i| per iteration.
    """
    cfg = cfg or SolveConfig()
    family = family_of(p)
    profile.check_family(family)
    if profile.family_degree != degree_of(p):
        raise ValueError(
            f"profile degree {profile.family_degree} does not match polynomial degree {degree_of(p)}"
        )
    if init.m != profile.m:
        raise ValueError("initial vector and multiplicity profile disagree on m")
    if true_roots is not None and len(true_roots) != profile.m:
        raise ValueError("true_roots length must equal m")

    tolerance = cfg.resolved_tolerance()
    chebyshev = cfg.method is Method.CHEBYSHEV

    def error_row(vec: EstimateVector):
        return tuple(abs(x - r) for x, r in zip(vec.x, true_roots))

    snapshots = [init]
    steps: list[tuple[Real, ...]] = []
    errors = [error_row(init)] if true_roots is not None else None

    current = init
    converged = False
    stop = StopReason.MAX_ITERS
    failure = None
    for _ in range(cfg.max_iters):
        try:
            nxt = _advance(family, p, current, profile, chebyshev)
        except StepFailure as exc:
            stop = StopReason.STEP_FAILURE
            failure = str(exc)
            break
        deltas = tuple(abs(a - b) for a, b in zip(nxt.x, current.x))
        snapshots.append(nxt)
        steps.append(deltas)
        if errors is not None:
            errors.append(error_row(nxt))
        current = nxt
        if max(deltas) <= tolerance:
            converged = True
            stop = StopReason.TOLERANCE
            break

    trace = IterationTrace(
        snapshots=tuple(snapshots),
        step_sizes=tuple(steps),
        errors=tuple(errors) if errors is not None else None,
    )
    return SolveReport(trace=trace, converged=converged, stop_reason=stop, failure=failure)


def empirical_order(errors: Sequence[Real]) -> Real:
    """log(e_{k+1}/e_k) / log(e_k/e_{k-1}) over the last three errors.

    Callers are expected to strip entries at the precision floor first
    (see :func:`pre_floor_errors`).
    """
    if len(errors) < 3:
        raise InsufficientDataError(f"need at least 3 error values, got {len(errors)}")
    for e in errors:
        if not e > 0:
            raise InsufficientDataError(f"errors must be strictly positive, got {e}")
    for prev, cur in zip(errors, errors[1:]):
        if not cur < prev:
            raise InsufficientDataError(
                f"errors must be strictly decreasing, got {prev} then {cur}"
            )
    e0, e1, e2 = errors[-3], errors[-2], errors[-1]
    return ln(e2 / e1) / ln(e1 / e0)


def pre_floor_errors(errors: Sequence[Real], digits: int) -> list[Real]:
    """Strictly decreasing prefix of positive errors above 10^(-digits+6)."""
    floor = ten_power(-digits + 6, digits)
    out: list[Real] = []
    for e in errors:
        if not e > floor:
            break
        if out and not e < out[-1]:
            break
        out.append(e)
    return out


def wrap_to_standard_period(x: Real) -> Real:
    """Map a trigonometric root into [-pi, pi)."""
    half_period = pi(x.digits)
    two_pi = 2 * half_period
    n = int((x / two_pi).dec.to_integral_value(rounding=ROUND_HALF_EVEN))
    wrapped = x - n * two_pi
    if wrapped >= half_period:
        wrapped = wrapped - two_pi
    elif wrapped < -half_period:
        wrapped = wrapped + two_pi
    return wrapped
