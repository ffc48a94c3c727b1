"""Simultaneous determination of all roots of algebraic, trigonometric and
exponential polynomials with known multiplicities, using third-order
Chebyshev-type iterations in configurable-precision decimal arithmetic."""

from .numeric import (
    DEFAULT_DIGITS,
    ParseError,
    PoleError,
    PrecisionConfig,
    Real,
    make_real,
    pi,
    transcendental,
)
from .polys import (
    AlgebraicCoeffPoly,
    DerivativeZeroError,
    DuplicateRootError,
    ExpCoeffPoly,
    FactoredPoly,
    Family,
    Polynomial,
    TrigCoeffPoly,
    UnsupportedFamilyError,
    eval_with_derivative,
    expand_algebraic,
    newton_ratio,
)
from .solver import (
    CollisionError,
    EstimateVector,
    InsufficientDataError,
    IterationTrace,
    Method,
    MultiplicityProfile,
    SolveConfig,
    SolveReport,
    StopReason,
    correction_sum,
    empirical_order,
    newton_baseline_step,
    pre_floor_errors,
    solve,
    step,
    wrap_to_standard_period,
)
from .theory import (
    ConditionCheck,
    IndexChecks,
    SeparationParams,
    TheoremReport,
    UndefinedSeparationError,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    error_bound,
    max_separation,
    min_separation,
)
from .ingest import (
    ExpressionAST,
    ExpressionError,
    ProblemSpec,
    SchemaError,
    parse_expression,
    parse_problem,
    parse_trace,
    render_expression,
    render_theorem_report,
    render_trace,
)

__version__ = "0.1.0"
