"""Exact real analysis on a finite grid.

The real line is replaced by the grid {0, 1/tau, ..., 1} for a large
integer tau, all arithmetic is exact rational arithmetic, and every
analytic judgment (equality, continuity, convergence) is made relative
to an observation context (H, K): quantities within 1/H are
indiscernible, quantities beyond K are infinite.  Derivatives become
difference quotients, integrals become cumulative sums, and the
fundamental theorem of calculus holds with zero error by telescoping.
"""

from .calculus import (
    CheckReport,
    ConvergentSequence,
    LimitQuotientResult,
    RealFunctionRepr,
    cumulative_values,
    derivative,
    ftc_check,
    grid_independence_check,
    integral,
    integral_stream,
    limit_check,
    limit_quotient,
    quotient_function,
    secant_check,
    secant_deviation,
)
from .context import DEFAULT_H, DEFAULT_K, ObservationContext
from .errors import (
    DomainError,
    EvaluationError,
    GridMismatchError,
    HypergridError,
    NotDifferentiableError,
    ParseError,
    ResourceLimitError,
    SearchRangeError,
)
from .expr import Expression, compile, parse, pretty
from .functions import constant, exp_fn, identity, log_fn, monomial, square, step
from .grid import (
    GridPoint,
    GridSpec,
    embed,
    quasi_identity_defect,
    round_to_grid,
    successor,
)
from .gridfun import (
    Certificate,
    ContinuityVerdict,
    FnComparison,
    GridFunction,
    continuity_check,
    difference,
    difference_quotient,
    evaluate,
    fn_indiscernible,
    grid_maps,
    transport,
)
from .rational import Rational, format_rational, parse_rational, render_decimal
from .reals import MINUS_INFINITY, PLUS_INFINITY, ExtendedReal, real_from_rational
from .sampling import SamplingPlan, sample_unit_fractions
from .series import (
    DEFAULT_POLICY,
    FULL_POLICY,
    UNSTABLE,
    SeriesState,
    TruncationPolicy,
    countable_sum,
    exp_approx,
    exp_series,
    is_unstable,
    log_approx,
    series_states,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "Certificate",
    "ContinuityVerdict",
    "ConvergentSequence",
    "DEFAULT_H",
    "DEFAULT_K",
    "DEFAULT_POLICY",
    "DomainError",
    "EvaluationError",
    "Expression",
    "ExtendedReal",
    "FULL_POLICY",
    "FnComparison",
    "GridFunction",
    "GridMismatchError",
    "GridPoint",
    "GridSpec",
    "HypergridError",
    "LimitQuotientResult",
    "MINUS_INFINITY",
    "NotDifferentiableError",
    "ObservationContext",
    "PLUS_INFINITY",
    "ParseError",
    "Rational",
    "RealFunctionRepr",
    "ResourceLimitError",
    "SamplingPlan",
    "SearchRangeError",
    "SeriesState",
    "TruncationPolicy",
    "UNSTABLE",
    "compile",
    "constant",
    "continuity_check",
    "countable_sum",
    "cumulative_values",
    "derivative",
    "difference",
    "difference_quotient",
    "embed",
    "evaluate",
    "exp_approx",
    "exp_fn",
    "exp_series",
    "fn_indiscernible",
    "format_rational",
    "ftc_check",
    "grid_independence_check",
    "grid_maps",
    "identity",
    "integral",
    "integral_stream",
    "is_unstable",
    "limit_check",
    "limit_quotient",
    "log_approx",
    "log_fn",
    "monomial",
    "parse",
    "parse_rational",
    "pretty",
    "quasi_identity_defect",
    "quotient_function",
    "real_from_rational",
    "render_decimal",
    "round_to_grid",
    "sample_unit_fractions",
    "secant_check",
    "secant_deviation",
    "series_states",
    "square",
    "step",
    "successor",
    "transport",
]
