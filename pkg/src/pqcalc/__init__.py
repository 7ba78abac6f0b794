"""Numerical pq-calculus: derivatives, series integrals and law checks."""

from .core import (
    DEFAULT_CONFIG,
    DomainError,
    EvaluationError,
    Interval,
    Mode,
    NonFiniteTermError,
    ParameterError,
    PqError,
    PqParams,
    RangeError,
    RealFunction,
    SeriesConfig,
    SeriesResult,
    Status,
    as_function,
    exponent,
    node,
    orbit_range,
    sum_series,
    weight,
)
from .deriv import LimitError, LimitPolicy, derivative_function, pq_derivative, pq_derivative_n, pq_differential
from .integral import (
    INFINITY,
    ZERO,
    Case,
    HypothesisCheck,
    IntegralRequest,
    antiderivative_series,
    check_improper_hypothesis,
    check_theorem1_hypothesis,
    definite_integral,
    improper_integral,
    integral_from_zero,
    integral_n,
    integral_with_dg,
    required_domain,
)
from .laws import (
    LawReport,
    NonConvergenceError,
    verify_fundamental_theorem,
    verify_integration_by_parts,
    verify_inverse_lemmas,
    verify_product_rules,
    verify_quotient_rules,
)

__version__ = "0.1.0"
