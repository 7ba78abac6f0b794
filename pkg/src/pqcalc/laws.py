"""Numerical checks of the structural identities of pq-calculus.

Each ``verify_*`` function evaluates both sides of an identity independently
at a list of points (or interval pairs) and reports the largest absolute
residual together with the point where it occurred.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

from .core import (
    DEFAULT_CONFIG,
    DomainError,
    Interval,
    ParameterError,
    PqError,
    PqParams,
    RealFunction,
    SeriesConfig,
    SeriesResult,
    as_function,
)
from .deriv import derivative_function, pq_derivative
from .integral import (
    INFINITY,
    IntegralRequest,
    antiderivative_series,
    definite_integral,
    improper_integral,
    integral_from_zero,
)

Point = Union[float, Tuple[float, float]]


class NonConvergenceError(PqError, ArithmeticError):
    """A series needed by a law check did not converge."""

    def __init__(self, what: str, result: SeriesResult):
        super().__init__(f"{what}: {result.status.value}" + (f" ({result.detail})" if result.detail else ""))
        self.result = result


@dataclass(frozen=True)
class LawReport:
    law_name: str
    sample_points: Tuple[Point, ...]
    residuals: Tuple[float, ...]
    max_residual: float
    tolerance: float
    passed: bool
    worst_point: Point

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.law_name}: max residual {self.max_residual:.3e} (tol {self.tolerance:.1e}) at {self.worst_point}"


def _report(name: str, points: Sequence[Point], residuals: Sequence[float], tol: float) -> LawReport:
    if not points:
        raise ParameterError(f"{name}: no sample points")
    worst = max(range(len(residuals)), key=lambda i: residuals[i])
    max_residual = residuals[worst]
    return LawReport(name, tuple(points), tuple(residuals), max_residual, tol, max_residual <= tol, points[worst])


def _intersect(a: Interval, b: Interval) -> Interval:
    lo, lo_closed = max((a.lo, not a.lo_closed), (b.lo, not b.lo_closed))
    hi, hi_closed = min((a.hi, a.hi_closed), (b.hi, b.hi_closed))
    return Interval(lo, hi, not lo_closed, hi_closed)


def _product(f: RealFunction, g: RealFunction) -> RealFunction:
    return RealFunction(lambda x: f(x) * g(x), _intersect(f.domain, g.domain), f"({f.name})*({g.name})")


def _value(what: str, result: SeriesResult) -> float:
    if not result.converged:
        raise NonConvergenceError(what, result)
    return result.value


def _check_points(xs: Iterable[float], name: str) -> list:
    xs = [float(x) for x in xs]
    for x in xs:
        if x <= 0.0 or x == 1.0:
            raise DomainError(f"{name}: sample points must avoid 0 and 1, got {x!r}", x)
    return xs


def verify_product_rules(f, g, xs: Iterable[float], params: PqParams, tol: float = 1e-10) -> LawReport:
    """``D(fg) = g(x^p) Df + f(x^q) Dg`` and ``D(fg) = g(x^q) Df + f(x^p) Dg``."""
    f, g = as_function(f), as_function(g)
    xs = _check_points(xs, "product rules")
    fg = _product(f, g)
    residuals = []
    for x in xs:
        xp, xq = x ** params.p, x ** params.q
        lhs = pq_derivative(fg, x, params)
        df, dg = pq_derivative(f, x, params), pq_derivative(g, x, params)
        first = g(xp) * df + f(xq) * dg
        second = g(xq) * df + f(xp) * dg
        residuals.append(max(abs(lhs - first), abs(lhs - second)))
    return _report("product rules", xs, residuals, tol)


def verify_quotient_rules(f, g, xs: Iterable[float], params: PqParams, tol: float = 1e-10) -> LawReport:
    """Both quotient rules; ``g`` must not vanish at ``x^p`` or ``x^q``."""
    f, g = as_function(f), as_function(g)
    xs = _check_points(xs, "quotient rules")
    residuals = []
    for x in xs:
        xp, xq = x ** params.p, x ** params.q
        gp, gq = g(xp), g(xq)
        for point, value in ((xp, gp), (xq, gq)):
            if value == 0.0:
                raise DomainError(f"quotient rules: {g.name} vanishes at node {point!r}", point)
        ratio = RealFunction(lambda t: f(t) / g(t), _intersect(f.domain, g.domain), f"({f.name})/({g.name})")
        lhs = pq_derivative(ratio, x, params)
        df, dg = pq_derivative(f, x, params), pq_derivative(g, x, params)
        first = (gq * df - f(xq) * dg) / (gq * gp)
        second = (gp * df - f(xp) * dg) / (gq * gp)
        residuals.append(max(abs(lhs - first), abs(lhs - second)))
    return _report("quotient rules", xs, residuals, tol)


def verify_inverse_lemmas(
    f, xs: Iterable[float], params: PqParams, config: SeriesConfig = DEFAULT_CONFIG, tol: float = 1e-8
) -> LawReport:
    """Derivative and integral undo each other up to boundary values.

    For ``x > 1``: ``D I+ f = f`` and ``I+ D f = f(x) - f(1)``.
    For ``0 < x < 1``: ``D I-- f = -f``, ``I-- D f = f(1) - f(x)``,
    ``D I f = f`` and ``I D f = f(x) - f(0)``.
    """
    params.require_integration()
    f = as_function(f)
    xs = _check_points(xs, "inverse lemmas")
    df = derivative_function(f, params)

    def upper(y: float) -> float:
        return _value(f"I+ f({y!r})", antiderivative_series(f, y, params, config))

    def lower(y: float) -> float:
        return -_value(f"I-- f({y!r})", antiderivative_series(f, y, params, config))

    def from_zero(y: float) -> float:
        return _value(f"I f({y!r})", integral_from_zero(f, y, params, config))

    residuals = []
    for x in xs:
        if x > 1.0:
            plus = RealFunction(upper, Interval(1.0, INFINITY), "I+ f")
            r1 = pq_derivative(plus, x, params) - f(x)
            r2 = _value("I+ D f", antiderivative_series(df, x, params, config)) - (f(x) - f(1.0))
            residuals.append(max(abs(r1), abs(r2)))
        else:
            minus = RealFunction(lower, Interval(0.0, 1.0, False, False), "I-- f")
            zero = RealFunction(from_zero, Interval(0.0, 1.0, True, False), "I f")
            r1 = pq_derivative(minus, x, params) + f(x)
            r2 = -_value("I-- D f", antiderivative_series(df, x, params, config)) - (f(1.0) - f(x))
            r3 = pq_derivative(zero, x, params) - f(x)
            r4 = _value("I D f", integral_from_zero(df, x, params, config)) - (f(x) - f(0.0))
            residuals.append(max(abs(r1), abs(r2), abs(r3), abs(r4)))
    return _report("inverse lemmas", xs, residuals, tol)


def verify_fundamental_theorem(
    F,
    pairs: Iterable[Tuple[float, float]],
    params: PqParams,
    config: SeriesConfig = DEFAULT_CONFIG,
    tol: float = 1e-8,
    limit_at_infinity: Optional[float] = None,
) -> LawReport:
    """``int_a^b D F d_pq x = F(b) - F(a)``; ``b`` may be infinite.

    For ``b = inf`` the limit of ``F`` at infinity must be supplied.
    """
    params.require_integration()
    F = as_function(F)
    f = derivative_function(F, params)
    pairs = [(float(a), float(b)) for a, b in pairs]
    residuals = []
    for a, b in pairs:
        if b == INFINITY:
            if limit_at_infinity is None:
                raise ParameterError("an infinite upper bound needs limit_at_infinity")
            value = _value(f"integral over [{a}, inf)", improper_integral(IntegralRequest(a, b), f, params, config))
            expected = limit_at_infinity - F(a)
        else:
            value = _value(f"integral over [{a}, {b}]", definite_integral(a, b, f, params, config))
            expected = F(b) - F(a)
        residuals.append(abs(value - expected))
    return _report("fundamental theorem", pairs, residuals, tol)


def stieltjes(phi, g, a: float, b: float, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """``int_a^b phi(x) d_pq g(x)`` as the integral of ``phi * D g``."""
    phi, g = as_function(phi), as_function(g)
    return definite_integral(a, b, _product(phi, derivative_function(g, params)), params, config)


def verify_integration_by_parts(
    f, g, pairs: Iterable[Tuple[float, float]], params: PqParams, config: SeriesConfig = DEFAULT_CONFIG, tol: float = 1e-8
) -> LawReport:
    """Both integration-by-parts formulas.

    ``int f(x^q) d g + int g(x^p) d f = fg(b) - fg(a)`` and the same with
    ``p`` and ``q`` exchanged; every integral is summed on its own.
    """
    params.require_integration()
    f, g = as_function(f), as_function(g)
    p, q = params.p, params.q
    f_q = RealFunction(lambda x: f(x ** q), f.domain, f"{f.name}(x^q)")
    f_p = RealFunction(lambda x: f(x ** p), f.domain, f"{f.name}(x^p)")
    g_q = RealFunction(lambda x: g(x ** q), g.domain, f"{g.name}(x^q)")
    g_p = RealFunction(lambda x: g(x ** p), g.domain, f"{g.name}(x^p)")
    pairs = [(float(a), float(b)) for a, b in pairs]
    residuals = []
    for a, b in pairs:
        boundary = f(b) * g(b) - f(a) * g(a)
        first = _value("int f(x^q) dg", stieltjes(f_q, g, a, b, params, config)) + _value(
            "int g(x^p) df", stieltjes(g_p, f, a, b, params, config)
        )
        second = _value("int f(x^p) dg", stieltjes(f_p, g, a, b, params, config)) + _value(
            "int g(x^q) df", stieltjes(g_q, f, a, b, params, config)
        )
        residuals.append(max(abs(first - boundary), abs(second - boundary)))
    return _report("integration by parts", pairs, residuals, tol)
