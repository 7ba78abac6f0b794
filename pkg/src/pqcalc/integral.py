"""Series pq-integrals: antiderivative, definite, Stieltjes-type and improper.

All of them are signed sums of the bilateral term

    T(x, j) = weight(x, j) * f(node(x, j)),    j in Z,

for a suitable base ``x``:

==========================  ==========================================
antiderivative ``H(x)``     ``sum_{j>=0} T(x, j)``
``int_1^b``, ``b > 1``      ``H(b)``
``int_b^1``, ``0 < b < 1``  ``-H(b)``
``int_0^b``, ``0 < b < 1``  ``-sum_{j<=-1} T(b, j)``
``int_1^inf``               ``sum_{j in Z} T(p/q, j)``
``int_0^1``                 ``-sum_{j in Z} T(p, j)``
``int_a^inf``, ``a > 1``    ``sum_{j<=-1} T(a, j)``
==========================  ==========================================

With ``f = D F`` every term collapses to a difference of ``F`` at two adjacent
orbit points, so each partial sum telescopes exactly; the tests use this as
their oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

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
    combine,
    exact,
    exponent,
    node,
    power,
    sum_series,
    weight,
)

ZERO = 0.0
INFINITY = math.inf


class Case(enum.Enum):
    ABOVE_ONE = "AboveOne"
    BELOW_ONE_TO_ONE = "BelowOneToOne"
    ZERO_TO_B = "ZeroToB"
    SPLIT_ACROSS_ONE = "SplitAcrossOne"
    IMPROPER_FROM_ONE = "ImproperFromOne"
    IMPROPER_ZERO_ONE = "ImproperZeroOne"
    IMPROPER_ZERO_INF = "ImproperZeroInf"
    IMPROPER_FROM_A = "ImproperFromA"

    @property
    def improper(self) -> bool:
        return self in _IMPROPER


_IMPROPER = {Case.IMPROPER_FROM_ONE, Case.IMPROPER_ZERO_ONE, Case.IMPROPER_ZERO_INF, Case.IMPROPER_FROM_A}


def classify(lower: float, upper: float) -> Case:
    """Case tag for the bounds ``lower < upper``."""
    if not 0.0 <= lower < upper:
        raise ParameterError(f"bounds must satisfy 0 <= a < b, got a={lower!r}, b={upper!r}")
    if upper == INFINITY:
        if lower == 0.0:
            return Case.IMPROPER_ZERO_INF
        if lower == 1.0:
            return Case.IMPROPER_FROM_ONE
        return Case.IMPROPER_FROM_A
    if lower == 0.0 and upper == 1.0:
        return Case.IMPROPER_ZERO_ONE
    if lower >= 1.0:
        return Case.ABOVE_ONE
    if upper == 1.0:
        return Case.BELOW_ONE_TO_ONE
    if upper < 1.0:
        return Case.ZERO_TO_B
    return Case.SPLIT_ACROSS_ONE


@dataclass(frozen=True)
class IntegralRequest:
    """Bounds plus the case they fall into.

    ``ZERO_TO_B`` also covers ``0 < a < b < 1``, which is evaluated as a
    difference of two integrals from 0.
    """

    lower: float
    upper: float
    case_tag: Optional[Case] = None

    def __post_init__(self):
        lower, upper = float(self.lower), float(self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        found = classify(lower, upper)
        if self.case_tag is None:
            object.__setattr__(self, "case_tag", found)
        elif self.case_tag is not found:
            raise ParameterError(f"bounds ({lower!r}, {upper!r}) belong to {found.value}, not {self.case_tag.value}")


def _term(f: RealFunction, x: float, j: int, params: PqParams) -> float:
    w = weight(x, j, params)
    if w == 0.0:
        # node underflowed onto a fixed point; the term vanishes regardless of f
        return 0.0
    return w * f(node(x, j, params))


def _forward(f: RealFunction, x: float, params: PqParams, config: SeriesConfig) -> SeriesResult:
    return sum_series(lambda j: _term(f, x, j, params), config)


def _backward(f: RealFunction, x: float, params: PqParams, config: SeriesConfig) -> SeriesResult:
    return sum_series(lambda k: _term(f, x, -1 - k, params), config)


def required_domain(lower: float, upper: float, params: PqParams) -> Interval:
    """Interval holding every point at which the integrand will be evaluated.

    For ``b > 1`` the nodes overshoot the integration interval up to
    ``b ** (1/p)``.
    """
    params.require_integration()
    case = classify(lower, upper)
    if case in (Case.IMPROPER_FROM_ONE, Case.IMPROPER_ZERO_INF):
        return Interval(0.0 if case is Case.IMPROPER_ZERO_INF else 1.0, INFINITY, False, False)
    if case is Case.IMPROPER_ZERO_ONE:
        return Interval(0.0, 1.0, False, False)
    if case is Case.IMPROPER_FROM_A:
        if lower > 1.0:
            return Interval(node(lower, -1, params), INFINITY, True, False)
        return Interval(node(lower, 0, params), INFINITY, True, False)
    if case is Case.ZERO_TO_B:
        return Interval(0.0, node(upper, -1, params), False, True)
    lo = 1.0
    lo_closed = False
    if lower == 0.0:
        lo = 0.0
    elif lower < 1.0:
        lo, lo_closed = node(lower, 0, params), True
    if upper > 1.0:
        return Interval(lo, node(upper, 0, params), lo_closed, True)
    return Interval(lo, 1.0, lo_closed, False)


def _check_domain(f: RealFunction, lower: float, upper: float, params: PqParams) -> None:
    needed = required_domain(lower, upper, params)
    if not f.domain.covers(needed):
        raise DomainError(f"{f.name} is defined on {f.domain} but the integral needs {needed}")


def antiderivative_series(f, x: float, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """pq-antiderivative ``H(x) = sum_j weight(x, j) f(node(x, j))``.

    ``H(1) = 0`` exactly. For ``x > 1`` this is the integral from 1 to ``x``;
    for ``0 < x < 1`` it is minus the integral from ``x`` to 1.
    """
    params.require_integration()
    f = as_function(f)
    if x <= 0.0:
        raise DomainError(f"antiderivative needs x > 0, got {x!r}", x)
    if x == 1.0:
        return exact(0.0)
    return _forward(f, x, params, config)


def integral_from_zero(f, b: float, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Integral from 0 to ``0 <= b < 1``, summing toward the fixed point 0."""
    params.require_integration()
    f = as_function(f)
    if not 0.0 <= b < 1.0:
        raise ParameterError(f"integral from 0 needs 0 <= b < 1, got {b!r}")
    if b == 0.0:
        return exact(0.0)
    return _backward(f, b, params, config).scaled(-1.0)


def integral_with_dg(f, g, b: float, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """``int f(x) d_pq g(x)`` from 1 to ``b > 1`` or from 0 to ``0 < b < 1``.

    For ``b > 1`` the ``j``-th term is ``f(node) * (g(b**r**j) - g(b**r**(j+1)))``
    with ``r = q/p``. For ``b < 1`` the orbit runs toward 0 instead, using
    the points ``b**r**-j`` and the node ``b**(r**(-j-1)/p)``; this is the
    node at which ``d_pq g = D g * d_pq x`` holds exactly.
    """
    params.require_integration()
    f, g = as_function(f), as_function(g)
    if b <= 0.0 or b == 1.0:
        raise ParameterError(f"integral_with_dg needs b > 0 and b != 1, got {b!r}")
    r = params.ratio

    if b > 1.0:
        def term(j: int) -> float:
            e = exponent(j, params)
            upper, lower = power(b, e), power(b, e * r)
            if upper == lower:
                return 0.0
            return f(node(b, j, params)) * (g(upper) - g(lower))
    else:
        def term(j: int) -> float:
            e = exponent(-j, params)
            upper, lower = power(b, e), power(b, e / r)
            if upper == lower:
                return 0.0
            return f(node(b, -j - 1, params)) * (g(upper) - g(lower))

    return sum_series(term, config)


def _above_one(f, b, params, config):
    return exact(0.0) if b == 1.0 else _forward(f, b, params, config)


def definite_integral(a: float, b: float, f, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Definite pq-integral over ``[a, b]`` with ``0 <= a <= b < inf``.

    * ``1 <= a < b``: ``int_1^b - int_1^a``.
    * ``0 < a < b = 1``: the series from ``a`` up to 1.
    * ``0 <= a < b < 1``: ``int_0^b - int_0^a``.
    * ``a < 1 < b``: ``int_a^1 + int_1^b``; ``int_0^1`` is the improper
      integral over ``[0, 1]``.

    The integrand is evaluated at ``b ** ((q/p)**j / p)`` for ``b > 1``, so
    ``ln(x) / (x**p - x**q)`` over ``[1, 3]`` gives ``ln 3 / (p - q)``. A
    variant that keeps the denominator at that node (where it cancels the
    weight) but takes the logarithm at ``b ** ((q/p)**j)`` sums
    ``(q/p)**j ln 3`` instead and gives ``p ln 3 / (p - q)``.

    Additivity over ``a < b < c`` holds exactly inside one of ``[1, inf)`` or
    ``[0, 1)``. The integral from 0 and the series toward 1 use different
    grids below 1, so mixing them (e.g. ``[a, 1]`` against ``[a, b] + [b, 1]``)
    agrees only up to a small grid-dependent amount for general ``f``.
    """
    params.require_integration()
    f = as_function(f)
    a, b = float(a), float(b)
    if b == INFINITY:
        raise ParameterError("upper bound is infinite; use improper_integral")
    if a == b and a >= 0.0:
        return exact(0.0)
    case = classify(a, b)
    _check_domain(f, a, b, params)

    if case is Case.ABOVE_ONE:
        return combine([_above_one(f, b, params, config).labeled("[1,b]"),
                        _above_one(f, a, params, config).labeled("[1,a]")], [1.0, -1.0])
    if case is Case.BELOW_ONE_TO_ONE:
        return _forward(f, a, params, config).scaled(-1.0).labeled("[a,1]")
    if case is Case.ZERO_TO_B:
        return combine([integral_from_zero(f, b, params, config).labeled("[0,b]"),
                        integral_from_zero(f, a, params, config).labeled("[0,a]")], [1.0, -1.0])
    if case is Case.IMPROPER_ZERO_ONE:
        return _improper_zero_one(f, params, config)
    # SPLIT_ACROSS_ONE
    left = _improper_zero_one(f, params, config) if a == 0.0 else _forward(f, a, params, config).scaled(-1.0)
    right = _forward(f, b, params, config)
    return combine([left.labeled("[a,1]"), right.labeled("[1,b]")])


def _bilateral(f: RealFunction, base: float, params: PqParams, config: SeriesConfig, sign: float) -> SeriesResult:
    ahead = _forward(f, base, params, config).labeled("j>=0")
    behind = _backward(f, base, params, config).labeled("j<=-1")
    return combine([ahead, behind], [sign, sign])


def _improper_from_one(f, params, config):
    return _bilateral(f, params.p / params.q, params, config, 1.0)


def _improper_zero_one(f, params, config):
    return _bilateral(f, params.p, params, config, -1.0)


def improper_integral(request: IntegralRequest, f, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Improper pq-integral over ``[1, inf)``, ``[0, 1]``, ``[0, inf)`` or ``[a, inf)``.

    Bilateral sums are split into the ``j >= 0`` and ``j <= -1`` halves, each
    summed and judged on its own; a failing half is named in ``detail``.
    For ``a > 1`` the sub-integrals over ``[a**(p/q)**(j-1), a**(p/q)**j]``
    are each a single term ``T(a, -j)``, so the sum is ``sum_{j>=1} T(a, -j)``.
    """
    params.require_integration()
    f = as_function(f)
    case = request.case_tag
    if not case.improper:
        raise ParameterError(f"{case.value} is not an improper case; use definite_integral")
    _check_domain(f, request.lower, request.upper, params)

    if case is Case.IMPROPER_FROM_ONE:
        return _improper_from_one(f, params, config)
    if case is Case.IMPROPER_ZERO_ONE:
        return _improper_zero_one(f, params, config)
    if case is Case.IMPROPER_ZERO_INF:
        return combine([_improper_zero_one(f, params, config).labeled("[0,1]"),
                        _improper_from_one(f, params, config).labeled("[1,inf)")])
    a = request.lower
    if a > 1.0:
        return _backward(f, a, params, config).labeled("j<=-1")
    return combine([_forward(f, a, params, config).scaled(-1.0).labeled("[a,1]"),
                    _improper_from_one(f, params, config).labeled("[1,inf)")])


class InnerNonConvergence(PqError):
    def __init__(self, result: SeriesResult, depth: int, point: float):
        super().__init__(f"inner integral at depth {depth}, x={point!r}: {result.status.value}")
        self.result = result
        self.depth = depth
        self.point = point


def integral_n(f, b: float, n: int, params: PqParams, config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """``n``-fold iterate of the integral from 0, evaluated at ``0 < b < 1``.

    Inner values are memoized per call. If an inner integral fails to
    converge the outer result carries that status and names the depth.
    """
    params.require_integration()
    f = as_function(f)
    if n < 0:
        raise ParameterError(f"integral order must be >= 0, got {n}")
    if not 0.0 < b < 1.0:
        raise ParameterError(f"integral_n needs 0 < b < 1, got {b!r}")
    if n == 0:
        return exact(f(b))

    cache: Dict[tuple, float] = {}

    def level(k: int) -> RealFunction:
        if k == 0:
            return f

        inner = level(k - 1)

        def value(y: float) -> float:
            key = (k, y)
            if key not in cache:
                res = integral_from_zero(inner, y, params, config)
                if not res.converged:
                    raise InnerNonConvergence(res, n - k + 1, y)
                cache[key] = res.value
            return cache[key]

        return RealFunction(value, f.domain, f"I^{k} {f.name}")

    try:
        return integral_from_zero(level(n - 1), b, params, config)
    except InnerNonConvergence as exc:
        return SeriesResult(math.nan, exc.result.terms_used, exc.result.status, exc.result.tail_estimate, str(exc))


@dataclass(frozen=True)
class HypothesisCheck:
    """Outcome of a sampled boundedness test; advisory only."""

    alpha: float
    sample_count: int
    verdict: bool
    bound_M: Optional[float] = None
    r: Optional[float] = None
    witness: Optional[float] = None
    reason: str = ""


_FINEST = 12


def _sample(f: RealFunction, x: float) -> Optional[float]:
    """``f(x)``; ``None`` when x lies outside the domain."""
    if not f.domain.contains(x):
        return None
    return f(x)


def check_theorem1_hypothesis(f, alpha: float, A: float, params: PqParams, sample_count: int = 2000) -> HypothesisCheck:
    """Is ``|f(x) x**alpha|`` bounded on ``(0, A**(1/p)]``?

    Samples a log-spaced grid and three approach sequences (toward 1 from
    either side, toward 0 from the right). Growth by more than 10x across
    the three finest decades of an approach sequence counts as a blow-up.
    """
    params.require_integration()
    f = as_function(f)
    if not 0.0 <= alpha < 1.0:
        raise ParameterError(f"alpha must lie in [0, 1), got {alpha!r}")
    if not A > 1.0:
        raise ParameterError(f"A must exceed 1, got {A!r}")
    top = A ** (1.0 / params.p)

    def g(x: float) -> Optional[float]:
        v = _sample(f, x)
        return None if v is None else abs(v) * x ** alpha

    steps = 10.0 ** -np.arange(1, _FINEST + 1)
    approaches = [
        ("x -> 1+", 1.0 + steps),
        ("x -> 1-", 1.0 - steps),
        ("x -> 0+", steps),
    ]
    biggest = 0.0
    for label, xs in approaches:
        try:
            vals = [(x, g(float(x))) for x in xs]
        except (PqError, ArithmeticError, ValueError) as exc:
            return HypothesisCheck(alpha, sample_count, False, witness=getattr(exc, "point", None), reason=f"{label}: {exc}")
        vals = [(x, v) for x, v in vals if v is not None]
        for x, v in vals:
            if not math.isfinite(v):
                return HypothesisCheck(alpha, sample_count, False, witness=float(x), reason=f"{label}: non-finite value")
        if len(vals) >= 4:
            (_, coarse), (x_fine, fine) = vals[-4], vals[-1]
            if fine > 10.0 * coarse:
                return HypothesisCheck(alpha, sample_count, False, witness=float(x_fine),
                                       reason=f"{label}: grew {fine / coarse if coarse else math.inf:.3g}x over three decades")
        biggest = max([biggest] + [v for _, v in vals])

    for x in np.geomspace(10.0 ** -_FINEST, top, sample_count):
        try:
            v = g(float(x))
        except (PqError, ArithmeticError, ValueError) as exc:
            return HypothesisCheck(alpha, sample_count, False, witness=float(x), reason=str(exc))
        if v is None:
            continue
        if not math.isfinite(v):
            return HypothesisCheck(alpha, sample_count, False, witness=float(x), reason="non-finite value")
        biggest = max(biggest, v)
    return HypothesisCheck(alpha, sample_count, True, bound_M=biggest)


def check_improper_hypothesis(
    f,
    alpha_near_one: float,
    alpha_large_x: float,
    r: float,
    params: PqParams,
    sample_count: int = 400,
    epsilon: float = 0.5,
) -> HypothesisCheck:
    """Sampled test of ``|f(x)| < min(r x**a, |x**(1/p) - x**(1/q)|**-1 |ln x|**(2a))``.

    ``a = alpha_near_one`` on ``(1, (p/q)**(1/p)]``, the span of the
    ``j >= 0`` nodes of the integral over ``[1, inf)``; ``a = alpha_large_x``
    on a geometric grid over ``[(p/q)**20, (p/q)**40]``. The result's
    ``alpha`` is ``alpha_large_x``; ``reason`` names the region that failed.
    """
    params.require_integration()
    f = as_function(f)
    if not 0.0 <= alpha_near_one < 1.0:
        raise ParameterError(f"alpha_near_one must lie in [0, 1), got {alpha_near_one!r}")
    if not -epsilon <= alpha_large_x < 0.0:
        raise ParameterError(f"alpha_large_x must lie in [-{epsilon}, 0), got {alpha_large_x!r}")
    if not r > 0.0:
        raise ParameterError(f"r must be positive, got {r!r}")
    p, q = params.p, params.q
    base = p / q

    def bound(x: float, a: float) -> float:
        ln_x = math.log(x)
        gap = abs(x ** (1.0 / p) - x ** (1.0 / q))
        second = abs(ln_x) ** (2.0 * a) / gap if gap > 0.0 else math.inf
        return min(r * x ** a, second)

    near = 1.0 + np.geomspace(1e-8, base ** (1.0 / p) - 1.0, sample_count)
    far = np.geomspace(base ** 20, base ** 40, sample_count)
    for xs, a, label in ((near, alpha_near_one, "near 1"), (far, alpha_large_x, "large x")):
        for x in xs:
            x = float(x)
            try:
                v = _sample(f, x)
            except (PqError, ArithmeticError, ValueError) as exc:
                return HypothesisCheck(alpha_large_x, sample_count, False, r=r, witness=x, reason=f"{label}: {exc}")
            if v is None:
                continue
            if not abs(v) < bound(x, a):
                return HypothesisCheck(alpha_large_x, sample_count, False, r=r, witness=x,
                                       reason=f"{label}: |f|={abs(v):.6g} >= bound {bound(x, a):.6g}")
    return HypothesisCheck(alpha_large_x, sample_count, True, r=r)
