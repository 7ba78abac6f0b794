"""Parameters, function wrappers, orbit arithmetic and series summation.

Everything in the integral module is built from two quantities attached to a
point ``x > 0`` and an integer ``j``:

* the *node* ``x ** ((q/p)**j / p)``, where the integrand is evaluated, and
* the *weight* ``x ** ((q/p)**j) - x ** ((q/p)**(j+1))``, the pq-differential
  of the identity at that node.

Powers are taken in log space so that exponents such as ``(q/p)**-60`` do not
overflow before the final ``exp``.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional


class PqError(Exception):
    """Base class for every error raised by :mod:`pqcalc`."""


class ParameterError(PqError, ValueError):
    """Invalid ``(p, q)`` pair, configuration or bounds."""


class DomainError(PqError, ValueError):
    """A function was queried outside its declared domain."""

    def __init__(self, message: str, point: Optional[float] = None):
        super().__init__(message)
        self.point = point


class RangeError(PqError, OverflowError):
    """A power or exponent left the representable floating point range."""


class EvaluationError(PqError, ArithmeticError):
    """A user function raised an arithmetic fault at a point."""

    def __init__(self, message: str, point: Optional[float] = None):
        super().__init__(message)
        self.point = point


class NonFiniteTermError(PqError, ArithmeticError):
    """A series term was ``inf``/``nan`` or could not be evaluated."""

    def __init__(self, j: int, message: str):
        super().__init__(f"term j={j}: {message}")
        self.j = j


class Mode(enum.Enum):
    DERIVATIVE = "derivative"
    INTEGRATION = "integration"


@dataclass(frozen=True)
class PqParams:
    """The fixed pair ``(p, q)``.

    Derivative mode only needs ``p != 1``, ``q != 1`` and ``p != q``.
    Integration mode additionally requires ``0 < q < p < 1`` so that the
    ratio ``q/p`` lies in ``(0, 1)`` and every orbit contracts toward 1.
    """

    p: float
    q: float
    mode: Mode = Mode.DERIVATIVE

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise ParameterError(f"p and q must be finite, got p={p}, q={q}")
        if p == 1.0 or q == 1.0:
            raise ParameterError(f"p and q must differ from 1, got p={p}, q={q}")
        if p == q:
            raise ParameterError(f"p and q must differ, got p=q={p}")
        if self.mode is Mode.INTEGRATION and not 0.0 < q < p < 1.0:
            raise ParameterError(f"integration mode needs 0 < q < p < 1, got p={p}, q={q}")

    @classmethod
    def derivative(cls, p: float, q: float) -> "PqParams":
        return cls(p, q, Mode.DERIVATIVE)

    @classmethod
    def integration(cls, p: float, q: float) -> "PqParams":
        return cls(p, q, Mode.INTEGRATION)

    @property
    def ratio(self) -> float:
        return self.q / self.p

    @property
    def log_ratio(self) -> float:
        return math.log(self.q) - math.log(self.p)

    def require_integration(self) -> None:
        if self.mode is not Mode.INTEGRATION:
            raise ParameterError("operation needs integration-mode parameters (0 < q < p < 1)")


@dataclass(frozen=True)
class Interval:
    """A subinterval of ``[0, inf]`` with open/closed flags."""

    lo: float = 0.0
    hi: float = math.inf
    lo_closed: bool = True
    hi_closed: bool = False

    def contains(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def covers(self, other: "Interval") -> bool:
        lo_ok = self.lo < other.lo or (self.lo == other.lo and (self.lo_closed or not other.lo_closed))
        hi_ok = self.hi > other.hi or (self.hi == other.hi and (self.hi_closed or not other.hi_closed))
        return lo_ok and hi_ok

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.17g}, {self.hi:.17g}{right}"


POSITIVE_REALS = Interval(0.0, math.inf, lo_closed=False)


class RealFunction:
    """A real function of a nonnegative variable with a declared domain.

    Calls outside ``domain`` raise :class:`DomainError`; arithmetic faults
    inside the wrapped callable are re-raised as :class:`EvaluationError`.
    """

    def __init__(self, func: Callable[[float], float], domain: Interval = Interval(), name: Optional[str] = None):
        if isinstance(func, RealFunction):
            func = func.func
        self.func = func
        self.domain = domain
        self.name = name or getattr(func, "__name__", "f")

    def __call__(self, x: float) -> float:
        if not self.domain.contains(x):
            raise DomainError(f"{self.name} queried at x={x!r} outside its domain {self.domain}", x)
        try:
            return float(self.func(x))
        except (ArithmeticError, ValueError) as exc:
            if isinstance(exc, PqError):
                raise
            raise EvaluationError(f"{self.name}({x!r}) failed: {exc}", x) from exc

    def __repr__(self) -> str:
        return f"RealFunction({self.name}, domain={self.domain})"


def as_function(f, domain: Optional[Interval] = None) -> RealFunction:
    """Wrap a plain callable; :class:`RealFunction` instances pass through."""
    if isinstance(f, RealFunction) and domain is None:
        return f
    if domain is None:
        domain = Interval()
    return RealFunction(f, domain)


def power(x: float, e: float) -> float:
    """``x ** e`` for ``x > 0`` computed as ``exp(e * ln x)``."""
    if x == 1.0 or e == 0.0:
        return 1.0
    if x <= 0.0:
        raise DomainError(f"power needs x > 0, got {x!r}", x)
    try:
        return math.exp(e * math.log(x))
    except OverflowError:
        raise RangeError(f"x**e overflows for x={x!r}, e={e!r}") from None


def exponent(j: int, params: PqParams) -> float:
    """``(q/p) ** j`` for any integer ``j``."""
    params.require_integration()
    if j == 0:
        return 1.0
    try:
        return math.exp(j * params.log_ratio)
    except OverflowError:
        raise RangeError(f"(q/p)**{j} overflows") from None


def node(x: float, j: int, params: PqParams) -> float:
    """Evaluation point ``x ** ((q/p)**j / p)`` of the ``j``-th series term."""
    if x <= 0.0:
        raise DomainError(f"node needs x > 0, got {x!r}", x)
    return power(x, exponent(j, params) / params.p)


def weight(x: float, j: int, params: PqParams) -> float:
    """``x ** ((q/p)**j) - x ** ((q/p)**(j+1))`` without cancellation.

    Partial sums over ``j = 0..N`` telescope to ``x - x ** ((q/p)**(N+1))``.
    """
    if x <= 0.0:
        raise DomainError(f"weight needs x > 0, got {x!r}", x)
    if x == 1.0:
        return 0.0
    e = exponent(j, params)
    log_x = math.log(x)
    upper = e * log_x
    lower = e * params.ratio * log_x
    try:
        return math.exp(lower) * math.expm1(upper - lower)
    except OverflowError:
        raise RangeError(f"weight overflows at x={x!r}, j={j}") from None


def orbit_range(x: float, params: PqParams) -> Interval:
    """Closure of the forward orbit ``{node(x, j) : j >= 0}``.

    The orbit starts at ``x ** (1/p)``, which lies beyond ``x`` itself, and
    accumulates at 1 without reaching it.
    """
    params.require_integration()
    if x == 1.0:
        return Interval(1.0, 1.0, True, True)
    start = node(x, 0, params)
    if x > 1.0:
        return Interval(1.0, start, lo_closed=False, hi_closed=True)
    return Interval(start, 1.0, lo_closed=True, hi_closed=False)


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_TERMS_EXCEEDED = "MaxTermsExceeded"
    DIVERGENCE_DETECTED = "DivergenceDetected"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]


_SEVERITY = {
    Status.CONVERGED: 0,
    Status.MAX_TERMS_EXCEEDED: 1,
    Status.DIVERGENCE_DETECTED: 2,
}


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_terms: int = 100_000
    consecutive_small: int = 3
    divergence_bound: float = 1e12

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("rel_tol and abs_tol must be positive")
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise ParameterError("max_terms and consecutive_small must be >= 1")
        if not self.divergence_bound > 0:
            raise ParameterError("divergence_bound must be positive")

    @property
    def probe_window(self) -> int:
        return 10 * self.consecutive_small


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a summation.

    ``value`` is the limit only when ``status`` is ``CONVERGED``; otherwise it
    is the last partial sum.
    """

    value: float
    terms_used: int
    status: Status
    tail_estimate: float
    detail: str = field(default="", compare=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def scaled(self, sign: float) -> "SeriesResult":
        return SeriesResult(sign * self.value, self.terms_used, self.status, self.tail_estimate, self.detail)

    def labeled(self, label: str) -> "SeriesResult":
        """Prefix a non-converged result's detail with ``label``."""
        if self.converged:
            return self
        detail = f"{label}: {self.status.value}" + (f" ({self.detail})" if self.detail else "")
        return SeriesResult(self.value, self.terms_used, self.status, self.tail_estimate, detail)


def exact(value: float) -> SeriesResult:
    """A result that needed no summation."""
    return SeriesResult(float(value), 0, Status.CONVERGED, 0.0)


def combine(parts: Iterable[SeriesResult], signs: Optional[Iterable[float]] = None) -> SeriesResult:
    """Signed sum of several results; the worst status wins and tails add."""
    parts = list(parts)
    signs = [1.0] * len(parts) if signs is None else list(signs)
    value = math.fsum(s * r.value for s, r in zip(signs, parts))
    status = max((r.status for r in parts), key=lambda s: s.severity, default=Status.CONVERGED)
    details = "; ".join(r.detail for r in parts if r.detail and not r.converged)
    return SeriesResult(
        value,
        sum(r.terms_used for r in parts),
        status,
        sum(r.tail_estimate for r in parts),
        details,
    )


_NOISE = 1e-9


def _tail_estimate(recent: deque, k: int) -> float:
    last = list(recent)[-(k + 1):]
    biggest = max(last[-k:])
    ratios = [b / a for a, b in zip(last, last[1:]) if a > 0.0]
    if len(ratios) == k:
        rho = max(ratios)
        if rho < 1.0:
            return biggest * max(1.0, rho / (1.0 - rho))
    return biggest


def sum_series(term: Callable[[int], float], config: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Sum ``term(0) + term(1) + ...`` with convergence and divergence detection.

    Converged once the last ``consecutive_small`` terms are all below
    ``abs_tol + rel_tol * (1 + |partial|)``; when those terms decay with a
    ratio ``rho`` close to 1 the bound is applied to the geometric tail
    estimate ``|term| * rho / (1 - rho)`` instead of the bare term. Divergence is declared when the
    partial sum exceeds ``divergence_bound``, or when over the last
    ``10 * consecutive_small`` terms the largest magnitude sits in the newer
    half of the window, i.e. the terms stopped decaying. The latter is a
    heuristic, not a proof of divergence.
    """
    window = config.probe_window
    half = window // 2
    recent = deque(maxlen=max(window, config.consecutive_small + 1))
    partial = 0.0
    for j in range(config.max_terms):
        try:
            t = float(term(j))
        except (ArithmeticError, ValueError) as exc:
            if isinstance(exc, (DomainError, ParameterError)):
                raise
            raise NonFiniteTermError(j, str(exc)) from exc
        if not math.isfinite(t):
            raise NonFiniteTermError(j, f"value {t!r}")
        partial += t
        recent.append(abs(t))
        n = j + 1
        tail = _tail_estimate(recent, config.consecutive_small)
        if abs(partial) > config.divergence_bound:
            return SeriesResult(partial, n, Status.DIVERGENCE_DETECTED, tail, "partial sum exceeded bound")
        if n >= config.consecutive_small and tail <= config.abs_tol + config.rel_tol * (1.0 + abs(partial)):
            return SeriesResult(partial, n, Status.CONVERGED, tail)
        if n >= window:
            probe = list(recent)[-window:]
            older = max(probe[:half])
            newer = max(probe[half:])
            if older > 0.0 and newer >= older * (1.0 - _NOISE):
                return SeriesResult(partial, n, Status.DIVERGENCE_DETECTED, tail, "terms stopped decaying")
    tail = _tail_estimate(recent, config.consecutive_small)
    return SeriesResult(partial, config.max_terms, Status.MAX_TERMS_EXCEEDED, tail)
