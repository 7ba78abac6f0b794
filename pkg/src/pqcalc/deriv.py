"""pq-differential and pq-derivative.

``D f(x) = (f(x**p) - f(x**q)) / (x**p - x**q)`` away from the fixed points
``x = 0`` and ``x = 1``. At those two points the derivative is a limit, which
is approximated by Richardson extrapolation of ``D f`` sampled along
``x0 +/- h_k`` with geometrically shrinking steps ``h_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional

from .core import DomainError, ParameterError, PqError, PqParams, RealFunction, as_function

__all__ = [
    "LimitError",
    "LimitPolicy",
    "pq_differential",
    "pq_derivative",
    "pq_derivative_n",
    "derivative_function",
]

_MAX_ORDER = 8


class LimitError(PqError, ArithmeticError):
    """The sequence approaching 0 or 1 did not stabilize.

    ``window`` holds the last estimates of the failing side. At ``x = 1``
    ``left`` and ``right`` carry the one-sided estimates when both exist.
    """

    def __init__(self, message: str, window=(), left: Optional[float] = None, right: Optional[float] = None):
        super().__init__(message)
        self.window = list(window)
        self.left = left
        self.right = right


@dataclass(frozen=True)
class LimitPolicy:
    seq_start: float = 0.5
    shrink: float = 0.5
    max_steps: int = 60
    stability_window: int = 3
    tol: float = 1e-9

    def __post_init__(self):
        if not 0.0 < self.shrink < 1.0:
            raise ParameterError("shrink must lie in (0, 1)")
        if not self.tol > 0.0:
            raise ParameterError("tol must be positive")
        if self.seq_start <= 0.0 or self.max_steps < 1 or self.stability_window < 1:
            raise ParameterError("seq_start, max_steps and stability_window must be positive")


DEFAULT_POLICY = LimitPolicy()


def pq_differential(f, x: float, params: PqParams) -> float:
    """``f(x**p) - f(x**q)``."""
    f = as_function(f)
    return f(x ** params.p) - f(x ** params.q)


def _quotient(f: RealFunction, x: float, params: PqParams) -> float:
    xp, xq = x ** params.p, x ** params.q
    den = xp - xq
    if den == 0.0:
        raise DomainError(f"x**p == x**q in floating point at x={x!r}; use the limit at 0 or 1", x)
    return (f(xp) - f(xq)) / den


def _one_sided_limit(g: Callable[[float], float], x0: float, direction: int, policy: LimitPolicy) -> float:
    estimates: List[float] = []
    prev: List[float] = []
    for k in range(policy.max_steps):
        h = policy.seq_start * policy.shrink ** k
        row = [g(x0 + direction * h)]
        for m in range(1, min(k, _MAX_ORDER) + 1):
            fac = policy.shrink ** m
            row.append((row[m - 1] - fac * prev[m - 1]) / (1.0 - fac))
        prev = row
        estimates.append(row[-1])
        window = estimates[-policy.stability_window:]
        if len(window) == policy.stability_window:
            spread = max(window) - min(window)
            if math.isfinite(spread) and spread <= policy.tol * max(1.0, abs(window[-1])):
                return window[-1]
    side = "right" if direction > 0 else "left"
    raise LimitError(
        f"limit did not converge at x={x0!r} from the {side}",
        window=estimates[-policy.stability_window:],
    )


def pq_derivative(f, x: float, params: PqParams, policy: LimitPolicy = DEFAULT_POLICY) -> float:
    """pq-derivative of ``f`` at ``x >= 0``.

    At ``x = 1`` both one-sided limits are extrapolated and must agree; at
    ``x = 0`` only the right-hand limit exists.
    """
    f = as_function(f)
    if x < 0.0:
        raise DomainError(f"pq_derivative needs x >= 0, got {x!r}", x)
    if x == 0.0:
        return _one_sided_limit(lambda t: _quotient(f, t, params), 0.0, +1, policy)
    if x != 1.0:
        return _quotient(f, x, params)

    g = lambda t: _quotient(f, t, params)  # noqa: E731
    right = _one_sided_limit(g, 1.0, +1, policy)
    # left-hand points must stay positive
    left_policy = policy if policy.seq_start < 1.0 else replace(policy, seq_start=0.5)
    try:
        left = _one_sided_limit(g, 1.0, -1, left_policy)
    except LimitError as exc:
        raise LimitError(str(exc), exc.window, right=right) from None
    if abs(left - right) > 10.0 * policy.tol * max(1.0, abs(left), abs(right)):
        raise LimitError(
            f"one-sided limits at x=1 disagree: left={left!r}, right={right!r}",
            window=(left, right),
            left=left,
            right=right,
        )
    return 0.5 * (left + right)


def pq_derivative_n(f, x: float, n: int, params: PqParams) -> float:
    """``n``-th iterate of the pq-derivative at ``x`` outside ``{0, 1}``.

    The recursion evaluates ``f`` at the ``2**n`` points ``x**(p**i q**(n-i))``
    (with multiplicity).
    """
    if n < 0:
        raise ParameterError(f"derivative order must be >= 0, got {n}")
    f = as_function(f)
    if n == 0:
        return f(x)
    if x <= 0.0 or x == 1.0:
        raise DomainError(f"higher-order pq-derivative is defined only for x outside {{0, 1}}, got {x!r}", x)
    inner = RealFunction(lambda y: pq_derivative_n(f, y, n - 1, params), f.domain, f"D^{n - 1} {f.name}")
    return _quotient(inner, x, params)


def derivative_function(f, params: PqParams, policy: LimitPolicy = DEFAULT_POLICY, name: Optional[str] = None) -> RealFunction:
    """``D f`` as a :class:`RealFunction`, ready to be integrated."""
    f = as_function(f)
    return RealFunction(lambda x: pq_derivative(f, x, params, policy), f.domain, name or f"D {f.name}")
