from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqcalc import (
    DomainError,
    LimitError,
    LimitPolicy,
    ParameterError,
    PqParams,
    derivative_function,
    pq_derivative,
    pq_derivative_n,
    pq_differential,
)

PARAMS = [PqParams.derivative(2, 3), PqParams.integration(0.8, 0.4)]
POINTS = [0.5, 2.0, 5.0]


def power_rule(n, x, p, q):
    return (x ** ((p - 1) * n) - x ** ((q - 1) * n)) / (x ** (p - 1) - x ** (q - 1)) * x ** (n - 1)


def log_rule(x, p, q):
    return (p - q) * math.log(x) / (x ** p - x ** q)


class TestQuotient:
    def test_square_at_two(self, dp):
        # (2**4 - 2**6) / (2**2 - 2**3) = -48 / -4
        assert pq_derivative(lambda x: x * x, 2.0, dp) == 12.0

    def test_differential(self, dp):
        assert pq_differential(lambda x: x, 2.0, dp) == -4.0

    def test_constant(self, dp):
        assert pq_derivative(lambda x: 7.0, 3.0, dp) == 0.0

    @pytest.mark.parametrize("params", PARAMS)
    @pytest.mark.parametrize("x", POINTS)
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_power_rule(self, params, x, n):
        got = pq_derivative(lambda t: t ** n, x, params)
        assert got == pytest.approx(power_rule(n, x, params.p, params.q), rel=1e-10)

    @pytest.mark.parametrize("params", PARAMS)
    @pytest.mark.parametrize("x", POINTS)
    def test_log_rule(self, params, x):
        got = pq_derivative(math.log, x, params)
        assert got == pytest.approx(log_rule(x, params.p, params.q), rel=1e-10)

    @given(st.floats(0.1, 10.0).filter(lambda x: abs(x - 1.0) > 1e-3),
           st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
    def test_linear(self, x, a, b):
        params = PARAMS[1]
        f, g = math.exp, math.sin
        lhs = pq_derivative(lambda t: a * f(t) + b * g(t), x, params)
        rhs = a * pq_derivative(f, x, params) + b * pq_derivative(g, x, params)
        assert lhs == pytest.approx(rhs, rel=1e-7, abs=1e-7)

    def test_negative_point(self, dp):
        with pytest.raises(DomainError):
            pq_derivative(math.exp, -1.0, dp)


class TestLimits:
    @pytest.mark.parametrize("params", PARAMS)
    def test_square_at_one_is_classical(self, params):
        assert pq_derivative(lambda x: x * x, 1.0, params) == pytest.approx(2.0, abs=1e-6)

    def test_exp_at_one(self, dp):
        assert pq_derivative(math.exp, 1.0, dp) == pytest.approx(math.e, abs=1e-6)

    def test_right_limit_at_zero(self, dp):
        assert pq_derivative(math.exp, 0.0, dp) == pytest.approx(1.0, abs=1e-6)

    def test_kink_at_one_disagrees(self, ip):
        with pytest.raises(LimitError) as info:
            pq_derivative(lambda x: abs(x - 1.0), 1.0, ip)
        assert info.value.left == pytest.approx(-1.0)
        assert info.value.right == pytest.approx(1.0)

    def test_limit_that_never_settles(self, dp):
        policy = LimitPolicy(max_steps=8)
        with pytest.raises(LimitError):
            pq_derivative(lambda x: math.sin(1.0 / abs(x - 1.0)) if x != 1.0 else 0.0, 1.0, dp, policy)

    def test_policy_validation(self):
        with pytest.raises(ParameterError):
            LimitPolicy(shrink=1.0)
        with pytest.raises(ParameterError):
            LimitPolicy(tol=0.0)


class TestClassicalLimit:
    def test_error_shrinks_with_epsilon(self):
        errors = []
        for eps in (1e-2, 1e-3, 1e-4):
            params = PqParams.derivative(1 - eps, 1 - 2 * eps)
            errors.append(abs(pq_derivative(math.exp, 2.0, params) - math.exp(2.0)))
        assert errors[1] * 5 <= errors[0]
        assert errors[2] * 5 <= errors[1]


class TestHigherOrder:
    def test_order_zero_is_value(self, dp):
        assert pq_derivative_n(math.exp, 2.0, 0, dp) == math.exp(2.0)

    def test_second_derivative_of_square(self, dp):
        # with (p, q) = (2, 3): D x**2 = x**2 + x**3, so D^2 x**2 = D x**2 + D x**3
        x = 2.0
        expected = power_rule(2, x, 2.0, 3.0) + power_rule(3, x, 2.0, 3.0)
        assert pq_derivative(lambda t: t * t, x, dp) == pytest.approx(x ** 2 + x ** 3)
        assert pq_derivative_n(lambda t: t * t, x, 2, dp) == pytest.approx(expected, rel=1e-12)

    def test_matches_nested_single_steps(self, ip):
        d1 = derivative_function(math.log, ip)
        direct = pq_derivative_n(math.log, 3.0, 2, ip)
        assert direct == pytest.approx(pq_derivative(d1, 3.0, ip), rel=1e-12)

    def test_rejected_points(self, dp):
        with pytest.raises(DomainError):
            pq_derivative_n(math.exp, 1.0, 2, dp)
        with pytest.raises(ParameterError):
            pq_derivative_n(math.exp, 2.0, -1, dp)
