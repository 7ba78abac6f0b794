from __future__ import annotations

import math

import pytest

from pqcalc import (
    INFINITY,
    DomainError,
    Interval,
    LawReport,
    NonConvergenceError,
    ParameterError,
    RealFunction,
    SeriesConfig,
    verify_fundamental_theorem,
    verify_integration_by_parts,
    verify_inverse_lemmas,
    verify_product_rules,
    verify_quotient_rules,
)
from pqcalc.laws import stieltjes

POSITIVE = Interval(0.0, math.inf, False, False)
POINTS = [0.3, 0.7, 1.5, 3.0]


def cube(x):
    return x ** 3


def shifted_cos(x):
    return 2.0 + math.cos(x)


class TestPointLaws:
    @pytest.mark.parametrize("params_name", ["ip", "dp"])
    def test_product_rules(self, request, params_name):
        params = request.getfixturevalue(params_name)
        xs = POINTS if params.p < 1 else POINTS[:3]  # x**3 grows fast when p, q > 1
        report = verify_product_rules(math.exp, shifted_cos, xs, params)
        assert report.passed, str(report)
        assert len(report.residuals) == len(xs)

    def test_quotient_rules(self, ip):
        assert verify_quotient_rules(cube, shifted_cos, POINTS, ip).passed

    def test_quotient_names_vanishing_node(self, ip):
        with pytest.raises(DomainError) as info:
            verify_quotient_rules(math.exp, lambda x: x - 2.0 ** 0.8, [2.0], ip)
        assert info.value.point == pytest.approx(2.0 ** 0.8)

    def test_failed_report(self, ip):
        report = verify_product_rules(math.exp, shifted_cos, [2.0], ip, tol=-1.0)
        assert not report.passed
        assert str(report).startswith("FAIL")

    def test_points_must_avoid_fixed_points(self, ip):
        with pytest.raises(DomainError):
            verify_product_rules(math.exp, math.exp, [1.0], ip)

    def test_empty_corpus(self, ip):
        with pytest.raises(ParameterError):
            verify_product_rules(math.exp, math.exp, [], ip)


class TestSeriesLaws:
    def test_inverse_lemmas(self, ip):
        report = verify_inverse_lemmas(math.exp, POINTS, ip)
        assert report.passed, str(report)

    def test_inverse_lemmas_need_integration_mode(self, dp):
        with pytest.raises(ParameterError):
            verify_inverse_lemmas(math.exp, POINTS, dp)

    def test_fundamental_theorem_goldens(self, ip):
        report = verify_fundamental_theorem(cube, [(2.0, 4.0), (0.25, 0.5), (0.5, 2.0)], ip)
        assert report.passed
        assert report.max_residual < 1e-8
        assert report.sample_points[0] == (2.0, 4.0)

    def test_fundamental_theorem_at_infinity(self, ip):
        F = RealFunction(lambda x: -1.0 / x, POSITIVE)
        report = verify_fundamental_theorem(F, [(2.0, INFINITY)], ip, limit_at_infinity=0.0, tol=1e-6)
        assert report.passed

    def test_infinity_needs_limit(self, ip):
        with pytest.raises(ParameterError):
            verify_fundamental_theorem(cube, [(2.0, INFINITY)], ip)

    def test_integration_by_parts(self, ip):
        pairs = [(1.0, 3.0), (0.2, 0.8), (0.5, 2.5)]
        report = verify_integration_by_parts(math.exp, shifted_cos, pairs, ip)
        assert report.passed, str(report)

    def test_stieltjes_against_identity(self, ip):
        res = stieltjes(lambda x: 1.0, cube, 1.0, 3.0, ip)
        assert res.value == pytest.approx(26.0, rel=1e-10)

    def test_non_convergence_is_reported(self, ip):
        with pytest.raises(NonConvergenceError):
            verify_fundamental_theorem(cube, [(2.0, 4.0)], ip, SeriesConfig(max_terms=3))

    def test_report_text(self, ip):
        text = str(verify_quotient_rules(cube, shifted_cos, [2.0], ip))
        assert text.startswith("PASS quotient rules")
