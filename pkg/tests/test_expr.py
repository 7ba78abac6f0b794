from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqcalc import EvaluationError
from pqcalc.expr import (
    Binary,
    Const,
    ExprEvalError,
    ExprSyntaxError,
    Num,
    Unary,
    Var,
    eval_expr,
    expr_function,
    parse_expr,
    to_source,
)

CORPUS = [
    "x", "3", "2.5", "1e-3", ".5", "x^2 + 3", "x^2", "-x^2", "(-x)^2", "2^-1",
    "x^2^3", "(x^2)^3", "1 - 2 - 3", "1 - (2 - 3)", "8 / 4 / 2", "8 / (4 / 2)", "-(x * 2)", "--x",
    "ln(x)/(x^0.8 - x^0.4)", "1/(x^0.8 - x^0.4)", "c", "c * x", "pi * x", "e^x", "exp(x)",
    "sin(x) + cos(x)", "sqrt(x) * ln(x)", "exp(-x)", "-1/x", "x^-2", "2 * x^3 - 4 * x + 1",
    "(x + 1) * (x - 1)", "x / (1 + x^2)", "ln(1 + x)", "sqrt(1 + sqrt(x))", "exp(sin(x))",
    "x^(1/3)", "(x + c)^2", "-c", "3 * -x", "x * -2^2", "1.5e3 * x", "x^0.5 - x^0.25",
    "cos(pi * x)", "2 + 3 * 4 ^ 2", "(2 + 3) * 4", "ln(ln(x + 3))", "x - -x", "-(-(x))",
    "1/(1 + exp(-x))",
]


def test_corpus_size():
    assert len(CORPUS) == 50


class TestParse:
    def test_precedence(self):
        assert parse_expr("x^2 + 3") == Binary("+", Binary("^", Var(), Num(2.0)), Num(3.0))

    def test_unary_minus_below_power(self):
        assert parse_expr("-x^2") == Unary("neg", Binary("^", Var(), Num(2.0)))

    def test_power_is_right_associative(self):
        assert parse_expr("2^3^2") == Binary("^", Num(2.0), Binary("^", Num(3.0), Num(2.0)))

    def test_integrand_shape(self):
        tree = parse_expr("ln(x)/(x^0.8 - x^0.4)")
        assert isinstance(tree, Binary) and tree.op == "/"
        assert tree.left == Unary("ln", Var())

    def test_constants(self):
        assert parse_expr("c") == Const("c")

    @pytest.mark.parametrize(
        "source,offset",
        [("2 +", 3), ("", 0), ("(x", 2), ("x $ 2", 2), ("foo(x)", 0), ("ln x", 3), ("x 2", 2), ("é+", 0)],
    )
    def test_syntax_errors(self, source, offset):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr(source)
        assert info.value.offset == offset

    def test_offset_counts_bytes(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr("x + é")
        assert info.value.offset == 4
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr("(é")
        assert info.value.offset == 1

    def test_error_message_names_expectation(self):
        with pytest.raises(ExprSyntaxError, match="expected"):
            parse_expr("2 +")


class TestRoundTrip:
    @pytest.mark.parametrize("source", CORPUS)
    def test_corpus(self, source):
        tree = parse_expr(source)
        assert parse_expr(to_source(tree)) == tree

    @given(st.recursive(
        st.one_of(
            st.just(Var()),
            st.sampled_from([Const("c"), Const("pi"), Const("e")]),
            st.floats(0.0, 1e6, allow_nan=False).map(Num),
        ),
        lambda kids: st.one_of(
            st.tuples(st.sampled_from(["+", "-", "*", "/", "^"]), kids, kids).map(lambda t: Binary(*t)),
            st.tuples(st.sampled_from(["neg", "ln", "exp", "sin", "cos", "sqrt"]), kids).map(lambda t: Unary(*t)),
        ),
        max_leaves=12,
    ))
    def test_generated_trees(self, tree):
        assert parse_expr(to_source(tree)) == tree


class TestEval:
    def test_constant_binding(self):
        assert eval_expr(parse_expr("c"), 2.0, {"c": 5.0}) == 5.0
        assert eval_expr(parse_expr("c"), 2.0) == 1.0

    def test_square(self):
        assert eval_expr(parse_expr("x^2"), 3.0) == 9.0

    def test_log(self):
        assert eval_expr(parse_expr("ln(x)"), 0.5) == pytest.approx(-0.693147, abs=1e-6)

    @pytest.mark.parametrize("source,x,culprit", [
        ("ln(x - 1)", 1.0, "ln(x - 1.0)"),
        ("1/(x - 2)", 2.0, "1.0 / (x - 2.0)"),
        ("sqrt(-x)", 2.0, "sqrt(-x)"),
        ("exp(x)", 1000.0, "exp(x)"),
        ("x^1000", 1e10, "x^1000.0"),
    ])
    def test_faults_name_subtree(self, source, x, culprit):
        with pytest.raises(ExprEvalError) as info:
            eval_expr(parse_expr(source), x)
        assert to_source(info.value.subtree) == culprit

    def test_adapter(self):
        f = expr_function(parse_expr("c * x"), {"c": 3.0})
        assert f(2.0) == 6.0
        assert f.name == "c * x"

    def test_adapter_fault_is_library_error(self):
        f = expr_function(parse_expr("ln(x - 1)"))
        with pytest.raises(ArithmeticError) as info:
            f(0.5)
        assert isinstance(info.value, (ExprEvalError, EvaluationError))

    def test_value_matches_math(self):
        f = expr_function(parse_expr("ln(x)/(x^0.8 - x^0.4)"))
        assert f(3.0) == pytest.approx(math.log(3.0) / (3.0 ** 0.8 - 3.0 ** 0.4), rel=1e-15)
