"""Expression grammar: parsing, validation, jet evaluation, printing."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian_lab import exprlang, jets, surfaces
from legendrian_lab.errors import (
    DivideByZeroJetError,
    NonAnalyticError,
    SyntaxParseError,
    ValidationError,
)
from legendrian_lab.exprlang import BinOp, Call, ImagUnit, Neg, Num, Param, Pow, Var


def test_product_of_two_calls_parses_as_a_product_node():
    ast = exprlang.parse("sin(x)*exp(i*a*y)")
    assert isinstance(ast, BinOp) and ast.op == "*"
    assert isinstance(ast.left, Call) and ast.left.func == "sin"
    assert isinstance(ast.right, Call) and ast.right.func == "exp"


def test_syntax_error_carries_the_byte_offset():
    with pytest.raises(SyntaxParseError) as err:
        exprlang.parse("x + * y")
    assert err.value.position == 4
    assert "offset 4" in str(err.value)


def test_precedence_table():
    assert exprlang.parse("a+b*c") == BinOp(
        "+", Param("a"), BinOp("*", Param("b"), Param("c"))
    )
    assert exprlang.parse("-x^2") == Neg(Pow(Var("x"), Num(2.0)))
    assert exprlang.parse("a/b/c") == BinOp(
        "/", BinOp("/", Param("a"), Param("b")), Param("c")
    )


def test_validate_reports_unknown_parameters_and_bad_exponents():
    assert exprlang.validate(exprlang.parse("a*x"), {"a": 2.0}) == []
    diags = exprlang.validate(exprlang.parse("b*x"), {"a": 2.0})
    assert len(diags) == 1 and "unknown parameter b" in diags[0].message
    diags = exprlang.validate(exprlang.parse("x^y"), {})
    assert len(diags) == 1 and "exponent must be integer literal" in diags[0].message


def test_eval_jet_on_a_plain_product():
    X, Y = jets.lift_point(2.0, 3.0, 2)
    v = exprlang.eval_jet(exprlang.parse("x*y"), X, Y, {})
    assert complex(v.value) == 6.0
    assert complex(jets.extract_partial(v, 1, 1)) == 1.0


def test_divide_by_zero_jet_propagates():
    with pytest.raises(DivideByZeroJetError):
        exprlang.eval_jet(exprlang.parse("1/x"), *jets.lift_point(0.0, 0.0, 2), {})


def test_conjugation_is_rejected_above_degree_zero():
    with pytest.raises(NonAnalyticError):
        exprlang.eval_jet(exprlang.parse("conj(x)"), *jets.lift_point(0.5, 0.5, 2), {})
    v = exprlang.eval_jet(exprlang.parse("conj(x+i*y)"), *jets.lift_point(0.5, 0.25, 0), {})
    assert complex(v.value) == 0.5 - 0.25j


def test_mironov_first_coordinate_expression_matches_the_builtin():
    params = {"a": 1.0, "b": 2.0, "c": 1.0}
    ast = exprlang.parse("sqrt(c/(a+c))*sin(x)*exp(i*a*y)")
    spec = surfaces.mironov(1, 2, 1)
    rng = np.random.default_rng(2)
    for _ in range(20):
        x, y = rng.uniform(0.1, 6.0, size=2)
        X, Y = jets.lift_point(float(x), float(y), 2)
        built_in = surfaces.evaluate_jet(spec, float(x), float(y), 2)[0]
        expr = exprlang.eval_jet(ast, X, Y, params)
        assert np.max(np.abs(expr.coeffs - built_in.coeffs)) < 1e-13


def test_eval_jet_degree_zero_equals_complex_evaluation():
    ast = exprlang.parse("(x + i*y) * exp(i*a*x) / (2 + sin(y))")
    params = {"a": 0.7}
    rng = np.random.default_rng(0)
    xs = rng.uniform(-3.0, 3.0, size=1000)
    ys = rng.uniform(-3.0, 3.0, size=1000)
    X, Y = jets.lift_point(xs, ys, 0)
    batch = exprlang.eval_jet(ast, X, Y, params).value
    for i in range(1000):
        direct = exprlang.eval_complex(ast, complex(xs[i]), complex(ys[i]), params)
        assert abs(batch[i] - direct) < 1e-14


# -- parse/print round trip ----------------------------------------------------

_leaves = st.one_of(
    st.floats(min_value=0.0, max_value=1e6, allow_nan=False).map(Num),
    st.just(ImagUnit()),
    st.sampled_from(["x", "y"]).map(Var),
    st.sampled_from(["a", "b", "c", "r1", "r4"]).map(Param),
)

_asts = st.recursive(
    _leaves,
    lambda inner: st.one_of(
        inner.map(Neg),
        st.tuples(st.sampled_from(exprlang.FUNCTIONS), inner).map(
            lambda t: Call(t[0], t[1])
        ),
        st.tuples(st.sampled_from("+-*/"), inner, inner).map(
            lambda t: BinOp(t[0], t[1], t[2])
        ),
        st.tuples(inner, st.integers(min_value=0, max_value=5)).map(
            lambda t: Pow(t[0], Num(float(t[1])))
        ),
    ),
    max_leaves=12,
)


@given(_asts)
@settings(max_examples=80, deadline=None)
def test_pretty_printed_ast_reparses_identically(ast):
    assert exprlang.parse(exprlang.to_source(ast)) == ast


def test_expression_surface_rejects_invalid_input_with_diagnostics():
    dom = ((0.0, 2 * math.pi), (0.0, 2 * math.pi))
    with pytest.raises(ValidationError) as err:
        surfaces.from_expression(("b*x", "0", "1"), {}, dom)
    assert err.value.diagnostics
    assert "unknown parameter b" in str(err.value)
