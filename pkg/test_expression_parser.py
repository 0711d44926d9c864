"""测试表达式解析器与求值器"""
from fractions import Fraction

import pytest

from controllers.expression_controller import evaluate_text, kind_of
from models.algebra_models import AlgebraElement, HopfElement, TensorElement
from models.expression_models import STAR, BinaryOp, Generator, Involution, Number, Power, Unit
from models.form_models import OneForm
from models.scalars import U
from services.kahler_calculus import differential
from services.sphere_algebra import ONE, Z, Z1, Z1S, Z2, mul, star
from utils.errors import ExpressionSyntaxError, ExpressionTypeError
from utils.expression_parser import parse, print_expression, random_corpus


def test_parse_structure():
    tree = parse("z1 ** z2'")
    assert tree == BinaryOp(STAR, Generator("z1"), Involution(Generator("z2")))
    assert parse("2/3") == Number(Fraction(2, 3))
    assert parse("u^-1") == Power(Unit("u"), -1)


def test_positions_recorded():
    tree = parse("z1 +\n  z2")
    assert tree.right.line == 2
    assert tree.right.column == 3


def test_print_parse_round_trip():
    for expression in random_corpus(7, 300):
        text = print_expression(expression)
        assert parse(text) == expression, text


def test_syntax_error_reports_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("z1 + * z2")
    assert info.value.line == 1
    assert info.value.column == 6
    with pytest.raises(ExpressionSyntaxError):
        parse("z1 +")
    with pytest.raises(ExpressionSyntaxError):
        parse("z1 # z2")


def test_zero_denominator_is_syntax_error():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("z1 + 3/0")
    assert info.value.line == 1
    assert info.value.column == 6
    assert info.value.text == "z1 + 3/0"
    with pytest.raises(ExpressionSyntaxError):
        evaluate_text("1/0")
    assert parse("0/5") == Number(Fraction(0))


def test_evaluate_algebra():
    assert evaluate_text("z1'*z1 + z2'*z2") == ONE
    assert evaluate_text("z1 ** z2 - u^2 * (z2 ** z1)").is_zero()
    assert evaluate_text("z1 ** z2") == star(Z1, Z2)
    assert evaluate_text("z") == Z
    assert evaluate_text("z1'") == Z1S
    assert evaluate_text("z1 * z2 / 2") == mul(Z1, Z2).scale(Fraction(1, 2))


def test_evaluate_forms():
    assert evaluate_text("d(z1'*z1 + z2'*z2)") == OneForm.zero()
    assert evaluate_text("d(z1)") == differential(Z1)
    assert kind_of(evaluate_text("d(z1) /\\ d(z2)")) == "twoform"
    assert evaluate_text("z2 ** d(z1)", True) == evaluate_text("z2 * d(z1)").scale(U ** -1)


def test_evaluate_hopf_and_tensor():
    assert evaluate_text("t^2 * t^-1") == HopfElement.t_power(1)
    assert evaluate_text("z1 (x) z1'") == TensorElement.of(Z1, Z1S)


def test_type_errors():
    for text in ("t + z1", "d(z1) * d(z2)", "d(d(z1) /\\ d(z2))", "z1^-1", "z1 / z2", "w2(1,5)"):
        with pytest.raises(ExpressionTypeError):
            evaluate_text(text)
    assert isinstance(evaluate_text("0 * z1"), AlgebraElement)
