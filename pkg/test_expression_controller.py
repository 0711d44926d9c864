"""测试表达式控制器：异常转换为结果状态"""
import pytest
from pydantic import ValidationError

from controllers.expression_controller import ExpressionController
from models.report_models import EvalRequest
from services.sphere_algebra import ONE


@pytest.fixture
def controller():
    return ExpressionController()


def test_success(controller):
    result = controller.evaluate(EvalRequest(expression="z1'*z1 + z2'*z2"))
    assert result.status == "success"
    assert result.kind == "algebra"
    assert result.value == {"algebra": ONE.to_json()}
    assert result.error_message is None


def test_deformed_flag(controller):
    classical = controller.evaluate(EvalRequest(expression="z1 ** z2 - z1 * z2"))
    deformed = controller.evaluate(EvalRequest(expression="z2 ** d(z1)", deformed=True))
    assert classical.status == "success" and classical.text != "0"
    assert deformed.kind == "oneform"


def test_syntax_error(controller):
    result = controller.evaluate(EvalRequest(expression="z1 + * z2"))
    assert result.status == "syntax_error"
    assert "1" in result.error_message


def test_zero_denominator(controller):
    result = controller.evaluate(EvalRequest(expression="z1 * 1/0"))
    assert result.status == "syntax_error"
    assert result.value is None


def test_type_error(controller):
    result = controller.evaluate(EvalRequest(expression="t + z1"))
    assert result.status == "type_error"
    assert result.value is None


def test_evaluate_dict(controller):
    assert controller.evaluate_dict({"expression": "z1 (x) z2"}).kind == "tensor"
    with pytest.raises(ValidationError):
        controller.evaluate_dict({"deformed": True})
