"""表达式控制器 - 语法树的类型化求值

值的种类：algebra（A 中元素，标量即常数元素）、hopf（H 中元素）、oneform、twoform、tensor。
* 为交换乘法（或经典作用），** 为 ⋆_θ，*** 为同伦族乘法；/\\ 与 d 之外的
形式运算使用请求中的 deformed 标志。
"""
from typing import Any, Dict, Union

from models.algebra_models import ONE_MONO, AlgebraElement, HopfElement, ProductKind, TensorElement
from models.expression_models import (
    ADD, DIV, FAMILY, MUL, STAR, SUB, TENSOR, WEDGE,
    BinaryOp, Differential, Expression, Generator, Involution, Neg, Number, Power, TwoFormBasis, Unit,
)
from models.form_models import OneForm, TwoForm
from models.report_models import EvalRequest, EvalResult
from models.scalars import I, U, W, Scalar
from services.kahler_calculus import canonicalize, d_any, form_action, wedge
from services.sphere_algebra import X, Z, ZS, involution, power, product
from utils.enhanced_logger import logger
from utils.errors import ExpressionSyntaxError, ExpressionTypeError, HopfError
from utils.expression_parser import parse

Value = Union[AlgebraElement, HopfElement, OneForm, TwoForm, TensorElement]

NAMED_ELEMENTS = {"z": Z, "zs": ZS, "x": X}
UNITS = {"u": U, "w": W, "i": I}
PRODUCT_KINDS = {MUL: ProductKind.CLASSICAL, STAR: ProductKind.THETA, FAMILY: ProductKind.FAMILY}


def kind_of(value: Value) -> str:
    if isinstance(value, AlgebraElement):
        return "algebra"
    if isinstance(value, HopfElement):
        return "hopf"
    if isinstance(value, OneForm):
        return "oneform"
    if isinstance(value, TwoForm):
        return "twoform"
    return "tensor"


def value_json(value: Value) -> Any:
    if isinstance(value, HopfElement):
        return {"hopf": [{"n": n, "coeff": c.to_json()} for n, c in sorted(value.terms.items())]}
    if isinstance(value, AlgebraElement):
        return {"algebra": value.to_json()}
    if isinstance(value, TensorElement):
        return {"tensor": value.to_json()}
    return value.to_json()


def _constant(value: Value):
    """常数元素的标量；否则 None"""
    if isinstance(value, AlgebraElement) and all(m == ONE_MONO for m in value.terms):
        return value.terms.get(ONE_MONO, Scalar.zero())
    return None


class ExpressionEvaluator:
    """递归求值；类型错误带上节点位置"""

    def __init__(self, deformed: bool = False):
        self.kind = ProductKind.coerce(deformed)

    def _error(self, node: Expression, message: str) -> ExpressionTypeError:
        return ExpressionTypeError(message, node.line, node.column)

    def evaluate(self, node: Expression) -> Value:
        value = self._eval(node)
        if isinstance(value, (OneForm, TwoForm)):
            return canonicalize(value)
        return value

    def _eval(self, node: Expression) -> Value:
        if isinstance(node, Generator):
            if node.name == "t":
                return HopfElement.t_power(1)
            if node.name in NAMED_ELEMENTS:
                return NAMED_ELEMENTS[node.name]
            return AlgebraElement.generator(node.name)
        if isinstance(node, Number):
            return AlgebraElement.constant(node.value)
        if isinstance(node, Unit):
            return AlgebraElement.constant(UNITS[node.name])
        if isinstance(node, TwoFormBasis):
            if not (1 <= node.i <= 4 and 1 <= node.j <= 4):
                raise self._error(node, f"w2 的下标必须在 1..4 之间: ({node.i},{node.j})")
            return TwoForm.from_pair(node.i - 1, node.j - 1)
        if isinstance(node, Neg):
            return self._negate(node, self._eval(node.operand))
        if isinstance(node, Power):
            return self._power(node, self._eval(node.base))
        if isinstance(node, Involution):
            operand = self._eval(node.operand)
            if not isinstance(operand, AlgebraElement):
                raise self._error(node, f"对合只作用于代数元素，收到 {kind_of(operand)}")
            return involution(operand)
        if isinstance(node, Differential):
            operand = self._eval(node.operand)
            if not isinstance(operand, (AlgebraElement, OneForm)):
                raise self._error(node, f"d 只作用于 0-形式与 1-形式，收到 {kind_of(operand)}")
            return d_any(operand)
        if isinstance(node, BinaryOp):
            return self._binary(node, self._eval(node.left), self._eval(node.right))
        raise self._error(node, f"未知的节点: {type(node).__name__}")

    def _negate(self, node: Expression, value: Value) -> Value:
        if isinstance(value, (AlgebraElement, HopfElement, TensorElement)):
            return -value
        return value.scale(-1)

    def _power(self, node: Power, base: Value) -> Value:
        if isinstance(base, HopfElement):
            if len(base.terms) == 1:
                (n, c), = base.terms.items()
                if node.exponent >= 0 or c.is_monomial():
                    return HopfElement.t_power(n * node.exponent, c ** node.exponent)
            if node.exponent < 0:
                raise self._error(node, "只有单项 Hopf 元素可取负幂")
            result = HopfElement.t_power(0)
            for _ in range(node.exponent):
                result = result * base
            return result
        if not isinstance(base, AlgebraElement):
            raise self._error(node, f"幂只作用于代数元素，收到 {kind_of(base)}")
        scalar = _constant(base)
        if node.exponent < 0:
            if scalar is None or not scalar.is_monomial():
                raise self._error(node, "负幂只允许用于单项式标量（如 u^-1）")
            return AlgebraElement.constant(scalar ** node.exponent)
        return power(base, node.exponent)

    def _binary(self, node: BinaryOp, left: Value, right: Value) -> Value:
        if node.op in (ADD, SUB):
            if type(left) is not type(right):
                raise self._error(node, f"不能相加 {kind_of(left)} 与 {kind_of(right)}")
            return left + right if node.op == ADD else left - right
        if node.op == DIV:
            scalar = _constant(right)
            if scalar is None or not scalar.is_monomial():
                raise self._error(node, "只能除以非零单项式标量")
            return self._scale(node, left, scalar.inverse())
        if node.op in PRODUCT_KINDS:
            return self._product(node, left, right, PRODUCT_KINDS[node.op])
        if node.op == WEDGE:
            allowed = (AlgebraElement, OneForm, TwoForm)
            if not (isinstance(left, allowed) and isinstance(right, allowed)):
                raise self._error(node, f"楔积不接受 {kind_of(left)} /\\ {kind_of(right)}")
            try:
                return wedge(left, right, self.kind)
            except HopfError as e:
                raise self._error(node, str(e)) from e
        if node.op == TENSOR:
            if not (isinstance(left, AlgebraElement) and isinstance(right, AlgebraElement)):
                raise self._error(node, f"张量积只接受代数元素，收到 {kind_of(left)} (x) {kind_of(right)}")
            return TensorElement.of(left, right)
        raise self._error(node, f"未知的运算符: {node.op}")

    def _scale(self, node: Expression, value: Value, scalar: Scalar) -> Value:
        if isinstance(value, HopfElement):
            return value * scalar
        return value.scale(scalar)

    def _product(self, node: BinaryOp, left: Value, right: Value, kind: ProductKind) -> Value:
        left_scalar, right_scalar = _constant(left), _constant(right)
        if left_scalar is not None and not isinstance(right, AlgebraElement):
            return self._scale(node, right, left_scalar)
        if right_scalar is not None and not isinstance(left, AlgebraElement):
            return self._scale(node, left, right_scalar)
        if isinstance(left, AlgebraElement) and isinstance(right, AlgebraElement):
            return product(left, right, kind)
        if isinstance(left, HopfElement) and isinstance(right, HopfElement):
            return left * right
        if kind is ProductKind.FAMILY:
            raise self._error(node, "*** 只作用于代数元素")
        if isinstance(left, AlgebraElement) and isinstance(right, (OneForm, TwoForm)):
            return form_action(left, right, "left", kind)
        if isinstance(right, AlgebraElement) and isinstance(left, (OneForm, TwoForm)):
            return form_action(right, left, "right", kind)
        raise self._error(node, f"不能相乘 {kind_of(left)} 与 {kind_of(right)}，形式之间请用 /\\")


def evaluate_text(text: str, deformed: bool = False) -> Value:
    return ExpressionEvaluator(deformed).evaluate(parse(text))


class ExpressionController:
    """表达式求值入口；异常转换为失败的结果模型"""

    def evaluate(self, request: EvalRequest) -> EvalResult:
        logger.log_process_step("evaluate_expression", "started", {
            "expression_length": len(request.expression),
            "deformed": request.deformed
        })
        try:
            value = evaluate_text(request.expression, request.deformed)
        except ExpressionSyntaxError as e:
            logger.warning(f"表达式语法错误: {e}")
            return EvalResult(status="syntax_error", error_message=str(e))
        except ExpressionTypeError as e:
            logger.warning(f"表达式类型错误: {e}")
            return EvalResult(status="type_error", error_message=str(e))
        except (HopfError, ArithmeticError) as e:
            logger.log_error_with_context(e, {"function": "evaluate", "expression": request.expression})
            return EvalResult(status="error", error_message=str(e))

        result = EvalResult(status="success", kind=kind_of(value), text=value.to_text(),
                            value=value_json(value))
        logger.log_process_step("evaluate_expression", "completed", {"kind": result.kind})
        return result

    def evaluate_dict(self, payload: Dict[str, Any]) -> EvalResult:
        return self.evaluate(EvalRequest(**payload))
