"""表达式解析器 - lark LALR 语法、打印器与随机语料

优先级从低到高：+ -，(x)，/\\，* ** *** /，一元 -，^，后缀 '。
打印器在二元运算符两侧加空格，使 "2 / 3"（除法）与有理数字面量 "2/3" 不会混淆，
因此 parse(print_expression(e)) 与 e 结构相等。
"""
import random
from fractions import Fraction
from functools import lru_cache
from typing import List

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError
from lark.lexer import PatternStr

from models.expression_models import (
    ADD, BINARY_OPERATORS, DIV, FAMILY, GENERATOR_NAMES, MUL, STAR, SUB, TENSOR, UNIT_NAMES, WEDGE,
    BinaryOp, Differential, Expression, Generator, Involution, Neg, Number, Power, TwoFormBasis, Unit,
)
from utils.enhanced_logger import logger
from utils.errors import ExpressionSyntaxError

GRAMMAR = r"""
    ?start: sum

    ?sum: tensor_expr
        | sum "+" tensor_expr          -> add
        | sum "-" tensor_expr          -> sub

    ?tensor_expr: wedge_expr
        | wedge_expr _TENSOR wedge_expr -> tensor

    ?wedge_expr: product
        | wedge_expr _WEDGE product    -> wedge

    ?product: unary
        | product _STAR3 unary         -> family
        | product _STAR2 unary         -> star
        | product _STAR1 unary         -> mul
        | product "/" unary            -> div

    ?unary: power
        | "-" unary                    -> neg

    ?power: postfix
        | postfix "^" SIGNED_INT       -> pow

    ?postfix: atom
        | postfix "'"                  -> involution

    ?atom: GEN                         -> generator
        | UNIT                         -> unit
        | RATIONAL                     -> number
        | "d" "(" sum ")"              -> differential
        | "w2" "(" INT "," INT ")"     -> two_form
        | "(" sum ")"

    _TENSOR: "(x)"
    _WEDGE: /\/\\/
    _STAR3: "***"
    _STAR2: "**"
    _STAR1: "*"
    GEN: /z1s|z2s|z1|z2|zs|z|t|x/
    UNIT: /[uwi]/
    RATIONAL: /\d+\/\d+|\d+/
    SIGNED_INT: /[+-]?\d+/
    INT: /\d+/

    %import common.WS
    %ignore WS
"""

PRECEDENCE = {ADD: 1, SUB: 1, TENSOR: 2, WEDGE: 3, MUL: 4, STAR: 4, FAMILY: 4, DIV: 4}
NEG_PRECEDENCE = 5
POWER_PRECEDENCE = 6
POSTFIX_PRECEDENCE = 7
ATOM_PRECEDENCE = 8


def _position(meta) -> dict:
    return {"line": getattr(meta, "line", 0), "column": getattr(meta, "column", 0)}


@v_args(meta=True, inline=True)
class ExpressionBuilder(Transformer):
    """lark 树 → 不可变语法树"""

    def _binary(self, op, meta, left, right):
        return BinaryOp(op, left, right, **_position(meta))

    def add(self, meta, left, right):
        return self._binary(ADD, meta, left, right)

    def sub(self, meta, left, right):
        return self._binary(SUB, meta, left, right)

    def tensor(self, meta, left, right):
        return self._binary(TENSOR, meta, left, right)

    def wedge(self, meta, left, right):
        return self._binary(WEDGE, meta, left, right)

    def family(self, meta, left, right):
        return self._binary(FAMILY, meta, left, right)

    def star(self, meta, left, right):
        return self._binary(STAR, meta, left, right)

    def mul(self, meta, left, right):
        return self._binary(MUL, meta, left, right)

    def div(self, meta, left, right):
        return self._binary(DIV, meta, left, right)

    def neg(self, meta, operand):
        return Neg(operand, **_position(meta))

    def pow(self, meta, base, exponent):
        return Power(base, int(exponent), **_position(meta))

    def involution(self, meta, operand):
        return Involution(operand, **_position(meta))

    def generator(self, meta, token):
        return Generator(str(token), **_position(meta))

    def unit(self, meta, token):
        return Unit(str(token), **_position(meta))

    def number(self, meta, token):
        _, _, denominator = str(token).partition("/")
        if denominator and int(denominator) == 0:
            position = _position(meta)
            raise ExpressionSyntaxError(f"分母为零: {token}", position["line"], position["column"])
        return Number(Fraction(str(token)), **_position(meta))

    def differential(self, meta, operand):
        return Differential(operand, **_position(meta))

    def two_form(self, meta, i, j):
        return TwoFormBasis(int(i), int(j), **_position(meta))


class ExpressionParser:
    """LALR 解析器；错误统一转换为 ExpressionSyntaxError"""

    def __init__(self):
        self.parser = Lark(GRAMMAR, start="start", parser="lalr", propagate_positions=True)
        self.builder = ExpressionBuilder()

    def _readable(self, names) -> List[str]:
        readable = []
        for name in names or ():
            try:
                pattern = self.parser.get_terminal(name).pattern
            except KeyError:
                readable.append(name)
                continue
            readable.append(repr(pattern.value) if isinstance(pattern, PatternStr) else name)
        return readable

    def parse(self, text: str) -> Expression:
        try:
            tree = self.parser.parse(text)
        except UnexpectedToken as e:
            found = "输入结束" if e.token.type == "$END" else repr(str(e.token))
            raise ExpressionSyntaxError(f"意外的记号 {found}", e.line, e.column,
                                        self._readable(e.expected), text) from e
        except UnexpectedCharacters as e:
            raise ExpressionSyntaxError(f"无法识别的字符 {text[e.pos_in_stream]!r}", e.line, e.column,
                                        self._readable(e.allowed), text) from e
        except UnexpectedEOF as e:
            lines = text.splitlines() or [""]
            raise ExpressionSyntaxError("表达式意外结束", len(lines), len(lines[-1]) + 1,
                                        self._readable(e.expected), text) from e
        except UnexpectedInput as e:
            raise ExpressionSyntaxError(str(e), getattr(e, "line", 0), getattr(e, "column", 0), (), text) from e
        try:
            return self.builder.transform(tree)
        except VisitError as e:
            cause = e.orig_exc
            if isinstance(cause, ExpressionSyntaxError):
                cause.text = text
                raise cause from None
            meta = getattr(e.obj, "meta", None)
            raise ExpressionSyntaxError(f"{type(cause).__name__}: {cause}", getattr(meta, "line", 0),
                                        getattr(meta, "column", 0), (), text) from cause


@lru_cache(maxsize=1)
def get_parser() -> ExpressionParser:
    logger.log_process_step("expression_parser_init", "completed", {"parser": "lalr"})
    return ExpressionParser()


def parse(text: str) -> Expression:
    return get_parser().parse(text)


# ---- 打印 ----

def precedence(node: Expression) -> int:
    if isinstance(node, BinaryOp):
        return PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return NEG_PRECEDENCE
    if isinstance(node, Power):
        return POWER_PRECEDENCE
    if isinstance(node, Involution):
        return POSTFIX_PRECEDENCE
    return ATOM_PRECEDENCE


def _wrap(node: Expression, minimum: int) -> str:
    text = print_expression(node)
    return text if precedence(node) >= minimum else f"({text})"


def _number_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def print_expression(node: Expression) -> str:
    """最少括号的表达式文本"""
    if isinstance(node, (Generator, Unit)):
        return node.name
    if isinstance(node, Number):
        return _number_text(Fraction(node.value))
    if isinstance(node, TwoFormBasis):
        return f"w2({node.i},{node.j})"
    if isinstance(node, Differential):
        return f"d({print_expression(node.operand)})"
    if isinstance(node, Involution):
        return f"{_wrap(node.operand, POSTFIX_PRECEDENCE)}'"
    if isinstance(node, Power):
        return f"{_wrap(node.base, POSTFIX_PRECEDENCE)}^{node.exponent}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.operand, NEG_PRECEDENCE)}"
    if isinstance(node, BinaryOp):
        level = PRECEDENCE[node.op]
        left_minimum = level + 1 if node.op == TENSOR else level
        return f"{_wrap(node.left, left_minimum)} {node.op} {_wrap(node.right, level + 1)}"
    raise TypeError(f"未知的语法树节点: {node!r}")


# ---- 随机语料 ----

def _random_leaf(rng: random.Random) -> Expression:
    choice = rng.randrange(4)
    if choice == 0:
        return Generator(rng.choice(GENERATOR_NAMES))
    if choice == 1:
        return Unit(rng.choice(UNIT_NAMES))
    if choice == 2:
        return Number(Fraction(rng.randint(0, 9), rng.choice((1, 1, 2, 3))))
    return TwoFormBasis(rng.randint(1, 4), rng.randint(1, 4))


def random_expression(rng: random.Random, depth: int = 4) -> Expression:
    if depth <= 0 or rng.random() < 0.25:
        return _random_leaf(rng)
    choice = rng.randrange(12)
    if choice < len(BINARY_OPERATORS):
        op = BINARY_OPERATORS[choice]
        return BinaryOp(op, random_expression(rng, depth - 1), random_expression(rng, depth - 1))
    if choice == 8:
        return Neg(random_expression(rng, depth - 1))
    if choice == 9:
        return Power(random_expression(rng, depth - 1), rng.randint(-2, 3))
    if choice == 10:
        return Involution(random_expression(rng, depth - 1))
    return Differential(random_expression(rng, depth - 1))


def random_corpus(seed: int, size: int = 1000, depth: int = 4) -> List[Expression]:
    """语法合法（不保证类型正确）的随机表达式"""
    rng = random.Random(seed)
    return [random_expression(rng, depth) for _ in range(size)]
