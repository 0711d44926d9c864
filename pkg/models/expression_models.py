"""表达式语法树 - 不可变节点，行列位置不参与结构相等"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

# 二元运算符
ADD = "+"
SUB = "-"
MUL = "*"
STAR = "**"
FAMILY = "***"
DIV = "/"
WEDGE = "/\\"
TENSOR = "(x)"

BINARY_OPERATORS = (ADD, SUB, MUL, STAR, FAMILY, DIV, WEDGE, TENSOR)

GENERATOR_NAMES = ("z1", "z2", "z1s", "z2s", "t", "z", "zs", "x")
UNIT_NAMES = ("u", "w", "i")


@dataclass(frozen=True)
class Node:
    line: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class Generator(Node):
    name: str


@dataclass(frozen=True)
class Number(Node):
    value: Fraction


@dataclass(frozen=True)
class Unit(Node):
    name: str


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Neg(Node):
    operand: "Expression"


@dataclass(frozen=True)
class Power(Node):
    base: "Expression"
    exponent: int


@dataclass(frozen=True)
class Involution(Node):
    """后缀 ' """
    operand: "Expression"


@dataclass(frozen=True)
class Differential(Node):
    operand: "Expression"


@dataclass(frozen=True)
class TwoFormBasis(Node):
    """w2(i, j) = dzᵢ∧dzⱼ，下标从 1 开始"""
    i: int
    j: int


Expression = Union[Generator, Number, Unit, BinaryOp, Neg, Power, Involution, Differential, TwoFormBasis]
