"""异常层次 - 所有业务异常都是 ValueError 的子类"""
from typing import Iterable, Optional, Sequence


class HopfError(ValueError):
    """验证系统异常基类"""


class PhaseUnitError(HopfError):
    """非同伦计算中出现了 w 单位"""


class NotCoinvariantError(HopfError):
    """要求 B 中元素（hdeg = 0）但输入不是"""


class ChargeMismatchError(HopfError):
    """输入不是指定电荷的齐次元素"""


class NotUniversalFormError(HopfError):
    """张量不在 ker μ 中"""


class NotHorizontalError(HopfError):
    """1-形式不是水平形式"""


class NotBaseFormError(HopfError):
    """联络参数 α 不在 Ω¹(B) 中"""


class UnsupportedDegreeError(HopfError):
    """超出已实现的形式次数（最高 2）"""


class GroebnerDivergenceError(HopfError):
    """Buchberger 完备化超过次数上限"""

    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"S-多项式次数 {degree} 超过上限 {bound}")


class ExpressionSyntaxError(HopfError):
    """表达式语法错误，带行列位置与期望记号集合"""

    def __init__(self, message: str, line: int, column: int,
                 expected: Optional[Iterable[str]] = None, text: str = ""):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected or ()))
        self.text = text
        detail = f"第 {line} 行第 {column} 列: {message}"
        if self.expected:
            detail += f"；期望: {', '.join(self.expected)}"
        super().__init__(detail)


class ExpressionTypeError(HopfError):
    """表达式类型不匹配，带节点位置"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"第 {line} 行第 {column} 列: " if line is not None else ""
        super().__init__(f"{where}{message}")


class UnknownSuiteError(HopfError):
    """未知的验证套件"""

    def __init__(self, suite_id: str, available: Sequence[str]):
        self.suite_id = suite_id
        self.available = list(available)
        super().__init__(f"未知的验证套件: {suite_id}；可用套件: {', '.join(self.available)}")
