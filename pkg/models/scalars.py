"""标量模型 - ℚ(i) 上关于相位单位 u = e^{πiθ}、w = e^{πiθy} 的 Laurent 多项式

θ 始终保持为符号参数：q = e^{2πiθ} 就是 u²，Q = e^{2πiθy} 就是 w²。
所有运算精确，不使用浮点数。
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple, Union

Rational = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "GaussianRational", "Scalar"]


def as_rational(value) -> Rational:
    """规范化有理数：分母为 1 时退化为 int，字符串接受 "p/q" 形式"""
    if isinstance(value, bool):
        raise TypeError("布尔值不是有理数")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return as_rational(Fraction(value.strip()))
    raise TypeError(f"无法转换为有理数: {value!r}")


def rational_text(value: Rational) -> str:
    """有理数的 "p/q" 文本形式"""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


class GaussianRational:
    """高斯有理数 re + i·im"""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("高斯有理数 0 不可逆")
        return GaussianRational(Fraction(self.re) / norm, Fraction(-self.im) / norm)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({rational_text(self.re)}, {rational_text(self.im)})"

    def to_text(self) -> str:
        """表达式语法的系数文本；实部虚部都非零时加括号"""
        if self.im == 0:
            return rational_text(self.re)
        imag = "i" if self.im == 1 else ("-i" if self.im == -1 else f"{rational_text(self.im)}*i")
        if self.re == 0:
            return imag
        sign = "-" if self.im < 0 else "+"
        magnitude = -self.im if self.im < 0 else self.im
        imag_abs = "i" if magnitude == 1 else f"{rational_text(magnitude)}*i"
        return f"({rational_text(self.re)} {sign} {imag_abs})"


ZERO_Q = GaussianRational(0, 0)
ONE_Q = GaussianRational(1, 0)
I_Q = GaussianRational(0, 1)


class Specialization(str, Enum):
    """标量特化同态"""
    U_TO_ONE = "u_to_one"   # θ = 0 的经典极限
    W_TO_ONE = "w_to_one"   # ev₀
    W_TO_U = "w_to_u"       # ev₁


class Scalar:
    """Laurent 标量 Σ q·u^j·w^k，terms 中不存零系数"""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Tuple[int, int], GaussianRational] = None):
        self.terms: Dict[Tuple[int, int], GaussianRational] = {
            key: value for key, value in (terms or {}).items() if not value.is_zero()
        }
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[Tuple[int, int], GaussianRational]) -> "Scalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # ---- 构造 ----
    @classmethod
    def zero(cls) -> "Scalar":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "Scalar":
        return cls._trusted({(0, 0): ONE_Q})

    @classmethod
    def unit(cls, j: int = 0, k: int = 0, coeff=None) -> "Scalar":
        """单项式 coeff·u^j·w^k"""
        q = ONE_Q if coeff is None else GaussianRational.coerce(coeff)
        return cls._trusted({(j, k): q} if not q.is_zero() else {})

    @classmethod
    def of(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        q = GaussianRational.coerce(value)
        return cls._trusted({(0, 0): q} if not q.is_zero() else {})

    # ---- 谓词 ----
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and (0, 0) in self.terms and self.terms[(0, 0)].is_one()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def uses_w(self) -> bool:
        return any(k != 0 for (_, k) in self.terms)

    def uses_u(self) -> bool:
        return any(j != 0 for (j, _) in self.terms)

    def constant(self) -> GaussianRational:
        """无相位部分 (j, k) = (0, 0) 的系数"""
        return self.terms.get((0, 0), ZERO_Q)

    # ---- 运算 ----
    def __add__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.of(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        result = dict(self.terms)
        for key, value in other.terms.items():
            current = result.get(key)
            if current is None:
                result[key] = value
            else:
                total = current + value
                if total.is_zero():
                    del result[key]
                else:
                    result[key] = total
        return Scalar._trusted(result)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._trusted({key: -value for key, value in self.terms.items()})

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.of(other)
        if not self.terms or not other.terms:
            return Scalar.zero()
        if len(other.terms) == 1:
            ((oj, ok), oq), = other.terms.items()
            if oq.is_one():
                return Scalar._trusted({(j + oj, k + ok): q for (j, k), q in self.terms.items()})
            return Scalar._trusted({(j + oj, k + ok): q * oq for (j, k), q in self.terms.items()})
        result: Dict[Tuple[int, int], GaussianRational] = {}
        for (j1, k1), q1 in self.terms.items():
            for (j2, k2), q2 in other.terms.items():
                key = (j1 + j2, k1 + k2)
                product = q1 * q2
                current = result.get(key)
                result[key] = product if current is None else current + product
        return Scalar(result)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """单项式标量的逆；多项标量在 Laurent 环中一般不可逆"""
        if len(self.terms) != 1:
            raise ArithmeticError(f"只有单项式标量可逆: {self.to_text()}")
        ((j, k), q), = self.terms.items()
        return Scalar._trusted({(-j, -k): q.inverse()})

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def involute(self) -> "Scalar":
        """(q·u^j w^k)∗ = conj(q)·u^{-j} w^{-k}"""
        return Scalar._trusted({(-j, -k): q.conj() for (j, k), q in self.terms.items()})

    def specialize(self, target: Specialization) -> "Scalar":
        """环同态 u↦1、w↦1 或 w↦u"""
        target = Specialization(target)
        result: Dict[Tuple[int, int], GaussianRational] = {}
        for (j, k), q in self.terms.items():
            if target is Specialization.U_TO_ONE:
                key = (0, k)
            elif target is Specialization.W_TO_ONE:
                key = (j, 0)
            else:
                key = (j + k, 0)
            current = result.get(key)
            result[key] = q if current is None else current + q
        return Scalar(result)

    # ---- 比较 ----
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[Tuple[Tuple[int, int], GaussianRational]]:
        return iter(sorted(self.terms.items()))

    # ---- 文本 / JSON ----
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for (j, k), q in sorted(self.terms.items()):
            units = []
            if j:
                units.append("u" if j == 1 else f"u^{j}")
            if k:
                units.append("w" if k == 1 else f"w^{k}")
            negative = (q.im == 0 and q.re < 0) or (q.re == 0 and q.im < 0)
            magnitude = -q if negative else q
            if units and magnitude.is_one():
                body = "*".join(units)
            else:
                body = "*".join([magnitude.to_text()] + units)
            pieces.append(("-", body) if negative else ("+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"re": rational_text(q.re), "im": rational_text(q.im), "ju": j, "kw": k}
            for (j, k), q in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, records: List[Dict[str, object]]) -> "Scalar":
        total = cls.zero()
        for record in records:
            coeff = GaussianRational(record.get("re", 0), record.get("im", 0))
            total = total + cls.unit(int(record.get("ju", 0)), int(record.get("kw", 0)), coeff)
        return total

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()})"


# 常用单位
U = Scalar.unit(1, 0)
W = Scalar.unit(0, 1)
I = Scalar.of(I_Q)
