"""代数数据模型 - 单项式、双分次指标、代数元素、张量元素与 O(U(1)) 元素

A = O(S³) 与 A_θ 共用同一个载体：约化单项式 z1^a z2^b z1∗^c z2∗^d（min(a, c) = 0）
的有限线性组合，系数为 Scalar。乘法在 services.sphere_algebra 中实现。
"""
from enum import Enum
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from models.scalars import Scalar, ScalarLike


class KIndex(NamedTuple):
    """K = O(𝕋²) 的基 t_(m1,m2)"""
    m1: int
    m2: int

    def __add__(self, other: "KIndex") -> "KIndex":
        return KIndex(self.m1 + other.m1, self.m2 + other.m2)

    def __neg__(self) -> "KIndex":
        return KIndex(-self.m1, -self.m2)

    def pairing(self, other: "KIndex") -> int:
        """反对称配对 ⟨p, q⟩ = p1·q2 − p2·q1"""
        return self.m1 * other.m2 - self.m2 * other.m1

    @property
    def on_base_line(self) -> bool:
        """形如 (m, −m)，即 H-余不变元素的 K-次数"""
        return self.m1 + self.m2 == 0


K_ZERO = KIndex(0, 0)


class Monomial(NamedTuple):
    """z1^a z2^b z1∗^c z2∗^d 的指数；约化条件 min(a, c) = 0"""
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    @property
    def kdeg(self) -> KIndex:
        return KIndex(self.a - self.c, self.b - self.d)

    @property
    def hdeg(self) -> int:
        return self.a + self.b - self.c - self.d

    @property
    def m_index(self) -> int:
        return self.d - self.b

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def is_reduced(self) -> bool:
        return min(self.a, self.c) == 0

    def times(self, other: "Monomial") -> "Monomial":
        """指数相加（未约化）"""
        return Monomial(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def swapped(self) -> "Monomial":
        """对合在指数上的作用 (a,b,c,d) ↦ (c,d,a,b)"""
        return Monomial(self.c, self.d, self.a, self.b)

    def order_key(self) -> Tuple[int, int, int, int, int]:
        """次数字典序，z1 > z2 > z1∗ > z2∗"""
        return (self.degree, self.a, self.b, self.c, self.d)

    def to_text(self) -> str:
        factors = []
        for name, power in (("z1", self.a), ("z2", self.b), ("z1'", self.c), ("z2'", self.d)):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return "*".join(factors) if factors else "1"


ONE_MONO = Monomial(0, 0, 0, 0)
GENERATOR_MONOMIALS: Dict[str, Monomial] = {
    "z1": Monomial(1, 0, 0, 0),
    "z2": Monomial(0, 1, 0, 0),
    "z1s": Monomial(0, 0, 1, 0),
    "z2s": Monomial(0, 0, 0, 1),
}


class ProductKind(str, Enum):
    """乘法种类：交换乘法、⋆_θ（相位单位 u）、同伦族乘法（相位单位 w）"""
    CLASSICAL = "classical"
    THETA = "theta"
    FAMILY = "family"

    @classmethod
    def coerce(cls, flag: Union[bool, "ProductKind", str]) -> "ProductKind":
        if isinstance(flag, ProductKind):
            return flag
        if isinstance(flag, bool):
            return cls.THETA if flag else cls.CLASSICAL
        return cls(flag)

    @property
    def deformed(self) -> bool:
        return self is not ProductKind.CLASSICAL

    def phase(self, pairing: int) -> Scalar:
        """配对 ⟨p, q⟩ 对应的相位 σ(p, q)"""
        if self is ProductKind.CLASSICAL or pairing == 0:
            return Scalar.one()
        if self is ProductKind.THETA:
            return Scalar.unit(pairing, 0)
        return Scalar.unit(0, pairing)


def _term_text(coeff: Scalar, body: str) -> Tuple[str, str]:
    """系数与基元素拼接为 (符号, 文本)"""
    if len(coeff.terms) > 1:
        text = f"({coeff.to_text()})"
        return "+", f"{text}*{body}" if body else text
    scalar_text = coeff.to_text()
    sign = "+"
    if scalar_text.startswith("-"):
        sign, scalar_text = "-", scalar_text[1:]
    if scalar_text == "1" and body:
        return sign, body
    return sign, f"{scalar_text}*{body}" if body else scalar_text


def join_terms(pieces: List[Tuple[str, str]]) -> str:
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


class AlgebraElement:
    """约化单项式的线性组合（不可变）"""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            if not mono.is_reduced:
                raise ValueError(f"单项式未约化: {mono}")
            if coeff:
                clean[mono] = coeff
        self.terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[Monomial, Scalar]) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # ---- 构造 ----
    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls._trusted({ONE_MONO: Scalar.one()})

    @classmethod
    def constant(cls, value: ScalarLike) -> "AlgebraElement":
        scalar = Scalar.of(value)
        return cls._trusted({ONE_MONO: scalar} if scalar else {})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: ScalarLike = 1) -> "AlgebraElement":
        return cls({mono: Scalar.of(coeff)})

    @classmethod
    def generator(cls, name: str) -> "AlgebraElement":
        return cls._trusted({GENERATOR_MONOMIALS[name]: Scalar.one()})

    # ---- 线性结构 ----
    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if not other.terms:
            return self
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            current = result.get(mono)
            if current is None:
                result[mono] = coeff
            else:
                total = current + coeff
                if total:
                    result[mono] = total
                else:
                    del result[mono]
        return AlgebraElement._trusted(result)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._trusted({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "AlgebraElement":
        factor = Scalar.of(factor)
        if not factor:
            return AlgebraElement.zero()
        if factor.is_one():
            return self
        return AlgebraElement({m: c * factor for m, c in self.terms.items()})

    def __mul__(self, factor: ScalarLike) -> "AlgebraElement":
        """只接受标量；代数乘法见 services.sphere_algebra.mul / star"""
        if isinstance(factor, AlgebraElement):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def map_scalars(self, fn: Callable[[Scalar], Scalar]) -> "AlgebraElement":
        return AlgebraElement({m: fn(c) for m, c in self.terms.items()})

    # ---- 分次与谓词 ----
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def hdegs(self) -> List[int]:
        return sorted({m.hdeg for m in self.terms})

    def kdegs(self) -> List[KIndex]:
        return sorted({m.kdeg for m in self.terms})

    def is_coinvariant(self) -> bool:
        """属于 B = A^{coH}：所有单项式 hdeg = 0"""
        return all(m.hdeg == 0 for m in self.terms)

    def has_charge(self, n: int) -> bool:
        return all(m.hdeg == n for m in self.terms)

    def uses_w(self) -> bool:
        return any(c.uses_w() for c in self.terms.values())

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, Scalar.zero())

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: item[0].order_key(), reverse=True)

    # ---- 比较 ----
    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # ---- 文本 / JSON ----
    def to_text(self) -> str:
        pieces = [_term_text(c, "" if m == ONE_MONO else m.to_text()) for m, c in self.sorted_terms()]
        return join_terms(pieces)

    def to_json(self) -> List[Dict[str, object]]:
        return [{"mono": list(m), "coeff": c.to_json()} for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, records: Iterable[Dict[str, object]]) -> "AlgebraElement":
        total = cls.zero()
        for record in records:
            total = total + cls.monomial(Monomial(*record["mono"]), Scalar.from_json(record["coeff"]))
        return total

    def __repr__(self) -> str:
        return f"AlgebraElement({self.to_text()})"


class TensorElement:
    """A⊗A 中的元素，两条腿都是约化单项式"""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Tuple[Monomial, Monomial], Scalar]] = None):
        clean = {}
        for (left, right), coeff in (terms or {}).items():
            if not (left.is_reduced and right.is_reduced):
                raise ValueError(f"张量腿未约化: {left} ⊗ {right}")
            if coeff:
                clean[(left, right)] = coeff
        self.terms: Dict[Tuple[Monomial, Monomial], Scalar] = clean
        self._hash = None

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls()

    @classmethod
    def one(cls) -> "TensorElement":
        return cls({(ONE_MONO, ONE_MONO): Scalar.one()})

    @classmethod
    def of(cls, left: AlgebraElement, right: AlgebraElement) -> "TensorElement":
        """双线性展开 left ⊗ right"""
        terms: Dict[Tuple[Monomial, Monomial], Scalar] = {}
        for lm, lc in left.terms.items():
            for rm, rc in right.terms.items():
                key = (lm, rm)
                value = lc * rc
                terms[key] = terms[key] + value if key in terms else value
        return cls(terms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[AlgebraElement, AlgebraElement]]) -> "TensorElement":
        total = cls.zero()
        for left, right in pairs:
            total = total + cls.of(left, right)
        return total

    def __add__(self, other: "TensorElement") -> "TensorElement":
        result = dict(self.terms)
        for key, coeff in other.terms.items():
            current = result.get(key)
            result[key] = coeff if current is None else current + coeff
        return TensorElement(result)

    def __neg__(self) -> "TensorElement":
        return TensorElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "TensorElement":
        factor = Scalar.of(factor)
        return TensorElement({k: c * factor for k, c in self.terms.items()})

    def map_scalars(self, fn: Callable[[Scalar], Scalar]) -> "TensorElement":
        return TensorElement({k: fn(c) for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def left_legs(self) -> List[Monomial]:
        return [left for left, _ in self.terms]

    def right_legs(self) -> List[Monomial]:
        return [right for _, right in self.terms]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def to_text(self) -> str:
        ordered = sorted(self.terms.items(),
                         key=lambda item: (item[0][0].order_key(), item[0][1].order_key()),
                         reverse=True)
        pieces = [_term_text(c, f"{l.to_text()} (x) {r.to_text()}") for (l, r), c in ordered]
        return join_terms(pieces)

    def to_json(self) -> List[Dict[str, object]]:
        return [{"left": list(l), "right": list(r), "coeff": c.to_json()}
                for (l, r), c in sorted(self.terms.items(), key=lambda item: item[0])]

    def __repr__(self) -> str:
        return f"TensorElement({self.to_text()})"


class HopfElement:
    """H = O(U(1)) 中的 Laurent 多项式 Σ c_n tⁿ（群样基）"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, Scalar]] = None):
        self.terms: Dict[int, Scalar] = {n: c for n, c in (terms or {}).items() if c}

    @classmethod
    def t_power(cls, n: int, coeff: ScalarLike = 1) -> "HopfElement":
        return cls({n: Scalar.of(coeff)})

    def __add__(self, other: "HopfElement") -> "HopfElement":
        result = dict(self.terms)
        for n, c in other.terms.items():
            result[n] = result[n] + c if n in result else c
        return HopfElement(result)

    def __neg__(self) -> "HopfElement":
        return HopfElement({n: -c for n, c in self.terms.items()})

    def __sub__(self, other: "HopfElement") -> "HopfElement":
        return self + (-other)

    def __mul__(self, other: Union["HopfElement", ScalarLike]) -> "HopfElement":
        if not isinstance(other, HopfElement):
            factor = Scalar.of(other)
            return HopfElement({n: c * factor for n, c in self.terms.items()})
        result: Dict[int, Scalar] = {}
        for n1, c1 in self.terms.items():
            for n2, c2 in other.terms.items():
                value = c1 * c2
                result[n1 + n2] = result[n1 + n2] + value if n1 + n2 in result else value
        return HopfElement(result)

    __rmul__ = __mul__

    def counit(self) -> Scalar:
        """ε(tⁿ) = 1"""
        total = Scalar.zero()
        for c in self.terms.values():
            total = total + c
        return total

    def antipode(self) -> "HopfElement":
        """S(tⁿ) = t⁻ⁿ"""
        return HopfElement({-n: c for n, c in self.terms.items()})

    def coproduct(self) -> List[Tuple[int, int, Scalar]]:
        """Δ(tⁿ) = tⁿ⊗tⁿ，按 (n, n, c) 列出"""
        return [(n, n, c) for n, c in sorted(self.terms.items())]

    def in_augmentation_ideal(self) -> bool:
        """属于 H⁺ = ker ε"""
        return self.counit().is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_text(self) -> str:
        pieces = []
        for n, c in sorted(self.terms.items(), reverse=True):
            body = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            pieces.append(_term_text(c, body))
        return join_terms(pieces)

    def __repr__(self) -> str:
        return f"HopfElement({self.to_text()})"
