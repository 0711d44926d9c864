"""球面代数服务 - 规范型、双分次、余作用、交换乘法与 ⋆_θ 乘法

载体上唯一的重写规则是 z1·z1∗ → 1 − z2·z2∗（球面多项式 f 的首项为 z1z1∗，
{f} 是主理想的 Gröbner 基，所以重写合流）。
⋆_θ 乘法按齐次相位公式计算：m ⋆ m′ = σ(kdeg m, kdeg m′)·m·m′。
同伦族乘法使用同一引擎，相位单位换成 w。
"""
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Tuple, Union

from models.algebra_models import (
    AlgebraElement, HopfElement, KIndex, Monomial, ONE_MONO, ProductKind, TensorElement,
)
from models.scalars import Scalar, ScalarLike, Specialization
from utils.config import get_settings
from utils.enhanced_logger import logger
from utils.errors import NotCoinvariantError, PhaseUnitError

Flag = Union[bool, ProductKind]
RawTerms = Union[AlgebraElement, Mapping, Iterable[Tuple[Tuple[int, int, int, int], ScalarLike]]]


# ---- 规范型 ----

@lru_cache(maxsize=200_000)
def reduce_exponents(a: int, b: int, c: int, d: int) -> Tuple[Tuple[Monomial, int], ...]:
    """z1^a z2^b z1∗^c z2∗^d 的规范型：(z1z1∗)^k = (1 − z2z2∗)^k 二项展开"""
    k = min(a, c)
    if k == 0:
        return ((Monomial(a, b, c, d), 1),)
    return tuple(
        (Monomial(a - k, b + j, c - k, d + j), comb(k, j) * (-1) ** j)
        for j in range(k + 1)
    )


def _accumulate(acc: Dict[Monomial, Scalar], mono: Monomial, value: Scalar):
    current = acc.get(mono)
    acc[mono] = value if current is None else current + value


def _finish(acc: Dict[Monomial, Scalar]) -> AlgebraElement:
    return AlgebraElement._trusted({m: c for m, c in acc.items() if c})


def _raw_items(raw: RawTerms):
    if isinstance(raw, AlgebraElement):
        return raw.terms.items()
    if isinstance(raw, Mapping):
        return raw.items()
    return raw


def normal_form(raw: RawTerms) -> AlgebraElement:
    """未约化指数字的形式线性组合 → 规范 AlgebraElement"""
    if isinstance(raw, AlgebraElement):
        return raw
    acc: Dict[Monomial, Scalar] = {}
    for exps, coeff in _raw_items(raw):
        coeff = Scalar.of(coeff)
        for mono, mult in reduce_exponents(*exps):
            _accumulate(acc, mono, coeff if mult == 1 else coeff * mult)
    return _finish(acc)


def mirror_normal_form(raw: RawTerms) -> Dict[Monomial, Scalar]:
    """镜像规范型：改为消去 z2z2∗（z2·z2∗ → 1 − z1·z1∗），结果是覆盖多项式"""
    acc: Dict[Monomial, Scalar] = {}
    for exps, coeff in _raw_items(raw):
        a, b, c, d = exps
        coeff = Scalar.of(coeff)
        k = min(b, d)
        for j in range(k + 1):
            mult = comb(k, j) * (-1) ** j
            _accumulate(acc, Monomial(a + j, b - k, c + j, d - k), coeff * mult)
    return {m: c for m, c in acc.items() if c}


# ---- 乘法 ----

def _guard_units(kind: ProductKind, *elements: AlgebraElement):
    if kind is ProductKind.FAMILY or not get_settings().strict_phase_units:
        return
    for element in elements:
        if element.uses_w():
            logger.warning(f"w 单位出现在 {kind.value} 乘法中: {element.to_text()}")
            raise PhaseUnitError(f"{kind.value} 乘法的输入不能含 w 单位: {element.to_text()}")


def cocycle_sigma(p: KIndex, q: KIndex, deformed: Flag = True) -> Scalar:
    """σ(p, q) = u^{p1·q2 − p2·q1}（同伦族用 w）"""
    return ProductKind.coerce(deformed).phase(KIndex(*p).pairing(KIndex(*q)))


def rmatrix(p: KIndex, q: KIndex, deformed: Flag = True) -> Scalar:
    """余三角结构 R = σ⁻²"""
    return ProductKind.coerce(deformed).phase(-2 * KIndex(*p).pairing(KIndex(*q)))


def monomial_product(m1: Monomial, m2: Monomial, kind: ProductKind) -> List[Tuple[Monomial, Scalar]]:
    """两个约化单项式的乘积（含相位），已约化"""
    phase = kind.phase(m1.kdeg.pairing(m2.kdeg))
    return [
        (mono, phase if mult == 1 else phase * mult)
        for mono, mult in reduce_exponents(m1.a + m2.a, m1.b + m2.b, m1.c + m2.c, m1.d + m2.d)
    ]


def product(x: AlgebraElement, y: AlgebraElement, deformed: Flag = False) -> AlgebraElement:
    """按乘法种类计算 x·y / x⋆y / x⋆_w y"""
    kind = ProductKind.coerce(deformed)
    _guard_units(kind, x, y)
    acc: Dict[Monomial, Scalar] = {}
    for m1, c1 in x.terms.items():
        k1 = m1.kdeg
        for m2, c2 in y.terms.items():
            coeff = c1 * c2
            if kind is not ProductKind.CLASSICAL:
                pairing = k1.pairing(m2.kdeg)
                if pairing:
                    coeff = coeff * kind.phase(pairing)
            for mono, mult in reduce_exponents(m1.a + m2.a, m1.b + m2.b, m1.c + m2.c, m1.d + m2.d):
                _accumulate(acc, mono, coeff if mult == 1 else coeff * mult)
    return _finish(acc)


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """O(S³) 的交换乘法"""
    return product(x, y, ProductKind.CLASSICAL)


def star(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """O(S³_θ) 的 ⋆_θ 乘法"""
    return product(x, y, ProductKind.THETA)


def product_chain(factors: Iterable[AlgebraElement], deformed: Flag = False) -> AlgebraElement:
    result = AlgebraElement.one()
    for factor in factors:
        result = product(result, factor, deformed)
    return result


def power(x: AlgebraElement, exponent: int, deformed: Flag = False) -> AlgebraElement:
    if exponent < 0:
        raise ValueError(f"代数元素只能取非负整数次幂: {exponent}")
    return product_chain([x] * exponent, deformed)


def involution(x: AlgebraElement) -> AlgebraElement:
    """∗-对合：交换 (a,b) 与 (c,d)，标量取共轭"""
    return AlgebraElement._trusted({m.swapped(): c.involute() for m, c in x.terms.items()})


def specialize(x: AlgebraElement, target: Specialization) -> AlgebraElement:
    return x.map_scalars(lambda c: c.specialize(target))


# ---- 余作用 ----

def coact_H(x: AlgebraElement) -> List[Tuple[AlgebraElement, int]]:
    """δ：按 hdeg 分组，δ(分量) = 分量 ⊗ tⁿ"""
    groups: Dict[int, Dict[Monomial, Scalar]] = {}
    for mono, coeff in x.terms.items():
        groups.setdefault(mono.hdeg, {})[mono] = coeff
    return [(AlgebraElement._trusted(groups[n]), n) for n in sorted(groups)]


def coact_K(x: AlgebraElement) -> List[Tuple[KIndex, AlgebraElement]]:
    """ρ：按 kdeg 分组，ρ(分量) = t_kdeg ⊗ 分量"""
    groups: Dict[KIndex, Dict[Monomial, Scalar]] = {}
    for mono, coeff in x.terms.items():
        groups.setdefault(mono.kdeg, {})[mono] = coeff
    return [(k, AlgebraElement._trusted(groups[k])) for k in sorted(groups)]


def hdeg_component(x: AlgebraElement, n: int) -> AlgebraElement:
    return AlgebraElement._trusted({m: c for m, c in x.terms.items() if m.hdeg == n})


def kdeg_component(x: AlgebraElement, k: KIndex) -> AlgebraElement:
    return AlgebraElement._trusted({m: c for m, c in x.terms.items() if m.kdeg == k})


# ---- 张量运算 ----

def tensor_normal_form(raw: Iterable[Tuple[Tuple[tuple, tuple], ScalarLike]]) -> TensorElement:
    """逐腿约化"""
    terms: Dict[Tuple[Monomial, Monomial], Scalar] = {}
    items = raw.items() if isinstance(raw, Mapping) else raw
    for (left, right), coeff in items:
        coeff = Scalar.of(coeff)
        for lm, lk in reduce_exponents(*left):
            for rm, rk in reduce_exponents(*right):
                key = (lm, rm)
                value = coeff * (lk * rk)
                terms[key] = terms[key] + value if key in terms else value
    return TensorElement(terms)


def tensor_mul_factorwise(s: TensorElement, t: TensorElement, deformed: Flag = False) -> TensorElement:
    """(a⊗b)(c⊗d) = ac ⊗ bd，两条腿各自使用指定乘法"""
    kind = ProductKind.coerce(deformed)
    terms: Dict[Tuple[Monomial, Monomial], Scalar] = {}
    for (a, b), c1 in s.terms.items():
        for (c, d), c2 in t.terms.items():
            for lm, lc in monomial_product(a, c, kind):
                for rm, rc in monomial_product(b, d, kind):
                    key = (lm, rm)
                    value = c1 * c2 * lc * rc
                    terms[key] = terms[key] + value if key in terms else value
    return TensorElement(terms)


def mu(t: TensorElement, deformed: Flag = False) -> AlgebraElement:
    """乘法映射 μ(a⊗a′) = a·a′（或 a⋆a′）"""
    kind = ProductKind.coerce(deformed)
    acc: Dict[Monomial, Scalar] = {}
    for (left, right), coeff in t.terms.items():
        for mono, value in monomial_product(left, right, kind):
            _accumulate(acc, mono, coeff * value)
    return _finish(acc)


def is_universal_one_form(t: TensorElement, deformed: Flag = False) -> bool:
    """Γ¹(A) = ker μ"""
    return mu(t, deformed).is_zero()


def d_universal(a: AlgebraElement) -> TensorElement:
    """d_u(a) = 𝟙⊗a − a⊗𝟙"""
    one = AlgebraElement.one()
    return TensorElement.of(one, a) - TensorElement.of(a, one)


def delta_S(mono: Monomial) -> Tuple[HopfElement, AlgebraElement]:
    """δ_S(a) = S⁻¹(a₍₁₎)⊗a₍₀₎：hdeg n 的单项式给出 (t⁻ⁿ, 单项式)"""
    return HopfElement.t_power(-mono.hdeg), AlgebraElement.monomial(mono)


# ---- 常用元素与 B 的生成元 ----

ONE = AlgebraElement.one()
Z1 = AlgebraElement.generator("z1")
Z2 = AlgebraElement.generator("z2")
Z1S = AlgebraElement.generator("z1s")
Z2S = AlgebraElement.generator("z2s")
Z = AlgebraElement.monomial(Monomial(1, 0, 0, 1), 2)          # z = 2 z1 z2∗
ZS = AlgebraElement.monomial(Monomial(0, 1, 1, 0), 2)         # z∗ = 2 z1∗ z2
X = normal_form({(1, 0, 1, 0): 1, (0, 1, 0, 1): -1})          # x = z1∗z1 − z2∗z2


def monomials_up_to(degree: int) -> List[Monomial]:
    """次数 ≤ degree 的全部约化单项式，按单项式序升序"""
    result = []
    for total in range(degree + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                for c in range(total - a - b + 1):
                    d = total - a - b - c
                    if min(a, c) == 0:
                        result.append(Monomial(a, b, c, d))
    return sorted(result, key=Monomial.order_key)


def coinvariant_coordinates(b: AlgebraElement) -> Dict[Tuple[int, int, int], Scalar]:
    """把 B 中元素写成 z、z∗、x 的多项式，键为 (z 次数, z∗ 次数, x 次数)

    z1 z2∗ = z/2，z1∗ z2 = z∗/2，z2 z2∗ = (1 − x)/2。
    """
    if not b.is_coinvariant():
        raise NotCoinvariantError(f"元素不在 B 中: {b.to_text()}")
    coords: Dict[Tuple[int, int, int], Scalar] = {}
    for mono, coeff in b.terms.items():
        if mono.c == 0:
            z_power, zs_power, half_power = mono.a, 0, mono.b
        else:
            z_power, zs_power, half_power = 0, mono.c, mono.d
        scale = 2 ** (z_power + zs_power + half_power)
        for l in range(half_power + 1):
            value = coeff * Fraction(comb(half_power, l) * (-1) ** l, scale)
            key = (z_power, zs_power, l)
            coords[key] = coords[key] + value if key in coords else value
    return {k: v for k, v in coords.items() if v}


def evaluate_coordinates(coords: Dict[Tuple[int, int, int], Scalar]) -> AlgebraElement:
    """坐标多项式在 z、z∗、x 处求值"""
    total = AlgebraElement.zero()
    for (i, j, k), coeff in coords.items():
        total = total + product_chain([Z] * i + [ZS] * j + [X] * k).scale(coeff)
    return total


def is_base_product_phase_free(b1: AlgebraElement, b2: AlgebraElement) -> bool:
    """B 中乘积不依赖 u：b1 ⋆ b2 = b1·b2"""
    return star(b1, b2) == mul(b1, b2)
