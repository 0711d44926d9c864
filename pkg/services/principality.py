"""主余模代数服务 - 强联络、Galois 映射及其逆、等变投射分裂、普适竖直提升与 φ_θ

ℓ(tⁿ) 按递归 ℓ(tⁿ) = z1∗·ℓ(tⁿ⁻¹)·z1 + z2∗·ℓ(tⁿ⁻¹)·z2 构造（n<0 时镜像），
保留 2^{|n|} 个 (lᵢ, rᵢ) 对，不跨分支合并同类项。
"""
import threading
from typing import Dict, List, Optional, Tuple

from models.algebra_models import AlgebraElement, HopfElement, Monomial, ProductKind, TensorElement
from models.principal_models import StrongConnectionValue
from models.report_models import CheckResult
from models.scalars import Scalar
from services.sphere_algebra import (
    Flag, ONE, Z1, Z1S, Z2, Z2S, coact_H, mu, product,
)
from utils.enhanced_logger import logger
from utils.errors import NotUniversalFormError

GaloisImage = List[Tuple[AlgebraElement, int]]

_cache: Dict[Tuple[int, ProductKind], StrongConnectionValue] = {}
_cache_lock = threading.Lock()


def _build(n: int, kind: ProductKind) -> StrongConnectionValue:
    if n == 0:
        return StrongConnectionValue(0, ((ONE, ONE),), kind)
    if n > 0:
        previous = strong_connection(n - 1, kind)
        branches = ((Z1S, Z1), (Z2S, Z2))
    else:
        previous = strong_connection(n + 1, kind)
        branches = ((Z1, Z1S), (Z2, Z2S))
    pairs = tuple(
        (product(left_gen, left, kind), product(right, right_gen, kind))
        for left_gen, right_gen in branches
        for left, right in previous.pairs
    )
    return StrongConnectionValue(n, pairs, kind)


def strong_connection(n: int, deformed: Flag = False) -> StrongConnectionValue:
    """ℓ(tⁿ)，按 (n, 乘法种类) 缓存"""
    kind = ProductKind.coerce(deformed)
    key = (n, kind)
    with _cache_lock:
        cached = _cache.get(key)
    if cached is not None:
        return cached
    value = _build(n, kind)
    with _cache_lock:
        value = _cache.setdefault(key, value)
    logger.log_process_step("strong_connection", "built", {"n": n, "kind": kind.value,
                                                            "pairs": len(value.pairs)})
    return value


def clear_cache():
    with _cache_lock:
        _cache.clear()


def tampered_connection(n: int = 1, deformed: Flag = False) -> StrongConnectionValue:
    """负对照：只保留递归的第一个分支（n=1 时即 z1∗⊗z1）"""
    honest = strong_connection(n, deformed)
    return StrongConnectionValue(n, honest.pairs[: max(1, len(honest.pairs) // 2)], honest.kind)


def verify_strong_connection(v: StrongConnectionValue) -> List[CheckResult]:
    """归一化、分裂性、右余线性、左余线性四条公理；失败只记录，不抛异常"""
    value = v.value
    tag = f"n={v.n},{v.kind.value}"
    checks = []

    if v.n == 0:
        checks.append(CheckResult.compare(f"normalization[{tag}]", value, TensorElement.one()))
    else:
        checks.append(CheckResult.ok(f"normalization[{tag}]", applicable=False))

    checks.append(CheckResult.compare(f"splitting[{tag}]", mu(value, v.kind), ONE))

    bad_right = {key: c for key, c in value.terms.items() if key[1].hdeg != v.n}
    bad_left = {key: c for key, c in value.terms.items() if key[0].hdeg != -v.n}
    for name, bad in (("right_colinearity", bad_right), ("left_colinearity", bad_left)):
        if bad:
            checks.append(CheckResult.fail(f"{name}[{tag}]", TensorElement(bad).to_text(),
                                           offending_terms=len(bad)))
        else:
            checks.append(CheckResult.ok(f"{name}[{tag}]", terms=len(value.terms)))
    return checks


def _group_by_charge(acc: Dict[int, AlgebraElement]) -> GaloisImage:
    return [(acc[n], n) for n in sorted(acc) if not acc[n].is_zero()]


def galois_can(t: TensorElement, deformed: Flag = False) -> GaloisImage:
    """can(a⊗a′) = a·a′₍₀₎ ⊗ a′₍₁₎，按 n 分组"""
    kind = ProductKind.coerce(deformed)
    acc: Dict[int, AlgebraElement] = {}
    for (left, right), coeff in t.terms.items():
        term = product(AlgebraElement.monomial(left, coeff), AlgebraElement.monomial(right), kind)
        n = right.hdeg
        acc[n] = acc[n] + term if n in acc else term
    return _group_by_charge(acc)


def galois_inverse(a: AlgebraElement, h: HopfElement, deformed: Flag = False) -> TensorElement:
    """(a, tⁿ) ↦ a·ℓ(tⁿ)，代表元取在 A⊗A 中"""
    kind = ProductKind.coerce(deformed)
    total = TensorElement.zero()
    for n, coeff in sorted(h.terms.items()):
        for left, right in strong_connection(n, kind).pairs:
            total = total + TensorElement.of(product(a, left, kind), right).scale(coeff)
    return total


def galois_round_trip(a: AlgebraElement, n: int, deformed: Flag = False) -> CheckResult:
    kind = ProductKind.coerce(deformed)
    image = galois_can(galois_inverse(a, HopfElement.t_power(n), kind), kind)
    expected = [(a, n)] if not a.is_zero() else []
    name = f"galois_round_trip[{a.to_text()},n={n},{kind.value}]"
    if image == expected:
        return CheckResult.ok(name)
    return CheckResult.fail(name, "; ".join(f"{x.to_text()} (x) t^{m}" for x, m in image) or "0")


def eq_proj_splitting(a: AlgebraElement, deformed: Flag = False) -> TensorElement:
    """σ = (μ⊗id)∘(id⊗ℓ)∘δ：Σₙ aₙ·lᵢ ⊗ rᵢ，左腿落在 B 中"""
    kind = ProductKind.coerce(deformed)
    total = TensorElement.zero()
    for component, n in coact_H(a):
        for left, right in strong_connection(n, kind).pairs:
            total = total + TensorElement.of(product(component, left, kind), right)
    return total


def universal_ver(t: TensorElement, deformed: Flag = False) -> GaloisImage:
    """普适竖直提升：定义域为 ker μ，公式与 can 相同"""
    kind = ProductKind.coerce(deformed)
    residual = mu(t, kind)
    if not residual.is_zero():
        raise NotUniversalFormError(f"张量不是普适 1-形式，μ(T) = {residual.to_text()}")
    return galois_can(t, kind)


def augmentation_collapse(image: GaloisImage) -> AlgebraElement:
    """(id⊗ε) 作用于 A⊗H 中的像；像属于 A⊗H⁺ 当且仅当结果为 0"""
    total = AlgebraElement.zero()
    for component, _ in image:
        total = total + component
    return total


def universal_splitting(n: int, deformed: Flag = False) -> TensorElement:
    """s(𝟙⊗tⁿ) = ℓ(tⁿ) − 𝟙⊗𝟙"""
    return strong_connection(n, deformed).value - TensorElement.one()


def base_form_sample(a: AlgebraElement, b: AlgebraElement, b2: AlgebraElement,
                     a2: AlgebraElement, deformed: Flag = False) -> TensorElement:
    """A·Γ¹(B)·A 中的样本 a·(b⊗b2 − b·b2⊗𝟙)·a2"""
    kind = ProductKind.coerce(deformed)
    return (TensorElement.of(product(a, b, kind), product(b2, a2, kind))
            - TensorElement.of(product(product(a, b, kind), b2, kind), a2))


def _twist(t: TensorElement, kind: ProductKind, sign: int) -> TensorElement:
    return TensorElement({
        (left, right): coeff * kind.phase(sign * left.kdeg.pairing(right.kdeg))
        for (left, right), coeff in t.terms.items()
    })


def phi_theta(t: TensorElement, deformed: Optional[Flag] = None) -> TensorElement:
    """φ_θ(a⊗a′) = σ(kdeg a, kdeg a′)·a⊗a′"""
    kind = ProductKind.THETA if deformed is None else ProductKind.coerce(deformed)
    return _twist(t, kind, 1)


def phi_theta_inverse(t: TensorElement, deformed: Optional[Flag] = None) -> TensorElement:
    kind = ProductKind.THETA if deformed is None else ProductKind.coerce(deformed)
    return _twist(t, kind, -1)


def tensor_sample(monomials: List[Monomial], coeff: Scalar = None) -> List[TensorElement]:
    """由单项式两两组成的 a⊗a′ 样本"""
    coeff = Scalar.one() if coeff is None else coeff
    return [TensorElement.of(AlgebraElement.monomial(m1, coeff), AlgebraElement.monomial(m2))
            for m1 in monomials for m2 in monomials]
