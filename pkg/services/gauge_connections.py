"""联络与规范服务 - 联络空间、协变导数、曲率、规范作用、缩并、L• 与有效参数

联络存为 (乘法种类, α)，realized = ω⁰ 或 ω⁰_θ 加 α。
规范参数 ζ = b⊗X 在内部按 K-次数分解为齐次片。
"""
from typing import Dict, List, Sequence, Union

from models.algebra_models import AlgebraElement, KIndex, ProductKind
from models.form_models import GENERATOR_HDEGS, GENERATOR_KDEGS, PAIRS, OneForm, TwoForm
from models.principal_models import Connection, GaugeParameter
from models.report_models import CheckResult
from models.scalars import U
from services.associated_modules import L_V
from services.kahler_calculus import (
    GENERATOR_ELEMENTS, canonicalize, d_any, differential, differential1, form_action,
    is_horizontal, omega_zero, ver_X, wedge,
)
from services.sphere_algebra import Flag, coact_H, coact_K, product
from utils.enhanced_logger import logger
from utils.errors import NotBaseFormError, NotCoinvariantError, NotHorizontalError, UnsupportedDegreeError

Form = Union[AlgebraElement, OneForm, TwoForm]


# ---- 联络 ----

def is_base_form(alpha: OneForm) -> bool:
    """α ∈ Ω¹(B)：水平且 H-余不变"""
    coinvariant = all(alpha.term_hdeg(i, m) == 0 for i, m, _ in alpha.terms())
    return coinvariant and is_horizontal(alpha)


def make_connection(alpha: OneForm, deformed: Flag = False) -> Connection:
    kind = ProductKind.coerce(deformed)
    alpha = canonicalize(alpha)
    if not is_base_form(alpha):
        logger.warning(f"联络参数不在 Ω¹(B) 中: {alpha.to_text()}")
        raise NotBaseFormError(f"α 不在 Ω¹(B) 中: {alpha.to_text()}")
    realized = canonicalize(omega_zero(kind) + alpha)
    return Connection(kind, alpha, realized)


def con_bijection(c: Connection) -> Connection:
    """ω⁰_θ + α ↦ ω⁰ + α（反之亦然），α 保持不变"""
    kind = ProductKind.CLASSICAL if c.deformed else ProductKind.THETA
    return Connection(kind, c.alpha, canonicalize(omega_zero(kind) + c.alpha))


def connection_checks(c: Connection) -> List[CheckResult]:
    tag = f"{c.kind.value};alpha={c.alpha.to_text()}"
    bad = [(i, m) for i, m, _ in c.realized.terms() if c.realized.term_hdeg(i, m) != 0]
    return [
        CheckResult.ok(f"connection_coinvariant[{tag}]") if not bad
        else CheckResult.fail(f"connection_coinvariant[{tag}]", c.realized.to_text()),
        CheckResult.compare(f"connection_vertical_lift[{tag}]", ver_X(c.realized, c.kind), AlgebraElement.one()),
    ]


# ---- 协变导数与曲率 ----

def _charge_pieces(value: Form) -> Dict[int, Form]:
    if isinstance(value, AlgebraElement):
        return {n: piece for piece, n in coact_H(value)}
    pieces: Dict[int, List] = {}
    for index, mono, coeff in value.terms():
        coeffs = pieces.setdefault(value.term_hdeg(index, mono), [AlgebraElement.zero()] * value.RANK)
        coeffs[index] = coeffs[index] + AlgebraElement.monomial(mono, coeff)
    return {n: type(value)(coeffs, canonical=value.canonical) for n, coeffs in pieces.items()}


def cov_deriv(lam: Union[AlgebraElement, OneForm], c: Connection) -> Form:
    """D̄λ = dλ − Σₙ n·λₙ∧ω"""
    if isinstance(lam, TwoForm):
        raise UnsupportedDegreeError("2-形式的协变导数是 3-形式，不实现")
    if isinstance(lam, OneForm) and not is_horizontal(lam):
        raise NotHorizontalError(f"协变导数的输入必须是水平形式: {lam.to_text()}")
    result = d_any(lam)
    for n, piece in sorted(_charge_pieces(lam).items()):
        if n:
            result = result - wedge(piece, c.realized, c.kind).scale(n)
    return canonicalize(result)


def curvature_form(c: Connection) -> TwoForm:
    return differential1(c.realized)


def curvature_check(c: Connection, samples: Sequence[AlgebraElement]) -> List[CheckResult]:
    """D̄²λ = −Σₙ n·λₙ∧dω"""
    d_omega = curvature_form(c)
    checks = []
    for lam in samples:
        lhs = cov_deriv(cov_deriv(lam, c), c)
        rhs = TwoForm.zero()
        for n, piece in _charge_pieces(lam).items():
            if n:
                rhs = rhs - form_action(piece, d_omega, "left", c.kind).scale(n)
        checks.append(CheckResult.compare(
            f"curvature[{c.kind.value};alpha={c.alpha.to_text()};{lam.to_text()}]",
            lhs, canonicalize(rhs), curvature=d_omega.to_text()))
    return checks


def strongness_check(lam: AlgebraElement, c: Connection) -> CheckResult:
    """D̄ 的像落在 Ω¹(B)·A 中"""
    image = cov_deriv(lam, c)
    name = f"strongness[{c.kind.value};{lam.to_text()}]"
    return CheckResult.ok(name) if is_horizontal(image) else CheckResult.fail(name, image.to_text())


# ---- 规范作用与缩并 ----

def _gauge_b(zeta: Union[GaugeParameter, AlgebraElement]) -> AlgebraElement:
    b = zeta.b if isinstance(zeta, GaugeParameter) else zeta
    if not b.is_coinvariant():
        raise NotCoinvariantError(f"规范参数不在 B 中: {b.to_text()}")
    return b


def gauge_act_algebra(a: AlgebraElement, zeta: Union[GaugeParameter, AlgebraElement],
                      deformed: Flag = False) -> AlgebraElement:
    """a ◁ ζ = Σₙ n·(aₙ ∘ b)"""
    b = _gauge_b(zeta)
    total = AlgebraElement.zero()
    for piece, n in coact_H(a):
        if n:
            total = total + product(piece, b, deformed).scale(n)
    return total


def _contract_oneform(omega: OneForm, b: AlgebraElement, kind: ProductKind) -> AlgebraElement:
    return product(ver_X(omega, kind), b, kind)


def _contract_twoform(omega: TwoForm, b_piece: AlgebraElement, beta: KIndex, kind: ProductKind) -> OneForm:
    """a dzᵢ∧dzⱼ 分解为 (σ⁻¹·a dzᵢ)∧_θ dzⱼ，按辫反导子展开"""
    total = OneForm.zero()
    for position, mono, coeff in omega.terms():
        i, j = PAIRS[position]
        k_i, k_j = GENERATOR_KDEGS[i], GENERATOR_KDEGS[j]
        untwist = kind.phase(-(mono.kdeg + k_i).pairing(k_j))
        lam = OneForm.basis(i, AlgebraElement.monomial(mono, coeff * untwist))
        iota_dzj = product(GENERATOR_ELEMENTS[j], b_piece, kind).scale(GENERATOR_HDEGS[j])
        first = form_action(iota_dzj, lam, "right", kind)
        second = form_action(_contract_oneform(lam, b_piece, kind), OneForm.basis(j), "left", kind)
        total = total + first - second.scale(kind.phase(-2 * beta.pairing(k_j)))
    return canonicalize(total)


def contract(omega: Form, zeta: Union[GaugeParameter, AlgebraElement], deformed: Flag = False) -> Form:
    """ι_ζ：1-形式 → 0-形式，2-形式 → 1-形式"""
    kind = ProductKind.coerce(deformed)
    b = _gauge_b(zeta)
    if isinstance(omega, AlgebraElement):
        return AlgebraElement.zero()
    if isinstance(omega, OneForm):
        return _contract_oneform(omega, b, kind)
    total = OneForm.zero()
    for beta, b_piece in coact_K(b):
        total = total + _contract_twoform(omega, b_piece, beta, kind)
    return canonicalize(total)


def gauge_act_form(omega: Form, zeta: Union[GaugeParameter, AlgebraElement], deformed: Flag = False) -> Form:
    """Cartan 公式 λ◁ζ = d ι_ζ(λ) + ι_ζ(dλ)"""
    if isinstance(omega, AlgebraElement):
        return gauge_act_algebra(omega, zeta, deformed)
    if isinstance(omega, TwoForm):
        raise UnsupportedDegreeError("2-形式的规范作用需要 3-形式")
    return canonicalize(differential(contract(omega, zeta, deformed))
                        + contract(differential1(omega), zeta, deformed))


def gauge_connection_check(c: Connection, b: AlgebraElement) -> CheckResult:
    """ω ◁ ζ = d b"""
    return CheckResult.compare(f"gauge_connection[{c.kind.value};alpha={c.alpha.to_text()};b={b.to_text()}]",
                               gauge_act_form(c.realized, b, c.kind), differential(b))


def gauge_preservation_check(c: Connection, b: AlgebraElement) -> CheckResult:
    """联络双射与规范作用交换"""
    flipped = con_bijection(c)
    return CheckResult.compare(f"gauge_preservation[{c.kind.value};alpha={c.alpha.to_text()};b={b.to_text()}]",
                               gauge_act_form(flipped.realized, b, flipped.kind),
                               gauge_act_form(c.realized, b, c.kind))


def gauge_shift(c: Connection, b: AlgebraElement) -> Connection:
    """无穷小规范变换后的联络 ω + ω◁ζ"""
    return make_connection(c.alpha + gauge_act_form(c.realized, b, c.kind), c.kind)


def braided_leibniz_check(a: AlgebraElement, a2: AlgebraElement, b: AlgebraElement) -> CheckResult:
    """(a⋆a′)◁ζ = a⋆(a′◁ζ) + R(kdeg b, kdeg a′)·(a◁ζ)⋆a′；a′ 按 K-分量逐项计算，b 为 K-齐次"""
    (beta, _), = coact_K(b)
    a_acted = gauge_act_algebra(a, b, True)
    lhs = gauge_act_algebra(product(a, a2, True), b, True)
    rhs = AlgebraElement.zero()
    for k2, component in coact_K(a2):
        rhs = (rhs + product(a, gauge_act_algebra(component, b, True), True)
               + product(a_acted, component, True).scale(ProductKind.THETA.phase(-2 * beta.pairing(k2))))
    return CheckResult.compare(f"braided_leibniz[{a.to_text()};{a2.to_text()};{b.to_text()}]", lhs, rhs)


# ---- 相位修正 ----

def gauge_intertwine_check(xi: AlgebraElement, n: int, b: AlgebraElement) -> CheckResult:
    """L_V(ξ◁ζ) 与 (L_V ξ)◁_θ ζ 之比恰为 u^{2m′n}；ξ 只需电荷为 n，比值与 m 无关"""
    (beta, _), = coact_K(b)
    m_prime = beta.m1
    ms = [-k.m2 for k, _ in coact_K(xi)]
    lhs = L_V(gauge_act_algebra(xi, b, False), n)
    rhs = gauge_act_algebra(L_V(xi, n), b, True)
    ratio = U ** (2 * m_prime * n)
    return CheckResult.compare(
        f"gauge_intertwine[m={','.join(map(str, ms))},m'={m_prime},n={n}]", lhs, rhs.scale(ratio),
        classical_phase=",".join((U ** ((m + m_prime) * n)).to_text() for m in ms),
        deformed_phase=",".join((U ** ((m - m_prime) * n)).to_text() for m in ms),
        ratio=ratio.to_text())


def _bullet_phase(kdeg: KIndex, sign: int, kind: ProductKind):
    m_index = -kdeg.m2
    return kind.phase(sign * m_index * (kdeg.m1 + kdeg.m2))


def _apply_bullet(lam: Form, sign: int, deformed: Flag) -> Form:
    kind = ProductKind.coerce(deformed)
    if isinstance(lam, AlgebraElement):
        return AlgebraElement._trusted({m: c * _bullet_phase(m.kdeg, sign, kind) for m, c in lam.terms.items()})
    if isinstance(lam, OneForm) and not is_horizontal(lam):
        raise NotHorizontalError(f"L• 只作用于水平形式: {lam.to_text()}")
    coeffs = [AlgebraElement.zero()] * lam.RANK
    for index, mono, coeff in lam.terms():
        phase = _bullet_phase(lam.term_kdeg(index, mono), sign, kind)
        coeffs[index] = coeffs[index] + AlgebraElement.monomial(mono, coeff * phase)
    return canonicalize(type(lam)(coeffs))


def L_bullet(lam: Form, deformed: Flag = True) -> Form:
    """每个双齐次项乘以 u^{m_index·hdeg}"""
    return _apply_bullet(lam, 1, deformed)


def L_bullet_inverse(lam: Form, deformed: Flag = True) -> Form:
    return _apply_bullet(lam, -1, deformed)


def effective_params(alpha: OneForm, n: int) -> OneForm:
    """α^{(n)} = Σ u^{−2m′n}·α_{m′}"""
    coeffs = [AlgebraElement.zero()] * 4
    for index, mono, coeff in alpha.terms():
        m_prime = -alpha.term_kdeg(index, mono).m2
        coeffs[index] = coeffs[index] + AlgebraElement.monomial(mono, coeff * U ** (-2 * m_prime * n))
    return canonicalize(OneForm(coeffs))


def effective_gauge_parameter(b: AlgebraElement, n: int) -> AlgebraElement:
    """ζ^{(n)} = Σ u^{−2m′n}·ζ_{m′}"""
    _gauge_b(b)
    return AlgebraElement._trusted({m: c * U ** (-2 * m.m_index * n) for m, c in b.terms.items()})


def covariant_intertwine_check(lam: AlgebraElement, n: int, alpha: OneForm) -> CheckResult:
    """(L•)⁻¹∘D̄_θ∘L• 在电荷 n 的 0-形式上等于以 ω⁰ + α^{(n)} 为联络的 D̄"""
    deformed = make_connection(alpha, True)
    lhs = L_bullet_inverse(cov_deriv(L_bullet(lam), deformed))
    rhs = cov_deriv(lam, make_connection(effective_params(alpha, n), False))
    return CheckResult.compare(f"covariant_intertwine[{lam.to_text()};alpha={alpha.to_text()}]", lhs, rhs)


def effective_gauge_check(xi: AlgebraElement, n: int, b: AlgebraElement) -> CheckResult:
    """L(ξ)◁_θ ζ = L(ξ◁ζ^{(n)})"""
    lhs = gauge_act_algebra(L_V(xi, n), b, True)
    rhs = L_V(gauge_act_algebra(xi, effective_gauge_parameter(b, n), False), n)
    return CheckResult.compare(f"effective_gauge[{xi.to_text()};b={b.to_text()}]", lhs, rhs)
