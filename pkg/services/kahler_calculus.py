"""Kähler 微分形式服务 - 微分、楔积、形式上的作用、竖直提升与 φ̄_θ

Ω¹(A) = (⊕ A dzᵢ)/⟨g⟩ 提升到自由覆盖 P⁴ 上处理：关系子模由 f·eᵢ 与
g = (z1∗, z2∗, z1, z2) 生成，其中 f = z1z1∗ + z2z2∗ − 1。
Ω² 同理取秩 6 覆盖，关系为 f·e_ij 与 g∧dz_k。
形变微积分与经典微积分共用同一载体，形变只体现在作用与楔积的相位上。
微分遵循右作用的分次 Leibniz 约定：d(a dzᵢ) = −da∧dzᵢ。
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from models.algebra_models import AlgebraElement, KIndex, Monomial, ProductKind
from models.form_models import (
    GENERATOR_HDEGS, GENERATOR_KDEGS, PAIR_INDEX, ModuleVector, OneForm, TwoForm,
)
from models.report_models import CheckResult
from models.scalars import Scalar
from services.groebner import GroebnerCache, ModuleGroebnerBasis, TermOrder, buchberger
from services.sphere_algebra import (
    Flag, X, Z, Z1, Z1S, Z2, Z2S, ZS, mul, normal_form, product,
)
from utils.enhanced_logger import log_process_step
from utils.errors import UnsupportedDegreeError

Poly = Dict[Monomial, Scalar]
Form = Union[OneForm, TwoForm]
AnyForm = Union[AlgebraElement, OneForm, TwoForm]

GENERATOR_ELEMENTS = (Z1, Z2, Z1S, Z2S)
UNIT_MONOMIALS = (Monomial(1, 0, 0, 0), Monomial(0, 1, 0, 0), Monomial(0, 0, 1, 0), Monomial(0, 0, 0, 1))

_gb_cache = GroebnerCache()


# ---- 覆盖多项式 ----

def _poly(element: AlgebraElement) -> Poly:
    return dict(element.terms)


def poly_mul(p: Poly, q: Poly) -> Poly:
    result: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            key = m1.times(m2)
            value = c1 * c2
            result[key] = result[key] + value if key in result else value
    return {m: c for m, c in result.items() if c}


def poly_add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    result = dict(p)
    for m, c in q.items():
        value = c if sign > 0 else -c
        result[m] = result[m] + value if m in result else value
    return {m: c for m, c in result.items() if c}


def partial(p: Poly, var: int) -> Poly:
    """∂/∂(z1, z2, z1∗, z2∗)[var]"""
    result: Poly = {}
    for mono, coeff in p.items():
        power = mono[var]
        if power == 0:
            continue
        exps = list(mono)
        exps[var] -= 1
        key = Monomial(*exps)
        value = coeff * power
        result[key] = result[key] + value if key in result else value
    return {m: c for m, c in result.items() if c}


SPHERE_POLY: Poly = {Monomial(1, 0, 1, 0): Scalar.one(), Monomial(0, 1, 0, 1): Scalar.one(),
                     Monomial(0, 0, 0, 0): Scalar.of(-1)}
RELATION_G: Tuple[Poly, ...] = tuple({UNIT_MONOMIALS[i]: Scalar.one()} for i in (2, 3, 0, 1))


def cover_differential(p: Poly) -> Tuple[Poly, ...]:
    return tuple(partial(p, var) for var in range(4))


def wedge_sign(i: int, j: int) -> Tuple[Optional[int], int]:
    """dzᵢ∧dzⱼ → (对下标, 符号)；i = j 时为 (None, 0)"""
    if i == j:
        return None, 0
    if i < j:
        return PAIR_INDEX[(i, j)], 1
    return PAIR_INDEX[(j, i)], -1


def _cover_wedge(first: Sequence[Poly], second: Sequence[Poly]) -> ModuleVector:
    terms: Dict[Tuple[int, Monomial], Scalar] = {}
    for i, p in enumerate(first):
        for j, q in enumerate(second):
            index, sign = wedge_sign(i, j)
            if index is None or not p or not q:
                continue
            for mono, coeff in poly_mul(p, q).items():
                key = (index, mono)
                value = coeff if sign > 0 else -coeff
                terms[key] = terms[key] + value if key in terms else value
    return ModuleVector(6, terms)


# ---- 关系子模与 Gröbner 基 ----

def relation_generators(rank: int) -> List[ModuleVector]:
    """秩 4：f·eᵢ 与 g；秩 6：f·e_ij 与 g∧dz_k"""
    generators = [ModuleVector(rank, {(p, m): c for m, c in SPHERE_POLY.items()}) for p in range(rank)]
    if rank == 4:
        generators.append(ModuleVector.from_polys(RELATION_G))
    elif rank == 6:
        for k in range(4):
            unit = [{} for _ in range(4)]
            unit[k] = {Monomial(): Scalar.one()}
            generators.append(_cover_wedge(RELATION_G, unit))
    else:
        raise UnsupportedDegreeError(f"没有秩 {rank} 的形式模")
    return generators


def base_differential_vectors() -> List[ModuleVector]:
    """d z、d z∗、d x 在 P⁴ 中的覆盖向量"""
    raw = (
        {Monomial(1, 0, 0, 1): Scalar.of(2)},
        {Monomial(0, 1, 1, 0): Scalar.of(2)},
        {Monomial(1, 0, 1, 0): Scalar.one(), Monomial(0, 1, 0, 1): Scalar.of(-1)},
    )
    return [ModuleVector.from_polys(cover_differential(p)) for p in raw]


def gb_init(order: Optional[TermOrder] = None, rank: int = 4) -> ModuleGroebnerBasis:
    """关系子模的约化 Gröbner 基（缓存）"""
    order = order or TermOrder.standard(rank)
    return _gb_cache.get(order.name, lambda: buchberger(rank, relation_generators(rank), order))


def horizontal_gb() -> ModuleGroebnerBasis:
    """增广子模 ⟨关系, dz, dz∗, dx⟩ 的 Gröbner 基"""
    order = TermOrder.standard(4)
    return _gb_cache.get("horizontal", lambda: buchberger(
        4, relation_generators(4) + base_differential_vectors(), order))


def clear_gb_cache():
    _gb_cache.clear()


# ---- 规范化 ----

def _form_class(rank: int):
    return OneForm if rank == 4 else TwoForm


def from_vector(vector: ModuleVector) -> Form:
    """余项向量 → 形式，系数按球面关系约化"""
    polys: List[Dict[Monomial, Scalar]] = [{} for _ in range(vector.rank)]
    for (position, mono), coeff in vector.terms.items():
        polys[position][mono] = coeff
    return _form_class(vector.rank)([normal_form(p) for p in polys], canonical=True)


def canonicalize(form: Form) -> Form:
    if form.canonical:
        return form
    basis = gb_init(rank=form.RANK)
    return from_vector(basis.reduce(ModuleVector.from_form(form)))


def canonical_oneform(coeffs: Sequence[AlgebraElement]) -> OneForm:
    return canonicalize(OneForm(coeffs))


def forms_equal(x: Form, y: Form) -> bool:
    return canonicalize(x) == canonicalize(y)


def mirror_canonicalize(form: Form) -> ModuleVector:
    """镜像项序下的余项（覆盖向量，不一定是球面约化的）"""
    basis = gb_init(TermOrder.mirror(form.RANK), rank=form.RANK)
    return basis.reduce(ModuleVector.from_form(form))


def mirror_confluence_check(form: Form) -> CheckResult:
    """镜像序余项映回标准序后规范型一致"""
    via_mirror = canonicalize(from_vector_unchecked(mirror_canonicalize(form)))
    return CheckResult.compare(f"mirror_confluence[{form.to_text()[:60]}]", via_mirror, canonicalize(form))


def from_vector_unchecked(vector: ModuleVector) -> Form:
    polys: List[Dict[Monomial, Scalar]] = [{} for _ in range(vector.rank)]
    for (position, mono), coeff in vector.terms.items():
        polys[position][mono] = coeff
    return _form_class(vector.rank)([normal_form(p) for p in polys])


# ---- 微分 ----

def differential(x: AlgebraElement) -> OneForm:
    """d 在单项式上是四项 Leibniz 展开"""
    coeffs = [normal_form(p) for p in cover_differential(_poly(x))]
    return canonicalize(OneForm(coeffs))


def differential1(omega: OneForm) -> TwoForm:
    """d(Σ aᵢ dzᵢ) = −Σ daᵢ∧dzᵢ"""
    terms: Dict[Tuple[int, Monomial], Scalar] = {}
    for i, coeff in enumerate(omega.coeffs):
        if coeff.is_zero():
            continue
        unit: List[Poly] = [{} for _ in range(4)]
        unit[i] = {Monomial(): Scalar.of(-1)}
        terms = _merge(terms, _cover_wedge(cover_differential(_poly(coeff)), unit).terms)
    return canonicalize(from_vector_unchecked(ModuleVector(6, terms)))


def _merge(x: Dict, y: Dict) -> Dict:
    result = dict(x)
    for key, value in y.items():
        result[key] = result[key] + value if key in result else value
    return {k: v for k, v in result.items() if v}


def d_any(value: AnyForm) -> Form:
    if isinstance(value, AlgebraElement):
        return differential(value)
    if isinstance(value, OneForm):
        return differential1(value)
    raise UnsupportedDegreeError("不实现 3-形式")


# ---- 作用与楔积 ----

def form_action(a: AlgebraElement, omega: Form, side: str = "left", deformed: Flag = False) -> Form:
    """左作用 a⋆ω 的相位为 σ(kdeg a, kdeg 项)，右作用 ω⋆a 为 σ(kdeg 项, kdeg a)"""
    if side not in ("left", "right"):
        raise ValueError(f"未知的作用方向: {side}")
    kind = ProductKind.coerce(deformed)
    coeffs = [AlgebraElement.zero() for _ in range(omega.RANK)]
    for index, mono, coeff in omega.terms():
        term_kdeg = omega.term_kdeg(index, mono)
        for a_mono, a_coeff in a.terms.items():
            if side == "left":
                phase = kind.phase(a_mono.kdeg.pairing(term_kdeg))
            else:
                phase = kind.phase(term_kdeg.pairing(a_mono.kdeg))
            piece = mul(AlgebraElement.monomial(a_mono, a_coeff * phase), AlgebraElement.monomial(mono, coeff))
            coeffs[index] = coeffs[index] + piece
    return canonicalize(type(omega)(coeffs))


def _oneform_terms(omega: OneForm):
    for index, mono, coeff in omega.terms():
        yield index, mono, coeff, omega.term_kdeg(index, mono)


def wedge(first: AnyForm, second: AnyForm, deformed: Flag = False) -> AnyForm:
    """λ∧λ′；形变时每对齐次项乘以 σ(整体 kdeg λ, 整体 kdeg λ′)"""
    if isinstance(first, AlgebraElement) and isinstance(second, AlgebraElement):
        return product(first, second, deformed)
    if isinstance(first, AlgebraElement):
        return form_action(first, second, "left", deformed)
    if isinstance(second, AlgebraElement):
        return form_action(second, first, "right", deformed)
    if not (isinstance(first, OneForm) and isinstance(second, OneForm)):
        raise UnsupportedDegreeError(f"楔积次数超过 2: {first.DEGREE} + {second.DEGREE}")
    kind = ProductKind.coerce(deformed)
    terms: Dict[Tuple[int, Monomial], Scalar] = {}
    for i, m1, c1, k1 in _oneform_terms(first):
        for j, m2, c2, k2 in _oneform_terms(second):
            index, sign = wedge_sign(i, j)
            if index is None:
                continue
            coeff = c1 * c2 * kind.phase(k1.pairing(k2))
            key = (index, m1.times(m2))
            value = coeff if sign > 0 else -coeff
            terms[key] = terms[key] + value if key in terms else value
    return canonicalize(from_vector_unchecked(ModuleVector(6, {k: v for k, v in terms.items() if v})))


def form_kdeg(form: Form) -> Optional[KIndex]:
    """K-齐次形式的 kdeg；非齐次返回 None"""
    degrees = {form.term_kdeg(i, m) for i, m, _ in form.terms()}
    return degrees.pop() if len(degrees) == 1 else None


def braided_commutativity_check(lam: OneForm, lam2: OneForm) -> CheckResult:
    """λ∧_θλ′ = −R(kdeg λ′, kdeg λ)·λ′∧_θλ（K-齐次 1-形式）"""
    k1, k2 = form_kdeg(lam), form_kdeg(lam2)
    name = f"braided_commutativity[{lam.to_text()};{lam2.to_text()}]"
    if k1 is None or k2 is None:
        return CheckResult.ok(name, skipped="zero or inhomogeneous")
    lhs = wedge(lam, lam2, True)
    rhs = wedge(lam2, lam, True).scale(-ProductKind.THETA.phase(-2 * k2.pairing(k1)))
    return CheckResult.compare(name, lhs, rhs)


# ---- 竖直提升与 φ̄_θ ----

def ver_X(omega: OneForm, deformed: Flag = False) -> AlgebraElement:
    """ver̄(Σ aᵢ dzᵢ) = Σ nᵢ·aᵢ∘zᵢ；形变时每项先经 φ̄⁻¹ 写成 σ⁻¹·a d_θ zᵢ"""
    kind = ProductKind.coerce(deformed)
    total = AlgebraElement.zero()
    for index, mono, coeff in omega.terms():
        n = GENERATOR_HDEGS[index]
        untwist = kind.phase(-mono.kdeg.pairing(GENERATOR_KDEGS[index]))
        piece = product(AlgebraElement.monomial(mono, coeff * untwist), GENERATOR_ELEMENTS[index], kind)
        total = total + piece.scale(n)
    return total


def deformed_a_d(a: AlgebraElement, a2: AlgebraElement, deformed: Flag = True) -> OneForm:
    """a d_θ a′ 即 a ⋆_θ d a′"""
    return form_action(a, differential(a2), "left", deformed)


def phi_bar(omega: OneForm) -> OneForm:
    """在共用载体上 φ̄_θ 是表示层面的恒等映射"""
    return canonicalize(omega)


def omega_zero(deformed: Flag = False) -> OneForm:
    """ω⁰ = z1∗dz1 + z2∗dz2（形变时为 z1∗ d_θ z1 + z2∗ d_θ z2）"""
    return deformed_a_d(Z1S, Z1, deformed) + deformed_a_d(Z2S, Z2, deformed)


def sphere_generators_forms() -> Tuple[OneForm, OneForm, OneForm]:
    """(d z, d z∗, d x)"""
    return differential(Z), differential(ZS), differential(X)


# ---- 水平性与 Ω¹(B) 的自由性 ----

def is_horizontal(omega: OneForm) -> bool:
    """ω ∈ A·{dz, dz∗, dx}"""
    return horizontal_gb().contains(ModuleVector.from_form(omega))


def _det3(rows: List[List[Poly]]) -> Poly:
    total: Poly = {}
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        term = poly_mul(poly_mul(rows[0][perm[0]], rows[1][perm[1]]), rows[2][perm[2]])
        total = poly_add(total, term, sign)
    return total


def base_minors() -> Dict[Tuple[int, int, int], AlgebraElement]:
    """[dz, dz∗, dx] 的 3×3 子式（行取 dz1..dz2∗ 中三个），按球面关系约化"""
    columns = [[vector.component(p) for p in range(4)] for vector in base_differential_vectors()]
    minors = {}
    for rows in combinations(range(4), 3):
        matrix = [[columns[col][row] for col in range(3)] for row in rows]
        minors[rows] = normal_form(_det3(matrix))
    return minors


@log_process_step("omega1_base_freeness")
def omega1B_basis_check() -> List[CheckResult]:
    """dz、dz∗、dx 在 A 上无非平凡合冲：某个 3×3 子式在 A 中非零"""
    minors = base_minors()
    nonzero = {rows: m for rows, m in minors.items() if not m.is_zero()}
    details = {"minors": {"".join(str(r + 1) for r in rows): m.to_text() for rows, m in minors.items()}}
    if nonzero:
        return [CheckResult.ok("omega1B_free_generators", **details)]
    return [CheckResult.fail("omega1B_free_generators", "all 3x3 minors vanish", **details)]


def relation_forms() -> List[OneForm]:
    """关系生成元 g 作为未规范化的 1-形式"""
    return [OneForm([normal_form(p) for p in RELATION_G])]


@log_process_step("groebner_certificates")
def gb_certificate_checks() -> List[CheckResult]:
    checks = []
    for rank, order in ((4, TermOrder.standard(4)), (6, TermOrder.standard(6)),
                        (4, TermOrder.mirror(4)), (6, TermOrder.mirror(6))):
        basis = gb_init(order, rank)
        cert = basis.certificate()
        name = f"groebner_certificate[{order.name}]"
        details = {"basis_size": len(basis.elements), "leads": basis.lead_texts(), **cert.to_dict()}
        if cert.passed:
            checks.append(CheckResult.ok(name, **details))
        else:
            checks.append(CheckResult.fail(name, f"nonzero S-pair residuals {cert.nonzero_residuals}", **details))
    horizontal = horizontal_gb().certificate()
    checks.append(CheckResult.ok("groebner_certificate[horizontal]", **horizontal.to_dict())
                  if horizontal.passed else
                  CheckResult.fail("groebner_certificate[horizontal]", str(horizontal.nonzero_residuals)))
    return checks


def specialize_form(form: AnyForm, target) -> AnyForm:
    """标量特化（θ = 0 极限等）作用到系数上"""
    if isinstance(form, AlgebraElement):
        return form.map_scalars(lambda c: c.specialize(target))
    return canonicalize(form.map_coeffs(lambda x: x.map_scalars(lambda c: c.specialize(target))))
