"""验证套件 - 每个套件把一组性质展开成 CheckResult 列表

套件之间互不依赖：每个套件拿到自己的 SuiteContext（含独立的随机数生成器），
所以报告与执行顺序、并行方式无关。
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as grid
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from controllers.expression_controller import evaluate_text
from models.algebra_models import AlgebraElement, HopfElement, KIndex, Monomial, ProductKind, TensorElement
from models.form_models import OneForm, TwoForm
from models.principal_models import WeightedComodule
from models.report_models import CheckResult
from models.scalars import GaussianRational, Scalar, Specialization, U, W
from services.associated_modules import (
    L_V, L_V_inverse, L_V_weighted, build_idempotent, decompose_charges, intertwining_check,
    scalar_naturality_check, verify_idempotent, verify_projective_iso,
)
from services.gauge_connections import (
    L_bullet, L_bullet_inverse, braided_leibniz_check, con_bijection, connection_checks, contract,
    covariant_intertwine_check, curvature_check, effective_gauge_check, effective_gauge_parameter,
    effective_params, gauge_connection_check, gauge_intertwine_check, gauge_preservation_check,
    gauge_shift, make_connection, strongness_check,
)
from services.homotopy_family import run_homotopy_check
from services.kahler_calculus import (
    GENERATOR_ELEMENTS, braided_commutativity_check, canonicalize, deformed_a_d, differential,
    differential1, form_action, gb_certificate_checks, is_horizontal, mirror_confluence_check,
    omega1B_basis_check, omega_zero, phi_bar, relation_forms, specialize_form, sphere_generators_forms,
    ver_X, wedge,
)
from services.principality import (
    augmentation_collapse, base_form_sample, eq_proj_splitting, galois_can, galois_round_trip,
    phi_theta, phi_theta_inverse, strong_connection, tampered_connection, tensor_sample,
    universal_splitting, universal_ver, verify_strong_connection,
)
from services.sphere_algebra import (
    ONE, X, Z, Z1, Z1S, Z2, Z2S, ZS, coact_H, coact_K, cocycle_sigma, coinvariant_coordinates,
    d_universal, delta_S, evaluate_coordinates, involution,
    is_base_product_phase_free, mirror_normal_form, monomials_up_to, mu, mul, normal_form, product,
    rmatrix, star, tensor_mul_factorwise, tensor_normal_form,
)
from services.sympy_oracle import ideal_equal, minors_oracle_checks, normal_form_oracle_check, product_oracle_check
from utils.errors import ExpressionSyntaxError, NotBaseFormError
from utils.expression_parser import parse, print_expression, random_corpus

KINDS = (ProductKind.CLASSICAL, ProductKind.THETA)


@dataclass
class SuiteContext:
    seed: int
    degree: int
    nmax: int
    tamper: bool = False
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    @property
    def small_nmax(self) -> int:
        """幂等元与族检查的 |n| 上限（矩阵规模 2^|n|）"""
        return min(self.nmax, 3)


@dataclass
class SuiteOutcome:
    checks: List[CheckResult]
    certificate: Optional[Dict[str, Any]] = None
    error: Optional[str] = None


# ---- 样本 ----

def monomial_elements(degree: int) -> List[AlgebraElement]:
    return [AlgebraElement.monomial(m) for m in monomials_up_to(degree)]


def base_elements(degree: int) -> List[AlgebraElement]:
    return [x for x in monomial_elements(degree) if x.is_coinvariant()]


def charge_elements(n: int, degree: int) -> List[AlgebraElement]:
    return [x for x in monomial_elements(degree) if x.has_charge(n)]


def kdeg_monomial(k1: int, k2: int) -> AlgebraElement:
    """kdeg = (k1, k2) 的约化单项式"""
    a, c = (k1, 0) if k1 >= 0 else (0, -k1)
    b, d = (k2, 0) if k2 >= 0 else (0, -k2)
    return AlgebraElement.monomial(Monomial(a, b, c, d))


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((1, 2)))


def random_scalar(rng: random.Random, with_w: bool = False) -> Scalar:
    total = Scalar.zero()
    for _ in range(rng.randint(1, 3)):
        q = GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2))
        total = total + Scalar.unit(rng.randint(-2, 2), rng.randint(-2, 2) if with_w else 0, q)
    return total


def random_element(rng: random.Random, pool: List[AlgebraElement], terms: int = 3,
                   with_w: bool = False) -> AlgebraElement:
    total = AlgebraElement.zero()
    for _ in range(terms):
        coeff = random_rational(rng)
        if with_w:
            coeff = W ** rng.randint(-2, 2) * coeff
        total = total + rng.choice(pool).scale(coeff)
    return total


def random_base_form(rng: random.Random) -> OneForm:
    """Σ b_k·dY_k，b_k ∈ B 次数 ≤ 2，Y ∈ {z, z∗, x}"""
    pool = base_elements(2)
    total = OneForm.zero()
    for dy in sphere_generators_forms():
        if rng.random() < 0.7:
            total = total + form_action(random_element(rng, pool, 2), dy)
    return canonicalize(total)


def all_equal(name: str, cases: Iterable[Tuple[Any, Any, str]], **details) -> CheckResult:
    """逐一比较 (lhs, rhs, 标签)，遇到第一个不等即失败"""
    count = 0
    for lhs, rhs, label in cases:
        count += 1
        if lhs != rhs:
            residual = CheckResult.compare(name, lhs, rhs).residual
            return CheckResult.fail(name, residual, sample=label, checked=count, **details)
    return CheckResult.ok(name, checked=count, **details)


def all_true(name: str, cases: Iterable[Tuple[bool, str]], **details) -> CheckResult:
    count = 0
    for flag, label in cases:
        count += 1
        if not flag:
            return CheckResult.fail(name, label, checked=count, **details)
    return CheckResult.ok(name, checked=count, **details)


def raises(name: str, error: type, fn: Callable[[], Any]) -> CheckResult:
    try:
        value = fn()
    except error:
        return CheckResult.ok(name, raised=error.__name__)
    return CheckResult.fail(name, f"expected {error.__name__}, got {getattr(value, 'to_text', lambda: value)()}")


# ---- 标量与球面代数 ----

def scalars_suite(ctx: SuiteContext) -> SuiteOutcome:
    triples = [tuple(random_scalar(ctx.rng, with_w=True) for _ in range(3)) for _ in range(12)]
    targets = list(Specialization)
    checks = [
        all_equal("scalar_associativity", (((x * y) * z, x * (y * z), x.to_text()) for x, y, z in triples)),
        all_equal("scalar_distributivity", ((x * (y + z), x * y + x * z, x.to_text()) for x, y, z in triples)),
        all_equal("scalar_commutativity", ((x * y, y * x, x.to_text()) for x, y, _ in triples)),
        all_equal("scalar_involution_order_two", ((x.involute().involute(), x, x.to_text()) for x, _, _ in triples)),
        all_equal("scalar_involution_multiplicative",
                  (((x * y).involute(), x.involute() * y.involute(), x.to_text()) for x, y, _ in triples)),
        all_equal("scalar_specialize_homomorphism", (
            ((x * y + z).specialize(t), x.specialize(t) * y.specialize(t) + z.specialize(t), f"{t.value}:{x.to_text()}")
            for x, y, z in triples for t in targets)),
        all_equal("scalar_specialize_commutes_with_involute", (
            (x.involute().specialize(t), x.specialize(t).involute(), f"{t.value}:{x.to_text()}")
            for x, _, _ in triples for t in targets)),
        all_equal("scalar_theta_zero_limit", (
            ((U ** j).specialize(Specialization.U_TO_ONE), Scalar.one(), f"u^{j}") for j in range(-6, 7))),
    ]
    return SuiteOutcome(checks)


def coinvariants_suite(ctx: SuiteContext) -> SuiteOutcome:
    base = base_elements(min(2 * ctx.degree, 4))
    random_base = [random_element(ctx.rng, base) for _ in range(5)]
    checks = [
        all_equal("coinvariant_coordinates_round_trip", (
            (evaluate_coordinates(coinvariant_coordinates(b)), b, b.to_text()) for b in base + random_base)),
        CheckResult.compare("sphere_base_relation[classical]", mul(ZS, Z) + mul(X, X), ONE),
        CheckResult.compare("sphere_base_relation[theta]", star(ZS, Z) + star(X, X), ONE),
        all_true("base_products_phase_free", (
            (is_base_product_phase_free(b1, b2), f"{b1.to_text()};{b2.to_text()}")
            for b1 in base for b2 in base)),
        all_true("base_closed_under_star", (
            (star(b1, b2).is_coinvariant(), f"{b1.to_text()};{b2.to_text()}") for b1 in base for b2 in base)),
        CheckResult.compare("base_generators_kdeg", [k for k, _ in coact_K(Z)] + [k for k, _ in coact_K(ZS)],
                            [KIndex(1, -1), KIndex(-1, 1)]),
    ]
    return SuiteOutcome(checks)


def bigrading_suite(ctx: SuiteContext) -> SuiteOutcome:
    monomials = monomial_elements(min(ctx.degree + 1, 3))
    samples = [random_element(ctx.rng, monomials, 4) for _ in range(10)]
    pairs = [(x, y) for x in monomial_elements(2) for y in monomial_elements(2)]

    def sum_h(x):
        total = AlgebraElement.zero()
        for component, _ in coact_H(x):
            total = total + component
        return total

    def sum_k(x):
        total = AlgebraElement.zero()
        for _, component in coact_K(x):
            total = total + component
        return total

    def h_then_k(x):
        return sorted((n, k, c.to_text()) for piece, n in coact_H(x) for k, c in coact_K(piece))

    def k_then_h(x):
        return sorted((n, k, c.to_text()) for k, piece in coact_K(x) for c, n in coact_H(piece))

    raw_words = [random_raw(ctx.rng, max_exponent=2) for _ in range(6)]
    disjoint_pairs = [(r1, {k: v for k, v in r2.items() if k not in r1})
                      for r1, r2 in zip(raw_words, raw_words[1:])]

    checks = [
        all_equal("coact_H_reassembles", ((sum_h(x), x, x.to_text()) for x in samples)),
        all_equal("coact_K_reassembles", ((sum_k(x), x, x.to_text()) for x in samples)),
        all_equal("bicomodule_compatibility", ((h_then_k(x), k_then_h(x), x.to_text()) for x in samples)),
        all_true("hdeg_is_kdeg_sum", ((m.hdeg == m.kdeg.m1 + m.kdeg.m2, m.to_text()) for m in monomials_up_to(4))),
        all_equal("homogeneous_star_formula", (
            (star(x, y), mul(x, y).scale(cocycle_sigma(coact_K(x)[0][0], coact_K(y)[0][0])),
             f"{x.to_text()};{y.to_text()}") for x, y in pairs)),
        all_equal("kdeg_additive", (
            ([k for k, _ in coact_K(star(x, y))], [coact_K(x)[0][0] + coact_K(y)[0][0]],
             f"{x.to_text()};{y.to_text()}") for x, y in pairs)),
        all_equal("hdeg_additive", (
            ([n for _, n in coact_H(mul(x, y))], [coact_H(x)[0][1] + coact_H(y)[0][1]],
             f"{x.to_text()};{y.to_text()}") for x, y in pairs)),
        all_equal("normal_form_idempotent", ((normal_form(x), x, x.to_text()) for x in samples)),
        all_equal("normal_form_linear", (
            (normal_form({**r1, **r2}), normal_form(r1) + normal_form(r2), str(sorted(r1)))
            for r1, r2 in disjoint_pairs)),
        CheckResult.compare("tensor_leg_reduction", tensor_normal_form({((1, 0, 1, 0), (0, 0, 0, 0)): 1}),
                            TensorElement.of(ONE - mul(Z2, Z2S), ONE)),
        CheckResult.compare("universal_differential_in_kernel", mu(d_universal(Z1)), AlgebraElement.zero()),
        CheckResult.compare("splitting_of_first_step", mu(TensorElement.of(Z1S, Z1) + TensorElement.of(Z2S, Z2)), ONE),
        all_equal("factorwise_tensor_product", (
            (mu(tensor_mul_factorwise(TensorElement.of(ONE, x), TensorElement.of(y, ONE), kind), kind),
             product(y, x, kind), f"{kind.value}:{x.to_text()};{y.to_text()}")
            for x, y in pairs[:40] for kind in KINDS)),
        all_equal("associated_coaction", (
            (delta_S(m)[0], HopfElement.t_power(-m.hdeg), m.to_text()) for m in monomials_up_to(3))),
    ]
    return SuiteOutcome(checks)


def braided_suite(ctx: SuiteContext) -> SuiteOutcome:
    monomials = monomial_elements(min(ctx.degree + 1, 3))
    one_forms = [OneForm.basis(i, x) for i in range(4) for x in monomial_elements(1)]
    checks = [
        all_equal("braided_commutativity", (
            (star(x, y), star(y, x).scale(rmatrix(coact_K(y)[0][0], coact_K(x)[0][0])),
             f"{x.to_text()};{y.to_text()}") for x in monomials for y in monomials)),
        CheckResult.compare("deformed_commutation_relation", star(Z1, Z2), star(Z2, Z1).scale(U ** 2)),
        all_equal("involution_antihomomorphism", (
            (involution(star(x, y)), star(involution(y), involution(x)), f"{x.to_text()};{y.to_text()}")
            for x in monomial_elements(2) for y in monomial_elements(2))),
        CheckResult.compare("involution_of_star_generators", involution(star(Z1, Z2)),
                            mul(Z1S, Z2S).scale(U ** -1)),
    ]
    checks.extend(braided_commutativity_check(lam, lam2) for lam in one_forms[:8] for lam2 in one_forms[8:])
    return SuiteOutcome(checks)


def cocycle_suite(ctx: SuiteContext) -> SuiteOutcome:
    bound = 2
    indices = [KIndex(i, j) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)]
    checks = [
        all_equal("two_cocycle_condition", (
            (cocycle_sigma(b, c) * cocycle_sigma(a, b + c), cocycle_sigma(a, b) * cocycle_sigma(a + b, c),
             f"{a};{b};{c}") for a, b, c in grid(indices, repeat=3)), bound=bound),
        all_equal("cocycle_bicharacter", (
            (cocycle_sigma(a + b, c), cocycle_sigma(a, c) * cocycle_sigma(b, c), f"{a};{b};{c}")
            for a, b, c in grid(indices, repeat=3)), bound=bound),
        all_equal("rmatrix_is_inverse_square", (
            (rmatrix(a, b), cocycle_sigma(a, b) ** -2, f"{a};{b}") for a, b in grid(indices, repeat=2))),
        all_equal("cocycle_unital", ((cocycle_sigma(KIndex(0, 0), a), Scalar.one(), str(a)) for a in indices)),
    ]
    return SuiteOutcome(checks)


# ---- 主余模代数 ----

def strong_connection_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    for kind in KINDS:
        for n in range(-ctx.nmax, ctx.nmax + 1):
            value = strong_connection(n, kind)
            if ctx.tamper and n == 1:
                value = tampered_connection(1, kind)
            checks.extend(verify_strong_connection(value))
        checks.append(CheckResult.compare(f"strong_connection_first_step[{kind.value}]",
                                          strong_connection(1, kind).value,
                                          TensorElement.of(Z1S, Z1) + TensorElement.of(Z2S, Z2)))
    return SuiteOutcome(checks)


def _principality_checks(ctx: SuiteContext, kind: ProductKind) -> List[CheckResult]:
    nbound = min(ctx.nmax, 3)
    checks: List[CheckResult] = []
    for n in range(-ctx.nmax, ctx.nmax + 1):
        checks.extend(verify_strong_connection(strong_connection(n, kind)))
    for a in monomial_elements(min(ctx.degree, 2)):
        for n in range(-nbound, nbound + 1):
            checks.append(galois_round_trip(a, n, kind))
    splitting_samples = monomial_elements(min(ctx.degree + 1, 3))
    splits = [(a, eq_proj_splitting(a, kind)) for a in splitting_samples]
    checks.append(all_true(f"splitting_left_legs_in_B[{kind.value}]", (
        (all(left.hdeg == 0 for left in s.left_legs()), a.to_text()) for a, s in splits)))
    checks.append(all_equal(f"splitting_collapses[{kind.value}]", ((mu(s, kind), a, a.to_text()) for a, s in splits)))
    return checks


def classical_principality_suite(ctx: SuiteContext) -> SuiteOutcome:
    return SuiteOutcome(_principality_checks(ctx, ProductKind.CLASSICAL))


def deformed_principality_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks = _principality_checks(ctx, ProductKind.THETA)
    checks.extend([
        CheckResult.compare("deformed_sphere_relation", star(Z1S, Z1) + star(Z2S, Z2), ONE),
        CheckResult.compare("deformed_sphere_relation_swapped", star(Z1, Z1S) + star(Z2, Z2S), ONE),
        CheckResult.compare("deformed_commutation_z1_z2", star(Z1, Z2), star(Z2, Z1).scale(U ** 2)),
        CheckResult.compare("deformed_commutation_z1_z2s", star(Z1, Z2S), star(Z2S, Z1).scale(U ** -2)),
        all_equal("theta_zero_limit_of_star", (
            (star(x, y).map_scalars(lambda c: c.specialize(Specialization.U_TO_ONE)), mul(x, y),
             f"{x.to_text()};{y.to_text()}") for x in monomial_elements(2) for y in monomial_elements(2))),
    ])
    return SuiteOutcome(checks)


def universal_atiyah_suite(ctx: SuiteContext) -> SuiteOutcome:
    tensors = tensor_sample(monomials_up_to(min(ctx.degree, 2)))
    checks = [
        all_equal("phi_theta_intertwines_products",
                  ((mu(phi_theta(t), False), mu(t, True), t.to_text()) for t in tensors)),
        all_equal("phi_theta_intertwines_lifts",
                  ((galois_can(phi_theta(t), False), galois_can(t, True), t.to_text()) for t in tensors)),
        all_equal("phi_theta_invertible", ((phi_theta_inverse(phi_theta(t)), t, t.to_text()) for t in tensors)),
        CheckResult.compare("phi_theta_example", phi_theta(TensorElement.of(Z1, Z2)),
                            TensorElement.of(Z1, Z2).scale(U)),
    ]
    base = base_elements(2)
    monomials = monomial_elements(1)
    for kind in KINDS:
        forms = [base_form_sample(ctx.rng.choice(monomials), ctx.rng.choice(base), ctx.rng.choice(base),
                                  ctx.rng.choice(monomials), kind) for _ in range(8)]
        checks.append(all_equal(f"universal_lift_kills_base_forms[{kind.value}]",
                                ((universal_ver(t, kind), [], t.to_text()) for t in forms)))
        preimages = []
        for a in monomials:
            for n in range(-2, 3):
                if n:
                    t = universal_splitting(n, kind)
                    lifted = TensorElement.from_pairs((product(a, left, kind), right) for left, right in
                                                      strong_connection(n, kind).pairs) - TensorElement.of(a, ONE)
                    expected = sorted([(a, n), (-a, 0)], key=lambda item: item[1])
                    preimages.append((universal_ver(lifted, kind), expected, f"{a.to_text()},n={n}"))
                    preimages.append((universal_ver(t, kind), sorted([(ONE, n), (-ONE, 0)], key=lambda item: item[1]),
                                      f"splitting n={n}"))
        checks.append(all_equal(f"universal_lift_surjective[{kind.value}]", preimages))
        checks.append(all_equal(f"universal_lift_augmentation[{kind.value}]", (
            (augmentation_collapse(universal_ver(universal_splitting(n, kind), kind)), AlgebraElement.zero(), f"n={n}")
            for n in range(-ctx.nmax, ctx.nmax + 1))))
    deformed_forms = [universal_splitting(n, True) for n in (-2, -1, 1, 2)] + [d_universal(x) for x in monomials]
    checks.append(all_equal("phi_theta_intertwines_universal_lifts", (
        (universal_ver(phi_theta(t), False), universal_ver(t, True), t.to_text()) for t in deformed_forms)))
    return SuiteOutcome(checks)


# ---- 关联模 ----

def module_iso_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    base = [kdeg_monomial(p, -p) for p in range(-2, 3)]
    for n in range(-2, 3):
        for xi in charge_elements(n, min(ctx.degree + 1, 3)):
            for b in base:
                checks.append(intertwining_check(b, xi, n))
            checks.append(scalar_naturality_check(xi, n, Scalar.of(GaussianRational(2, 1))))
    for kind in KINDS:
        for n in range(-ctx.small_nmax, ctx.small_nmax + 1):
            checks.extend(verify_idempotent(build_idempotent(n, kind)))
            samples = charge_elements(n, abs(n) + 2)[:6]
            checks.extend(verify_projective_iso(n, kind, samples))
    samples = [random_element(ctx.rng, monomial_elements(3), 5) for _ in range(6)]
    checks.append(all_equal("charge_decomposition_reassembles", (
        (sum(decompose_charges(x).values(), AlgebraElement.zero()), x, x.to_text()) for x in samples)))
    comodule = WeightedComodule((1, -1, 2))
    components = [Z1, Z2S, mul(Z1, Z2)]
    checks.append(CheckResult.compare("weighted_comodule_action", L_V_weighted(components, comodule),
                                      [L_V(x, n) for x, n in zip(components, comodule.charges)]))
    checks.append(all_equal("L_V_inverse", (
        (L_V_inverse(L_V(x, n), n), x, x.to_text()) for n in range(-2, 3) for x in charge_elements(n, 3))))
    return SuiteOutcome(checks)


# ---- Kähler 微积分 ----

def kahler_engine_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks = gb_certificate_checks()
    monomials = monomial_elements(min(ctx.degree + 1, 3))
    checks.append(all_true("d_squared_zero", ((differential1(differential(a)).is_zero(), a.to_text())
                                              for a in monomials)))
    checks.append(CheckResult.compare("relation_differential", differential(mul(Z1S, Z1) + mul(Z2S, Z2)),
                                      OneForm.zero()))
    g = relation_forms()[0]
    checks.append(CheckResult.compare("relation_reduces_to_zero", canonicalize(g), OneForm.zero()))
    for kind in KINDS:
        checks.append(all_equal(f"vertical_lift_well_defined[{kind.value}]", (
            (ver_X(omega, kind), AlgebraElement.zero(), omega.to_text()) for omega in
            [g] + [OneForm([mul(a, c) for c in g.coeffs]) for a in monomial_elements(2)])))
        checks.append(all_true(f"wedge_well_defined[{kind.value}]", (
            (wedge(OneForm([mul(a, c) for c in g.coeffs]), OneForm.basis(j), kind).is_zero(), f"{a.to_text()},{j}")
            for a in monomial_elements(1) for j in range(4))))
    checks.append(all_true("differential1_well_defined", (
        (differential1(OneForm([mul(a, c) for c in g.coeffs])).is_zero(), a.to_text())
        for a in monomial_elements(2))))
    sample_forms = [OneForm.basis(i, a) for i in range(4) for a in monomial_elements(1)]
    sample_forms += [form_action(a, dy) for a in monomial_elements(1) for dy in sphere_generators_forms()]
    checks.append(all_true("atiyah_exactness", (
        (is_horizontal(omega) == ver_X(omega).is_zero(), omega.to_text()) for omega in sample_forms)))
    for kind in KINDS:
        checks.append(all_equal(f"vertical_lift_surjective[{kind.value}]", (
            (ver_X(form_action(a, omega_zero(kind), "left", kind), kind), a, a.to_text()) for a in monomials)))
    checks.append(all_equal("theta_zero_limit_of_wedge", (
        (specialize_form(wedge(x, y, True), Specialization.U_TO_ONE), wedge(x, y, False),
         f"{x.to_text()};{y.to_text()}") for x in sample_forms[:8] for y in sample_forms[8:16])))
    zero_forms = monomial_elements(1)
    one_forms = sample_forms[:8]
    checks.append(all_equal("deformed_wedge_associative", (
        (wedge(wedge(lhs, mid, True), rhs, True), wedge(lhs, wedge(mid, rhs, True), True),
         f"{lhs.to_text()};{mid.to_text()};{rhs.to_text()}")
        for lhs, mid, rhs in (
            [(a, b, lam) for a in zero_forms for b in zero_forms for lam in one_forms[:2]]
            + [(a, lam, mu1) for a in zero_forms for lam in one_forms[:2] for mu1 in one_forms[2:4]]
            + [(lam, a, mu1) for a in zero_forms for lam in one_forms[:2] for mu1 in one_forms[2:4]]))))
    checks.append(all_equal("classical_actions_agree", (
        (form_action(a, omega, "left"), form_action(a, omega, "right"), f"{a.to_text()};{omega.to_text()}")
        for a in zero_forms for omega in one_forms)))
    return SuiteOutcome(checks)


def kahler_atiyah_suite(ctx: SuiteContext) -> SuiteOutcome:
    base = base_elements(2)
    monomials = monomial_elements(min(ctx.degree, 2))
    checks = [
        CheckResult.compare("phi_bar_of_base_connection", phi_bar(omega_zero(True)), omega_zero(False)),
        all_equal("phi_bar_identity_on_base_forms", (
            (phi_bar(deformed_a_d(b, b2, True)), deformed_a_d(b, b2, False), f"{b.to_text()};{b2.to_text()}")
            for b in base for b2 in base)),
        all_equal("vertical_lift_agreement", (
            (ver_X(omega, True), ver_X(omega, False), omega.to_text())
            for omega in [deformed_a_d(a, a2, True) for a in monomials for a2 in monomials])),
        all_equal("deformed_vertical_lift_formula", (
            (ver_X(deformed_a_d(a, a2, True), True), star(a, a2).scale(coact_H(a2)[0][1]),
             f"{a.to_text()};{a2.to_text()}") for a in monomials for a2 in monomials)),
        CheckResult.compare("vertical_lift_of_base_connection[classical]", ver_X(omega_zero(False)), ONE),
        CheckResult.compare("vertical_lift_of_base_connection[theta]", ver_X(omega_zero(True), True), ONE),
        all_equal("vertical_lift_of_generators", (
            (ver_X(OneForm.basis(i)), GENERATOR_ELEMENTS[i].scale(1 if i < 2 else -1), f"dz{i + 1}")
            for i in range(4))),
        CheckResult.compare("deformed_a_d_example", deformed_a_d(Z1S, Z1), canonicalize(OneForm.basis(0, Z1S))),
    ]
    return SuiteOutcome(checks)


def horizontal_forms_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks = omega1B_basis_check()
    checks.append(CheckResult.ok("base_connection_not_horizontal") if not is_horizontal(omega_zero())
                  else CheckResult.fail("base_connection_not_horizontal", omega_zero().to_text()))
    checks.append(all_true("base_differentials_horizontal", (
        (is_horizontal(form_action(b, dy)), f"{b.to_text()};{dy.to_text()}")
        for b in base_elements(2) for dy in sphere_generators_forms())))
    connections = [make_connection(OneForm.zero(), kind) for kind in KINDS]
    connections.append(make_connection(random_base_form(ctx.rng), True))
    for c in connections:
        for lam in monomial_elements(min(ctx.degree + 1, 3)):
            checks.append(strongness_check(lam, c))
    return SuiteOutcome(checks)


# ---- 联络与规范 ----

def _connections(ctx: SuiteContext) -> List:
    alphas = [OneForm.zero(), canonicalize(form_action(X, differential(Z)))] + [random_base_form(ctx.rng)
                                                                             for _ in range(2)]
    return [make_connection(alpha, kind) for alpha in alphas for kind in KINDS]


def connections_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    connections = _connections(ctx)
    for c in connections:
        checks.extend(connection_checks(c))
        flipped = con_bijection(c)
        checks.append(CheckResult.compare(f"bijection_preserves_alpha[{c.kind.value};{c.alpha.to_text()}]",
                                          flipped.alpha, c.alpha))
        checks.append(CheckResult.ok(f"bijection_involutive[{c.kind.value};{c.alpha.to_text()}]")
                      if con_bijection(flipped) == c
                      else CheckResult.fail(f"bijection_involutive[{c.kind.value};{c.alpha.to_text()}]",
                                            flipped.realized.to_text()))
    checks.append(CheckResult.compare("zero_potential_is_base_connection",
                                      make_connection(OneForm.zero(), True).realized, omega_zero(True)))
    checks.append(raises("horizontal_noninvariant_potential_rejected", NotBaseFormError,
                         lambda: make_connection(OneForm.basis(0))))
    checks.append(all_equal("theta_zero_limit_of_connections", (
        (specialize_form(c.realized, Specialization.U_TO_ONE), con_bijection(c).realized, c.alpha.to_text())
        for c in connections if c.deformed)))
    checks.append(all_equal("base_connection_flat_square", (
        (wedge(omega_zero(kind), omega_zero(kind), kind), TwoForm.zero(), kind.value) for kind in KINDS)))
    return SuiteOutcome(checks)


GAUGE_SAMPLES = (X, Z, ZS)


def gauge_connection_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    gauge = list(GAUGE_SAMPLES) + [random_element(ctx.rng, base_elements(2), 2)]
    for c in _connections(ctx)[:4]:
        for b in gauge:
            checks.append(gauge_connection_check(c, b))
    for kind in KINDS:
        checks.append(all_equal(f"contraction_of_base_connection[{kind.value}]", (
            (contract(omega_zero(kind), b, kind), b, b.to_text()) for b in gauge)))
        checks.append(all_equal(f"contraction_kills_base_differentials[{kind.value}]", (
            (contract(differential(b2), b, kind), AlgebraElement.zero(), f"{b.to_text()};{b2.to_text()}")
            for b in GAUGE_SAMPLES for b2 in GAUGE_SAMPLES)))
    for a in monomial_elements(min(ctx.degree, 2)):
        for a2 in monomial_elements(1):
            for b in GAUGE_SAMPLES:
                checks.append(braided_leibniz_check(a, a2, b))
    return SuiteOutcome(checks)


def gauge_preservation_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    for c in _connections(ctx):
        for b in GAUGE_SAMPLES:
            checks.append(gauge_preservation_check(c, b))
            shifted = gauge_shift(c, b)
            checks.append(CheckResult.compare(f"gauge_shift[{c.kind.value};alpha={c.alpha.to_text()};b={b.to_text()}]",
                                              shifted.alpha, canonicalize(c.alpha + differential(b))))
    return SuiteOutcome(checks)


def curvature_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks: List[CheckResult] = []
    samples = monomial_elements(min(ctx.degree, 3))
    connections = [make_connection(OneForm.zero(), kind) for kind in KINDS]
    connections += [make_connection(random_base_form(ctx.rng), kind) for kind in KINDS]
    for c in connections:
        checks.extend(curvature_check(c, samples))
    return SuiteOutcome(checks)


def gauge_intertwine_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks = []
    for m, m_prime, n in grid(range(-2, 3), repeat=3):
        checks.append(gauge_intertwine_check(kdeg_monomial(n + m, -m), n, kdeg_monomial(m_prime, -m_prime)))
    return SuiteOutcome(checks)


def effective_alphas() -> List[OneForm]:
    """m′ = 1, −1, 0 的基形式，另加零势"""
    return [
        OneForm.zero(),
        form_action(X, differential(Z)),
        form_action(X, differential(ZS)),
        form_action(Z, differential(ZS)),
    ]


def covariant_intertwine_suite(ctx: SuiteContext) -> SuiteOutcome:
    checks = []
    for alpha in effective_alphas():
        for n in range(-2, 3):
            for m in range(-1, 2):
                checks.append(covariant_intertwine_check(kdeg_monomial(n + m, -m), n, alpha))
    samples = monomial_elements(2) + [form_action(a, dy) for a in monomial_elements(1)
                                      for dy in sphere_generators_forms()]
    checks.append(all_equal("L_bullet_invertible", ((L_bullet_inverse(L_bullet(lam)), lam, lam.to_text())
                                                    for lam in samples)))
    return SuiteOutcome(checks)


def effective_params_suite(ctx: SuiteContext) -> SuiteOutcome:
    x_dz = form_action(X, differential(Z))
    z_dzs = form_action(Z, differential(ZS))
    checks = [
        CheckResult.compare("effective_potential_example", effective_params(x_dz, 1), x_dz.scale(U ** -2)),
        all_equal("effective_potential_invariant_slice", (
            (effective_params(z_dzs, n), z_dzs, f"n={n}") for n in range(-3, 4))),
        all_equal("effective_gauge_invariant_slice", (
            (effective_gauge_parameter(X, n), X, f"n={n}") for n in range(-3, 4))),
        CheckResult.compare("effective_gauge_example", effective_gauge_parameter(Z, 1), Z.scale(U ** -2)),
    ]
    for m, m_prime, n in grid(range(-1, 2), range(-2, 3), range(-2, 3)):
        checks.append(effective_gauge_check(kdeg_monomial(n + m, -m), n, kdeg_monomial(m_prime, -m_prime)))
    return SuiteOutcome(checks)


# ---- 同伦族、交叉检查、解析器 ----

def homotopy_suite(ctx: SuiteContext) -> SuiteOutcome:
    pool = monomial_elements(2)
    samples = [random_element(ctx.rng, pool, 3, with_w=True) for _ in range(6)]
    result = run_homotopy_check(ctx.small_nmax, min(ctx.degree + 2, 4), samples)
    return SuiteOutcome(result["checks"], result["certificate"])


CONFLUENCE_SAMPLES = 500


def random_raw(rng: random.Random, max_exponent: int = 3, terms: int = 3) -> Dict[tuple, Fraction]:
    """未约化的覆盖多项式 {(a, b, c, d): 系数}"""
    raw: Dict[tuple, Fraction] = {}
    for _ in range(terms):
        raw[tuple(rng.randint(0, max_exponent) for _ in range(4))] = random_rational(rng)
    return raw


def confluence_suite(ctx: SuiteContext) -> SuiteOutcome:
    raw_samples = [random_raw(ctx.rng) for _ in range(CONFLUENCE_SAMPLES)]
    checks = [all_equal("mirror_normal_form_confluent", (
        (normal_form(mirror_normal_form(raw)), normal_form(raw), str(sorted(raw))) for raw in raw_samples),
        samples=CONFLUENCE_SAMPLES)]

    pool = monomial_elements(2)
    forms: List = [differential(a) for a in pool]
    forms += [OneForm([random_element(ctx.rng, pool, 2) for _ in range(4)]) for _ in range(20)]
    forms += [wedge(OneForm.basis(i, a), OneForm.basis(j), False)
              for a in monomial_elements(1) for i in range(4) for j in range(4) if i != j][:12]
    forms += [form_action(ctx.rng.choice(pool), omega_zero()) for _ in range(4)]
    checks.extend(mirror_confluence_check(form) for form in forms)

    oracle_samples = raw_samples[:6]
    checks.append(all_true("mirror_normal_form_in_same_class", (
        (ideal_equal(mirror_normal_form(raw), normal_form(raw)), str(sorted(raw))) for raw in oracle_samples)))
    checks.extend(normal_form_oracle_check({Monomial(*k): Scalar.of(v) for k, v in raw.items()})
                  for raw in oracle_samples)
    checks.extend(minors_oracle_checks())
    checks.extend(product_oracle_check(random_element(ctx.rng, pool), random_element(ctx.rng, pool))
                  for _ in range(4))
    return SuiteOutcome(checks)


def parser_suite(ctx: SuiteContext) -> SuiteOutcome:
    corpus = random_corpus(ctx.seed, 1000)
    checks = [
        all_equal("parser_round_trip", ((parse(print_expression(e)), e, print_expression(e)) for e in corpus)),
        CheckResult.compare("eval_sphere_relation", evaluate_text("z1'*z1 + z2'*z2"), ONE),
        CheckResult.compare("eval_deformed_commutation", evaluate_text("z1 ** z2 - u^2 * (z2 ** z1)"),
                            AlgebraElement.zero()),
        CheckResult.compare("eval_relation_differential", evaluate_text("d(z1'*z1 + z2'*z2)"), OneForm.zero()),
        raises("parser_reports_syntax_errors", ExpressionSyntaxError, lambda: parse("z1 + * z2")),
    ]
    return SuiteOutcome(checks)


SUITES: Dict[str, Callable[[SuiteContext], SuiteOutcome]] = {
    "scalars": scalars_suite,
    "strong-connection": strong_connection_suite,
    "coinvariants": coinvariants_suite,
    "classical-principality": classical_principality_suite,
    "deformed-principality": deformed_principality_suite,
    "bigrading": bigrading_suite,
    "module-iso": module_iso_suite,
    "universal-atiyah": universal_atiyah_suite,
    "kahler-engine": kahler_engine_suite,
    "kahler-atiyah": kahler_atiyah_suite,
    "horizontal-forms": horizontal_forms_suite,
    "connections": connections_suite,
    "gauge-connection": gauge_connection_suite,
    "gauge-preservation": gauge_preservation_suite,
    "curvature": curvature_suite,
    "gauge-intertwine": gauge_intertwine_suite,
    "covariant-intertwine": covariant_intertwine_suite,
    "effective-params": effective_params_suite,
    "homotopy": homotopy_suite,
    "braided": braided_suite,
    "cocycle": cocycle_suite,
    "confluence": confluence_suite,
    "parser": parser_suite,
}

# 按所验证结果编号的套件 id，指向上面的描述性套件
SUITE_ALIASES: Dict[str, str] = {
    "def2.1": "strong-connection",
    "lemma2.2": "coinvariants",
    "prop2.3": "classical-principality",
    "prop2.6": "deformed-principality",
    "lemma3.2": "bigrading",
    "prop3.4": "module-iso",
    "prop4.4": "universal-atiyah",
    "prop4.6": "kahler-atiyah",
    "cor4.7": "horizontal-forms",
    "lemma4.13": "connections",
    "prop4.10": "connections",
    "prop4.14": "connections",
    "lemma4.15": "gauge-connection",
    "prop4.17": "gauge-preservation",
    "rem4.19": "curvature",
    "prop5.1": "gauge-intertwine",
    "prop5.4": "covariant-intertwine",
    "ex5.6": "effective-params",
    "prop6.3": "homotopy",
}
