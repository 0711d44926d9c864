"""同伦族服务 - 以 w = e^{πiθy} 为相位单位的插值主余模代数及其端点求值

ev₀（w ↦ 1）给出经典代数，ev₁（w ↦ u）给出形变代数。
"""
from typing import Any, Dict, List

from models.algebra_models import AlgebraElement, ProductKind
from models.report_models import CheckResult
from models.scalars import W, Specialization
from services.associated_modules import (
    matrix_compare, build_idempotent, project_charge, specialize_idempotent,
)
from services.principality import strong_connection, verify_strong_connection
from services.sphere_algebra import (
    Z1, Z1S, Z2, Z2S, monomials_up_to, product, specialize,
)
from utils.enhanced_logger import logger

FamilyElement = AlgebraElement

ENDPOINTS = {0: (Specialization.W_TO_ONE, ProductKind.CLASSICAL),
             1: (Specialization.W_TO_U, ProductKind.THETA)}


def star_w(x: FamilyElement, y: FamilyElement) -> FamilyElement:
    """族乘法：σ 配对的相位单位换成 w"""
    return product(x, y, ProductKind.FAMILY)


def evaluate_endpoint(x: FamilyElement, p: int) -> AlgebraElement:
    if p not in ENDPOINTS:
        raise ValueError(f"端点只能是 0 或 1: {p}")
    return specialize(x, ENDPOINTS[p][0])


def family_relation_checks() -> List[CheckResult]:
    """z1⋆z2 = w²·z2⋆z1 与 z1∗⋆z1 + z2∗⋆z2 = 𝟙"""
    return [
        CheckResult.compare("family_commutation", star_w(Z1, Z2), star_w(Z2, Z1).scale(W ** 2)),
        CheckResult.compare("family_sphere_relation", star_w(Z1S, Z1) + star_w(Z2S, Z2), AlgebraElement.one()),
    ]


def endpoint_homomorphism_checks(degree: int) -> List[CheckResult]:
    """ev_p∘star_w = (对应乘法)∘(ev_p × ev_p)，在单项式对上逐一检查"""
    monomials = [AlgebraElement.monomial(m) for m in monomials_up_to(degree)]
    checks = []
    for p, (_, kind) in sorted(ENDPOINTS.items()):
        failures = []
        pairs = 0
        for x in monomials:
            for y in monomials:
                if x.degree() + y.degree() > degree:
                    continue
                pairs += 1
                lhs = evaluate_endpoint(star_w(x, y), p)
                rhs = product(evaluate_endpoint(x, p), evaluate_endpoint(y, p), kind)
                if lhs != rhs:
                    failures.append((lhs - rhs).to_text())
        name = f"endpoint_homomorphism[p={p}]"
        checks.append(CheckResult.fail(name, failures[0], failures=len(failures)) if failures
                      else CheckResult.ok(name, pairs=pairs))
    return checks


def verify_family_principality(nmax: int) -> List[CheckResult]:
    """|n| ≤ nmax 的族强联络满足四条公理，且 ev₁ 给出形变强联络"""
    if nmax < 1:
        raise ValueError(f"nmax 必须 ≥ 1: {nmax}")
    checks: List[CheckResult] = []
    for n in range(-nmax, nmax + 1):
        family = strong_connection(n, ProductKind.FAMILY)
        checks.extend(verify_strong_connection(family))
        for p, (target, kind) in sorted(ENDPOINTS.items()):
            evaluated = family.value.map_scalars(lambda c, t=target: c.specialize(t))
            checks.append(CheckResult.compare(f"endpoint_strong_connection[n={n},p={p}]",
                                              evaluated, strong_connection(n, kind).value))
    one_step = strong_connection(1, ProductKind.FAMILY).value
    checks.append(CheckResult.ok("family_first_step_w_free") if not any(c.uses_w() for c in one_step.terms.values())
                  else CheckResult.fail("family_first_step_w_free", one_step.to_text()))
    return checks


def family_idempotent_checks(nmax: int) -> List[CheckResult]:
    """族幂等元逐项特化为端点幂等元"""
    checks = []
    for n in range(-nmax, nmax + 1):
        family = build_idempotent(n, ProductKind.FAMILY)
        for p, (target, kind) in sorted(ENDPOINTS.items()):
            checks.append(matrix_compare(f"family_idempotent[n={n},p={p}]",
                                          specialize_idempotent(family, target),
                                          build_idempotent(n, kind).entries))
    return checks


def charge_projection_checks(samples: List[FamilyElement], nmax: int) -> List[CheckResult]:
    """project_charge∘ev_p = ev_p∘project_charge"""
    checks = []
    for index, x in enumerate(samples):
        ok = all(evaluate_endpoint(project_charge(x, n), p) == project_charge(evaluate_endpoint(x, p), n)
                 for n in range(-nmax, nmax + 1) for p in ENDPOINTS)
        name = f"charge_projection_commutes[#{index}]"
        checks.append(CheckResult.ok(name) if ok else CheckResult.fail(name, x.to_text()))
    return checks


def coinvariant_family_checks(samples: List[FamilyElement]) -> List[CheckResult]:
    """族余不变元的 hdeg 为 0，且端点处乘积仍在 B 中"""
    coinvariants = [x for x in samples if x.is_coinvariant()]
    bad = [star_w(x, y) for x in coinvariants for y in coinvariants if not star_w(x, y).is_coinvariant()]
    return [CheckResult.ok("family_coinvariants_closed", samples=len(coinvariants)) if not bad
            else CheckResult.fail("family_coinvariants_closed", bad[0].to_text())]


def homotopy_certificate(nmax: int, degree: int, checks: List[CheckResult]) -> Dict[str, Any]:
    """A₀ ∼ A₁ 的结构化证书"""
    return {
        "relation": "A0 ~ A1",
        "family_algebra": "carrier with product star_w, phase unit w = exp(pi*i*theta*y)",
        "endpoints": {
            "0": {"evaluation": Specialization.W_TO_ONE.value, "target": ProductKind.CLASSICAL.value},
            "1": {"evaluation": Specialization.W_TO_U.value, "target": ProductKind.THETA.value},
        },
        "bounds": {"nmax": nmax, "degree": degree},
        "checks_passed": sum(1 for c in checks if c.passed),
        "checks_total": len(checks),
        "passed": all(c.passed for c in checks),
    }


def run_homotopy_check(nmax: int, degree: int, samples: List[FamilyElement]) -> Dict[str, Any]:
    """全部同伦检查与证书"""
    logger.start_timer("homotopy_check")
    checks = (family_relation_checks() + endpoint_homomorphism_checks(degree)
              + verify_family_principality(nmax) + family_idempotent_checks(nmax)
              + charge_projection_checks(samples, nmax) + coinvariant_family_checks(samples))
    elapsed = logger.end_timer("homotopy_check")
    logger.log_process_step("homotopy_check", "completed", {"nmax": nmax, "checks": len(checks),
                                                             "elapsed_s": round(elapsed, 4)})
    return {"checks": checks, "certificate": homotopy_certificate(nmax, degree, checks)}

