"""测试插值族 A_w 及其端点求值"""
import pytest

from models.algebra_models import AlgebraElement
from models.scalars import U, W
from services.homotopy_family import (
    charge_projection_checks, coinvariant_family_checks, endpoint_homomorphism_checks, evaluate_endpoint,
    family_idempotent_checks, family_relation_checks, run_homotopy_check, star_w, verify_family_principality,
)
from services.sphere_algebra import X, Z, Z1, Z1S, Z2, mul, star


def family_samples():
    return [Z1.scale(W + 1), mul(Z1, Z2).scale(W ** 2), X + Z.scale(W), mul(Z1S, Z2).scale(U * W ** -1)]


def test_family_relations():
    checks = family_relation_checks()
    assert all(check.passed for check in checks)


def test_endpoint_evaluation():
    x = star_w(Z1, Z2)
    assert x == mul(Z1, Z2).scale(W)
    assert evaluate_endpoint(x, 0) == mul(Z1, Z2)
    assert evaluate_endpoint(x, 1) == star(Z1, Z2)
    with pytest.raises(ValueError):
        evaluate_endpoint(x, 2)


def test_endpoints_are_homomorphisms():
    checks = endpoint_homomorphism_checks(2)
    assert [check.name for check in checks] == ["endpoint_homomorphism[p=0]", "endpoint_homomorphism[p=1]"]
    assert all(check.passed for check in checks)


def test_family_principality():
    checks = verify_family_principality(2)
    assert all(check.passed for check in checks), [check.name for check in checks if not check.passed]
    with pytest.raises(ValueError):
        verify_family_principality(0)


def test_family_idempotents_specialize():
    assert all(check.passed for check in family_idempotent_checks(2))


def test_charge_projection_and_coinvariants():
    samples = family_samples()
    assert all(check.passed for check in charge_projection_checks(samples, 2))
    assert coinvariant_family_checks(samples + [AlgebraElement.one()])[0].passed


def test_homotopy_certificate():
    result = run_homotopy_check(1, 2, family_samples())
    certificate = result["certificate"]
    assert certificate["passed"] is True
    assert certificate["checks_total"] == len(result["checks"])
    assert certificate["endpoints"]["1"]["target"] == "theta"
    assert certificate["bounds"] == {"nmax": 1, "degree": 2}


def test_homotopy_certificate_is_deterministic():
    first = run_homotopy_check(1, 2, family_samples())["certificate"]
    second = run_homotopy_check(1, 2, family_samples())["certificate"]
    assert first == second
    assert "issued_at" not in first
