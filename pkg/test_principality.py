"""测试强联络、Galois 映射、等变投射分裂与 φ_θ"""
import pytest

from models.algebra_models import AlgebraElement, HopfElement, Monomial, ProductKind, TensorElement
from models.scalars import U, W
from services.principality import (
    augmentation_collapse, base_form_sample, eq_proj_splitting, galois_can, galois_inverse, galois_round_trip,
    phi_theta, phi_theta_inverse, strong_connection, tampered_connection, tensor_sample, universal_splitting,
    universal_ver, verify_strong_connection,
)
from services.sphere_algebra import ONE, X, Z, Z1, Z1S, Z2, Z2S, d_universal, monomials_up_to, mu

KINDS = [ProductKind.CLASSICAL, ProductKind.THETA, ProductKind.FAMILY]


def test_strong_connection_base_cases():
    assert strong_connection(0).value == TensorElement.one()
    assert strong_connection(1).value == TensorElement.of(Z1S, Z1) + TensorElement.of(Z2S, Z2)
    assert strong_connection(-1).value == TensorElement.of(Z1, Z1S) + TensorElement.of(Z2, Z2S)
    assert strong_connection(1, True).value == strong_connection(1).value


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [-3, -2, -1, 0, 1, 2, 3])
def test_strong_connection_axioms(kind, n):
    value = strong_connection(n, kind)
    assert len(value.pairs) == 2 ** abs(n)
    checks = verify_strong_connection(value)
    assert len(checks) == 4
    assert all(check.passed for check in checks), [check.residual for check in checks if not check.passed]


def test_tampered_connection_detected():
    checks = verify_strong_connection(tampered_connection(1))
    failed = [check for check in checks if not check.passed]
    assert [check.name for check in failed] == ["splitting[n=1,classical]"]
    assert failed[0].residual


def test_deformed_strong_connection_legs_carry_phases():
    classical = strong_connection(2, False).pairs
    deformed = strong_connection(2, True).pairs
    assert deformed[1][0] == classical[1][0].scale(U)
    assert deformed[1][1] == classical[1][1].scale(U ** -1)
    assert not any(c.uses_w() for c in strong_connection(2, True).value.terms.values())


@pytest.mark.parametrize("deformed", [False, True])
def test_galois_round_trip(deformed):
    for mono in monomials_up_to(2):
        for n in range(-2, 3):
            check = galois_round_trip(AlgebraElement.monomial(mono), n, deformed)
            assert check.passed, check.residual


def test_galois_can_groups_by_charge():
    image = galois_can(TensorElement.of(Z1S, Z1) + TensorElement.of(X, Z2S))
    assert [n for _, n in image] == [-1, 1]
    assert dict((n, a) for a, n in image)[1] == ONE - AlgebraElement.monomial(Monomial(0, 1, 0, 1))


def test_galois_inverse_of_sum():
    h = HopfElement.t_power(1) + HopfElement.t_power(-1, 2)
    t = galois_inverse(ONE, h)
    assert galois_can(t) == [(ONE.scale(2), -1), (ONE, 1)]


def test_equivariant_splitting():
    for deformed in (False, True):
        for mono in monomials_up_to(2):
            a = AlgebraElement.monomial(mono)
            split = eq_proj_splitting(a, deformed)
            assert all(left.hdeg == 0 for left in split.left_legs())
            assert mu(split, deformed) == a


def test_universal_vertical_lift():
    image = universal_ver(d_universal(Z1))
    assert augmentation_collapse(image).is_zero()
    with pytest.raises(ValueError):
        universal_ver(TensorElement.of(Z1, Z2))


def test_universal_splitting_is_section():
    for n in (-2, -1, 1, 2):
        for deformed in (False, True):
            s = universal_splitting(n, deformed)
            assert mu(s, deformed).is_zero()
            image = dict((m, a) for a, m in universal_ver(s, deformed))
            assert image == {0: ONE.scale(-1), n: ONE}


def test_base_forms_lift_to_zero():
    """A·Γ¹(B)·A 中的元素在 ver 下落到 0"""
    for deformed in (False, True):
        sample = base_form_sample(Z1, Z, X, Z2S, deformed)
        assert mu(sample, deformed).is_zero()
        assert augmentation_collapse(universal_ver(sample, deformed)).is_zero()


def test_phi_theta():
    t = TensorElement.of(Z1, Z2)
    assert phi_theta(t) == t.scale(U)
    assert phi_theta_inverse(phi_theta(t)) == t
    assert phi_theta(t, ProductKind.FAMILY) == t.scale(W)
    assert phi_theta(t, False) == t


def test_phi_theta_intertwines_products():
    """μ ∘ φ_θ = μ_θ"""
    for t in tensor_sample(monomials_up_to(1)):
        assert mu(phi_theta(t), False) == mu(t, True)
