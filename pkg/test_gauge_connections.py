"""测试联络、协变导数、曲率与规范作用"""
import pytest

from controllers.verification_suites import effective_alphas, kdeg_monomial
from models.algebra_models import AlgebraElement
from models.form_models import OneForm, TwoForm
from models.scalars import U
from services.gauge_connections import (
    L_bullet, L_bullet_inverse, braided_leibniz_check, con_bijection, connection_checks, contract,
    cov_deriv, covariant_intertwine_check, curvature_check, effective_gauge_check, effective_gauge_parameter,
    effective_params, gauge_act_algebra, gauge_connection_check, gauge_intertwine_check,
    gauge_preservation_check, gauge_shift, make_connection, strongness_check,
)
from services.kahler_calculus import canonicalize, differential, form_action, is_horizontal, omega_zero
from services.sphere_algebra import ONE, X, Z, Z1, Z1S, Z2, Z2S, ZS, monomials_up_to, mul
from utils.errors import NotBaseFormError, NotCoinvariantError, NotHorizontalError, UnsupportedDegreeError

GAUGE = (X, Z, ZS)
X_DZ = form_action(X, differential(Z))


def sample_connections():
    return [make_connection(alpha, deformed) for alpha in (OneForm.zero(), X_DZ) for deformed in (False, True)]


@pytest.mark.parametrize("deformed", [False, True])
def test_zero_potential_gives_base_connection(deformed):
    c = make_connection(OneForm.zero(), deformed)
    assert c.alpha.is_zero()
    assert c.realized == omega_zero(deformed)
    assert all(check.passed for check in connection_checks(c))


def test_connection_with_base_potential():
    for c in sample_connections():
        checks = connection_checks(c)
        assert all(check.passed for check in checks), [check.residual for check in checks if not check.passed]


def test_potential_outside_base_forms_rejected():
    with pytest.raises(NotBaseFormError):
        make_connection(OneForm.basis(0))
    with pytest.raises(NotBaseFormError):
        make_connection(differential(Z1), True)


def test_connection_bijection_keeps_potential():
    c = make_connection(X_DZ, True)
    flipped = con_bijection(c)
    assert not flipped.deformed
    assert flipped.alpha == c.alpha
    assert con_bijection(flipped) == c


def test_gauge_action_on_connection_is_differential():
    for c in sample_connections():
        for b in GAUGE:
            check = gauge_connection_check(c, b)
            assert check.passed, check.residual


def test_gauge_action_preserved_by_bijection():
    for c in sample_connections():
        for b in GAUGE:
            assert gauge_preservation_check(c, b).passed


def test_gauge_shift_adds_differential():
    c = make_connection(OneForm.zero())
    for b in GAUGE:
        assert gauge_shift(c, b).alpha == canonicalize(c.alpha + differential(b))


def test_gauge_action_on_algebra():
    """电荷 0 的元素不受规范作用影响"""
    assert gauge_act_algebra(X, Z).is_zero()
    assert gauge_act_algebra(Z1, X) == mul(Z1, X)
    assert gauge_act_algebra(Z1S, Z) == mul(Z1S, Z).scale(-1)
    with pytest.raises(NotCoinvariantError):
        gauge_act_algebra(Z1, Z2)


@pytest.mark.parametrize("deformed", [False, True])
def test_contraction(deformed):
    for b in GAUGE:
        assert contract(omega_zero(deformed), b, deformed) == b
        assert contract(differential(X), b, deformed).is_zero()
        assert contract(ONE, b, deformed).is_zero()


def test_braided_leibniz():
    for a in (Z1, Z2S, X):
        for a2 in (Z1, Z2, Z1S):
            for b in GAUGE:
                check = braided_leibniz_check(a, a2, b)
                assert check.passed, check.residual


def test_braided_leibniz_mixed_components():
    for a2 in (Z1 + Z2, Z1S + Z2):
        for b in GAUGE:
            check = braided_leibniz_check(Z1, a2, b)
            assert check.passed, check.residual


def test_covariant_derivative_of_base_element_is_differential():
    for c in sample_connections():
        for b in GAUGE:
            assert cov_deriv(b, c) == differential(b)


def test_covariant_derivative_is_horizontal():
    for c in sample_connections():
        for mono in monomials_up_to(2):
            check = strongness_check(AlgebraElement.monomial(mono), c)
            assert check.passed, check.residual
    assert is_horizontal(cov_deriv(Z1, make_connection(OneForm.zero())))


def test_covariant_derivative_rejects_bad_input():
    c = make_connection(OneForm.zero())
    with pytest.raises(NotHorizontalError):
        cov_deriv(differential(Z1), c)
    with pytest.raises(UnsupportedDegreeError):
        cov_deriv(TwoForm.zero(), c)


def test_curvature():
    samples = [Z1, Z2, Z1S, X]
    for c in sample_connections():
        checks = curvature_check(c, samples)
        assert len(checks) == len(samples)
        assert all(check.passed for check in checks), [check.residual for check in checks if not check.passed]


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_gauge_intertwine_phase(n):
    for m in (-1, 0, 1):
        for m_prime in (-1, 0, 1):
            check = gauge_intertwine_check(kdeg_monomial(n + m, -m), n, kdeg_monomial(m_prime, -m_prime))
            assert check.passed, check.residual


def test_gauge_intertwine_mixed_components():
    xi = Z1 + mul(mul(Z1, Z1), Z2S)
    for b in GAUGE:
        check = gauge_intertwine_check(xi, 1, b)
        assert check.passed, check.residual
        assert "m=0,1" in check.name
        assert len(check.details["classical_phase"].split(",")) == 2


def test_effective_gauge_parameter():
    assert effective_gauge_parameter(Z, 1) == Z.scale(U ** -2)
    assert effective_gauge_parameter(ZS, 1) == ZS.scale(U ** 2)
    for n in range(-3, 4):
        assert effective_gauge_parameter(X, n) == X
    with pytest.raises(NotCoinvariantError):
        effective_gauge_parameter(Z1, 1)


def test_effective_potential():
    assert effective_params(X_DZ, 1) == X_DZ.scale(U ** -2)
    assert effective_params(X_DZ, 0) == canonicalize(X_DZ)


@pytest.mark.parametrize("n", [-1, 1, 2])
def test_effective_gauge_check(n):
    for b in GAUGE:
        for xi in (kdeg_monomial(n, 0), kdeg_monomial(n + 1, -1)):
            check = effective_gauge_check(xi, n, b)
            assert check.passed, check.residual


@pytest.mark.parametrize("n", [-1, 1])
def test_covariant_intertwine(n):
    for alpha in effective_alphas():
        for m in (-1, 0, 1):
            check = covariant_intertwine_check(kdeg_monomial(n + m, -m), n, alpha)
            assert check.passed, check.residual


def test_L_bullet_round_trip():
    samples = [Z1, Z2S, X, form_action(Z1, differential(Z)), form_action(Z2, differential(X))]
    for lam in samples:
        assert L_bullet_inverse(L_bullet(lam)) == lam
    assert L_bullet(Z2) == Z2.scale(U ** -1)
    with pytest.raises(NotHorizontalError):
        L_bullet(differential(Z1))
