"""测试 Kähler 微积分：Gröbner 规范化、微分、楔积、竖直提升"""
import pytest

from models.algebra_models import AlgebraElement, Monomial
from models.form_models import ModuleVector, OneForm, TwoForm
from models.scalars import Scalar, Specialization, U
from services.groebner import TermOrder, buchberger
from services.kahler_calculus import (
    braided_commutativity_check, canonicalize, d_any, deformed_a_d, differential, differential1, form_action,
    forms_equal, gb_certificate_checks, is_horizontal, mirror_confluence_check, omega1B_basis_check,
    omega_zero, relation_forms, relation_generators, sphere_generators_forms, specialize_form, ver_X, wedge,
)
from services.sphere_algebra import ONE, X, Z, Z1, Z1S, Z2, Z2S, ZS, mul, star
from services.sympy_oracle import minors_oracle_checks
from utils.errors import GroebnerDivergenceError, UnsupportedDegreeError


def test_sphere_relation_form_vanishes():
    """z1∗dz1 + z2∗dz2 + z1 dz1∗ + z2 dz2∗ = d(z1z1∗ + z2z2∗) = 0"""
    relation = relation_forms()[0]
    assert not relation.is_zero()
    assert canonicalize(relation).is_zero()
    assert forms_equal(relation, OneForm.zero())


def test_groebner_certificates():
    checks = gb_certificate_checks()
    assert all(check.passed for check in checks), [check.residual for check in checks if not check.passed]


def test_groebner_degree_bound():
    with pytest.raises(GroebnerDivergenceError):
        buchberger(4, relation_generators(4), TermOrder.standard(4), degree_bound=1)


def test_groebner_basis_extends_in_place():
    order = TermOrder.standard(4)
    basis = buchberger(4, relation_generators(4), order)
    size = len(basis.elements)
    vector = {(0, Monomial(3, 0, 0, 0)): Scalar.one()}
    assert basis.extend(vector) == size
    assert basis.leads[-1] == order.leading(vector)
    assert len(basis.leads) == len(basis.elements)


def test_differential_of_generators():
    assert differential(ONE).is_zero()
    assert differential(Z1) == canonicalize(OneForm.basis(0))
    assert differential(Z1.scale(3)) == differential(Z1).scale(3)


def test_leibniz_rule():
    for x, y in ((Z1, Z2), (Z1, Z1S), (X, Z), (Z2S, ZS)):
        lhs = differential(mul(x, y))
        rhs = canonicalize(form_action(x, differential(y)) + form_action(y, differential(x)))
        assert lhs == rhs


def test_d_squared_is_zero():
    for x in (mul(Z1, Z2S), X, mul(Z, Z2), Z1S):
        assert differential1(differential(x)).is_zero()


def test_d_rejects_two_forms():
    with pytest.raises(UnsupportedDegreeError):
        d_any(TwoForm.zero())


def test_wedge_is_antisymmetric_classically():
    dz1, dz2 = differential(Z1), differential(Z2)
    assert wedge(dz1, dz1).is_zero()
    assert wedge(dz1, dz2) == wedge(dz2, dz1).scale(-1)


def test_wedge_dispatches_on_degree():
    assert wedge(Z1, Z2, True) == star(Z1, Z2)
    assert wedge(Z1, differential(Z2)) == form_action(Z1, differential(Z2))


def test_braided_commutativity_of_forms():
    forms = [differential(g) for g in (Z1, Z2, Z1S, Z2S)]
    for lam in forms:
        for lam2 in forms:
            assert braided_commutativity_check(lam, lam2).passed


def test_deformed_action_phase():
    """z2 ⋆ dz1 = u⁻¹·z2 dz1"""
    assert form_action(Z2, differential(Z1), "left", True) == form_action(Z2, differential(Z1)).scale(U ** -1)
    assert deformed_a_d(Z1S, Z1) == form_action(Z1S, differential(Z1), "left", True)
    with pytest.raises(ValueError):
        form_action(Z1, differential(Z2), "middle")


@pytest.mark.parametrize("deformed", [False, True])
def test_omega_zero_is_a_connection(deformed):
    assert ver_X(omega_zero(deformed), deformed) == ONE


def test_vertical_lift():
    assert ver_X(differential(Z1)) == Z1
    assert ver_X(differential(Z1S)) == Z1S.scale(-1)
    for b in (Z, ZS, X):
        assert ver_X(differential(b)).is_zero()
        assert ver_X(differential(b), True).is_zero()


def test_vertical_lift_ignores_relations():
    assert ver_X(relation_forms()[0]).is_zero()


def test_horizontal_forms():
    dz, dzs, dx = sphere_generators_forms()
    for form in (dz, dzs, dx, form_action(Z1, dx)):
        assert is_horizontal(form)
    assert not is_horizontal(differential(Z1))
    assert not is_horizontal(omega_zero())


def test_omega1B_is_free():
    check, = omega1B_basis_check()
    assert check.passed
    assert len(check.details["minors"]) == 4
    assert any(minor != "0" for minor in check.details["minors"].values())
    assert all(check.passed for check in minors_oracle_checks())


def test_mirror_order_confluence():
    for form in (differential(mul(Z1, Z1S)), omega_zero(), form_action(X, differential(Z2S))):
        assert mirror_confluence_check(form).passed


def test_classical_limit_of_deformed_forms():
    deformed = form_action(Z2, differential(Z1), "left", True)
    assert specialize_form(deformed, Specialization.U_TO_ONE) == form_action(Z2, differential(Z1))


def test_module_vector_round_trip():
    vector = ModuleVector.from_form(OneForm([Z1, AlgebraElement.zero(), X, ONE]))
    assert vector.rank == 4
    assert len(vector.component(0)) == 1
