"""测试关联模：电荷切片、L_V 同构与幂等元"""
import pytest

from models.algebra_models import AlgebraElement
from models.principal_models import WeightedComodule
from models.scalars import Specialization, U
from services.associated_modules import (
    L_V, L_V_inverse, L_V_weighted, build_idempotent, decompose_charges, idempotent_trace, intertwining_check,
    module_action, project_charge, scalar_naturality_check, specialize_idempotent, verify_idempotent,
    verify_projective_iso,
)
from services.sphere_algebra import ONE, X, Z, Z1, Z1S, Z2, Z2S, ZS, monomials_up_to, mul
from utils.errors import ChargeMismatchError, NotCoinvariantError


def charge_samples(n, degree=3):
    return [AlgebraElement.monomial(m) for m in monomials_up_to(degree) if m.hdeg == n]


def test_charge_decomposition():
    x = Z1 + Z1S + X + mul(Z1, Z2)
    pieces = decompose_charges(x)
    assert set(pieces) == {-1, 0, 1, 2}
    assert pieces[2] == mul(Z1, Z2)
    assert project_charge(x, 0) == X
    assert project_charge(x, 5).is_zero()


def test_L_V_phases():
    assert L_V(Z1, 1) == Z1
    assert L_V(Z2, 1) == Z2.scale(U ** -1)
    assert L_V(Z2S, -1) == Z2S.scale(U ** -1)
    assert L_V(Z2, 1, False) == Z2


def test_L_V_is_invertible():
    for n in (-2, -1, 0, 1, 2):
        for xi in charge_samples(n):
            assert L_V_inverse(L_V(xi, n), n) == xi


def test_L_V_rejects_wrong_charge():
    with pytest.raises(ChargeMismatchError):
        L_V(Z1, 2)
    with pytest.raises(ChargeMismatchError):
        L_V(Z1 + Z1S, 1)


def test_L_V_intertwines_module_actions():
    """L_V(b·ξ) = b ⋆ L_V(ξ)"""
    for n in (-1, 1, 2):
        for b in (X, Z, ZS):
            for xi in charge_samples(n):
                check = intertwining_check(b, xi, n)
                assert check.passed, check.residual


def test_module_action_needs_coinvariant():
    with pytest.raises(NotCoinvariantError):
        module_action(Z1, Z2)


def test_L_V_weighted():
    comodule = WeightedComodule((1, -1))
    assert L_V_weighted([Z2, Z2S], comodule) == [Z2.scale(U ** -1), Z2S.scale(U ** -1)]
    with pytest.raises(ValueError):
        L_V_weighted([Z2], comodule)


def test_scalar_naturality():
    assert scalar_naturality_check(Z2, 1, U ** 3 + 2).passed


def test_first_idempotent_entries():
    e = build_idempotent(1)
    assert e.size == 2
    assert e.entries[0][0] == mul(Z1, Z1S)
    assert e.entries[0][1] == mul(Z1, Z2S)
    assert e.entries[1][1] == mul(Z2, Z2S)
    assert idempotent_trace(e) == ONE


@pytest.mark.parametrize("deformed", [False, True])
@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_idempotent_properties(n, deformed):
    e = build_idempotent(n, deformed)
    assert e.size == 2 ** abs(n)
    checks = verify_idempotent(e)
    assert all(check.passed for check in checks), [check.residual for check in checks if not check.passed]


def test_idempotent_json():
    payload = build_idempotent(1, True).to_json()
    assert payload["size"] == 2
    assert payload["kind"] == "theta"
    assert len(payload["entries"]) == 2


def test_classical_limit_of_deformed_idempotent():
    deformed = build_idempotent(2, True)
    assert specialize_idempotent(deformed, Specialization.U_TO_ONE) == build_idempotent(2, False).entries


@pytest.mark.parametrize("deformed", [False, True])
def test_projective_module_iso(deformed):
    checks = verify_projective_iso(1, deformed, charge_samples(1, 2))
    assert checks
    assert all(check.passed for check in checks)
    with pytest.raises(ChargeMismatchError):
        verify_projective_iso(1, deformed, [Z1S])
