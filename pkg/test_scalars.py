"""测试 Laurent 标量与高斯有理数"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models.scalars import GaussianRational, I, Scalar, Specialization, U, W, as_rational

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(GaussianRational, rationals, rationals)
scalar_terms = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-2, 2)), gaussians, max_size=4)
scalars = scalar_terms.map(Scalar)


def test_gaussian_arithmetic():
    """i² = −1，共轭与逆精确"""
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    assert i * i == -1
    z = GaussianRational(Fraction(1, 2), 3)
    assert z.conj() == GaussianRational(Fraction(1, 2), -3)
    assert z * z.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0, 0).inverse()


def test_as_rational_normalizes():
    assert as_rational(Fraction(4, 2)) == 2
    assert isinstance(as_rational(Fraction(4, 2)), int)
    assert as_rational("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rational(True)


def test_gaussian_text():
    assert GaussianRational(Fraction(1, 2), 0).to_text() == "1/2"
    assert GaussianRational(0, -1).to_text() == "-i"
    assert GaussianRational(1, -2).to_text() == "(1 - 2*i)"


def test_scalar_units():
    assert (U ** 2) * (U ** -2) == Scalar.one()
    assert (U * W).to_text() == "u*w"
    assert (U ** -1).to_text() == "u^-1"
    assert (I * I) == -1
    assert Scalar.of(0).is_zero()
    assert not Scalar.of(0)


def test_scalar_inverse_requires_monomial():
    assert (U ** 3 * 2).inverse() == U ** -3 * Fraction(1, 2)
    with pytest.raises(ArithmeticError):
        (U + 1).inverse()


def test_specializations():
    x = U ** 2 * W + 3
    assert x.specialize(Specialization.U_TO_ONE) == W + 3
    assert x.specialize(Specialization.W_TO_ONE) == U ** 2 + 3
    assert x.specialize(Specialization.W_TO_U) == U ** 3 + 3


def test_involute():
    assert (U ** 2 * I).involute() == U ** -2 * (-I)
    assert (W + U).involute() == W ** -1 + U ** -1


def test_scalar_json_round_trip():
    x = U ** 2 * GaussianRational(Fraction(1, 3), -1) + W ** -1
    assert Scalar.from_json(x.to_json()) == x


def test_scalar_equality_with_plain_numbers():
    assert Scalar.of(Fraction(3, 1)) == 3
    assert Scalar.one() == 1
    assert hash(Scalar.of(2)) == hash(Scalar.of(2))


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar.zero()


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, st.sampled_from(list(Specialization)))
def test_specialization_is_ring_homomorphism(x, y, target):
    assert (x * y).specialize(target) == x.specialize(target) * y.specialize(target)
    assert (x + y).specialize(target) == x.specialize(target) + y.specialize(target)


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_involution_is_multiplicative_and_of_order_two(x, y):
    assert (x * y).involute() == x.involute() * y.involute()
    assert x.involute().involute() == x
