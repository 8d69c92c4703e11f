from fractions import Fraction

import pytest

from quiverforge import ExactPolynomial, TruncatedSeries, ValidationError, lagrange_interpolate
from quiverforge.series import geometric_inverse_power, monomials_up_to


def test_polynomial_trims_and_evaluates():
    p = ExactPolynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert p(3) == 7
    assert p.coefficient(5) == 0


def test_integer_coefficients_guard():
    p = ExactPolynomial([Fraction(1, 2), 1])
    assert not p.has_integer_coefficients()
    with pytest.raises(ValidationError):
        p.integer_coefficients()


def test_lagrange_recovers_polynomial():
    target = ExactPolynomial([Fraction(1, 3), -2, 1])  # x^2 - 2x + 1/3
    points = [(x, target(x)) for x in (0, 1, 2)]
    assert lagrange_interpolate(points) == target


def test_lagrange_rejects_repeated_nodes():
    with pytest.raises(ValidationError):
        lagrange_interpolate([(1, 1), (1, 2)])


def test_geometric_inverse_power_coefficients():
    # (1 - X)^(-2) = 1 + 2X + 3X^2 + ...
    s = geometric_inverse_power((1,), 2, 1, 4)
    assert [s.coefficient((j,)) for j in range(5)] == [1, 2, 3, 4, 5]
    # exponent 0 gives the constant series 1
    s0 = geometric_inverse_power((1,), 0, 1, 4)
    assert s0.coefficient((0,)) == 1 and s0.coefficient((1,)) == 0


def test_series_product_inverts_one_minus_x():
    bound = 5
    one_minus_x = TruncatedSeries(1, bound, {(0,): 1, (1,): -1})
    inverse = geometric_inverse_power((1,), 1, 1, bound)
    product = one_minus_x.mul(inverse)
    assert product.max_abs_difference(TruncatedSeries.one(1, bound)) == 0


def test_series_respects_bound():
    s = TruncatedSeries(2, 2, {(1, 1): 1})
    t = TruncatedSeries(2, 2, {(1, 0): 1})
    assert s.mul(t).coeffs == {}  # degree 3 monomial truncated away


def test_monomials_up_to():
    assert list(monomials_up_to(2, 1)) == [(0, 0), (0, 1), (1, 0)]
