"""
Special Functions Tests
Gamma-family helpers, Stirling numbers and the Gauss hypergeometric series
"""
import math

import pytest
from scipy import special

from services.analytic import specfun
from services.errors import ConvergenceError, DomainError


def test_log_gamma_matches_factorials():
    assert specfun.log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert specfun.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


def test_log_gamma_rejects_non_positive():
    with pytest.raises(DomainError):
        specfun.log_gamma(0.0)
    # DomainError is a ValueError for callers that do not know the taxonomy
    with pytest.raises(ValueError):
        specfun.log_gamma(-1.5)


def test_beta_and_gamma_ratio():
    assert specfun.beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert specfun.gamma_ratio(5.0, 3.0) == pytest.approx(12.0, rel=1e-13)


def test_falling_factorial():
    assert specfun.falling_factorial(5.0, 3) == 60.0
    assert specfun.falling_factorial(2.5, 0) == 1.0
    assert specfun.falling_factorial(2.0, 3) == 0.0


@pytest.mark.parametrize("a, k, expected", [
    (-0.5, 2, 0.375),
    (4.0, 2, 6.0),
    (0.0, 3, 0.0),
    (-1.0, 3, -1.0),
    (0.3, 0, 1.0),
])
def test_real_binomial(a, k, expected):
    assert specfun.real_binomial(a, k) == pytest.approx(expected, abs=1e-15)


def test_stirling_row_four():
    # x(x-1)(x-2)(x-3) = x^4 - 6x^3 + 11x^2 - 6x
    assert [specfun.stirling_first(4, k) for k in range(5)] == [0, -6, 11, -6, 1]


@pytest.mark.parametrize("n", [2, 5, 12, 20])
def test_stirling_rows_sum_to_zero(n):
    table = specfun.stirling_table(n)
    assert sum(table.row(n)) == 0
    # |s(n, 1)| = (n-1)!
    assert abs(table.get(n, 1)) == math.factorial(n - 1)


def test_stirling_table_is_read_only():
    table = specfun.stirling_table(6)
    assert isinstance(table.entries, tuple)
    with pytest.raises(DomainError):
        table.get(7, 1)


def test_stirling_first_rejects_bad_index():
    with pytest.raises(DomainError):
        specfun.stirling_first(3, 4)


@pytest.mark.parametrize("a, b, c, z", [
    (1.0, 0.5, 2.0, 0.5),
    (1.0, 0.5, 2.0, 0.9),
    (1.0, 0.5, 2.0, -0.3),
    (1.0, 0.5, 2.0, -0.7),
    (1.0, 0.5, 2.0, -3.0),
    (3.0, 0.4, 1.4, -0.25),
    (2.0, 2.0 / 3.0, 5.0 / 3.0, -10.0),
    (4.0, 0.5, 1.5, -1.0 / 3.0),
    (1.0, 0.5, 1.5, -1e3),
    (2.0, 0.5, 1.5, -1e5),
])
def test_gauss_2f1_matches_scipy(a, b, c, z):
    assert specfun.gauss_2f1(a, b, c, z) == pytest.approx(special.hyp2f1(a, b, c, z), rel=1e-9)


def test_gauss_2f1_closed_form():
    # 2F1(1, 1; 2; z) = -log(1 - z)/z
    z = 0.5
    assert specfun.gauss_2f1(1.0, 1.0, 2.0, z) == pytest.approx(-math.log1p(-z) / z, rel=1e-10)
    assert specfun.gauss_2f1(1.0, 1.0, 2.0, 0.0) == 1.0
    # equal upper parameters, the logarithmic case of the continuation
    assert specfun.gauss_2f1(1.0, 1.0, 2.0, -50.0) == pytest.approx(math.log1p(50.0) / 50.0, rel=1e-12)


def test_gauss_2f1_continuous_across_pfaff_switch():
    below = specfun.gauss_2f1(1.0, 0.5, 2.0, specfun.PFAFF_THRESHOLD - 1e-12)
    above = specfun.gauss_2f1(1.0, 0.5, 2.0, specfun.PFAFF_THRESHOLD)
    assert below == pytest.approx(above, rel=1e-9)


def test_gauss_2f1_domain():
    with pytest.raises(DomainError):
        specfun.gauss_2f1(1.0, 1.0, 0.0, 0.5)
    with pytest.raises(DomainError):
        specfun.gauss_2f1(1.0, 1.0, 2.0, 1.0)


def test_gauss_2f1_term_cap():
    with pytest.raises(ConvergenceError) as excinfo:
        specfun.gauss_2f1(1.0, 1.0, 2.0, 0.999999, max_terms=10)
    assert excinfo.value.terms == 10
    assert isinstance(excinfo.value, ArithmeticError)


def test_gauss_2f1_continuous_across_extended_switch():
    below = specfun.gauss_2f1(3.0, 0.5, 1.5, specfun.EXTENDED_THRESHOLD - 1e-9)
    above = specfun.gauss_2f1(3.0, 0.5, 1.5, specfun.EXTENDED_THRESHOLD)
    assert below == pytest.approx(above, rel=1e-8)


def test_gauss_2f1_large_negative_argument_decay():
    # 2F1(a, b; c; z) ~ Γ(c)Γ(a-b)/(Γ(a)Γ(c-b)) (-z)^{-b} as z -> -inf when a > b
    a, b, c, z = 2.0, 0.5, 1.5, -1e8
    leading = math.gamma(c) * math.gamma(a - b) / (math.gamma(a) * math.gamma(c - b)) * (-z) ** -b
    assert specfun.gauss_2f1(a, b, c, z) == pytest.approx(leading, rel=1e-6)
