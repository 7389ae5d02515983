from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import integrate

from fourierpdf.numerics import (
    PiPolynomial,
    beta_half,
    beta_half_exact,
    binomial,
    eval_pi_polynomial,
    pi_at,
    pochhammer,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**6)


def pascal(n):
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert all(binomial(2 * j, 0) == 1 for j in range(20))
    assert binomial(10, 5) == pascal(10)[5] == 252


def test_binomial_k_above_n_is_an_error():
    with pytest.raises(ValueError):
        binomial(3, 4)


@given(st.integers(2, 60), st.integers(1, 59))
def test_binomial_pascal_rule(n, k):
    assume(k < n)
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(3, 3) == 60


@given(rationals, st.integers(0, 30))
def test_pochhammer_step(a, m):
    assert pochhammer(a, m + 1) == pochhammer(a, m) * (a + m)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0


def test_pi_at():
    assert mpmath.nstr(pi_at(64), 16) == "3.141592653589793"
    p256, p512 = pi_at(256), pi_at(512)
    with mpmath.workprec(600):
        assert abs(p256 - p512) <= mpmath.mpf(2) ** -254 * 4
    for bits in (64, 100, 320, 1000):
        assert 3.14159 < pi_at(bits) < 3.14160


def test_eval_constant_and_single_term():
    assert eval_pi_polynomial(PiPolynomial((Fraction(1),)), 256) == 1
    value = eval_pi_polynomial(PiPolynomial((0, 4)), 300)
    with mpmath.workprec(300):
        assert abs(value - 4 * mpmath.pi**2) <= 4 * mpmath.pi**2 * mpmath.mpf(2) ** -250


def test_eval_scale_is_rounded_at_requested_precision():
    p = PiPolynomial((Fraction(3),), scale_squared=Fraction(1, 2))
    with mpmath.workprec(700):
        exact = 3 / mpmath.sqrt(2)
        assert abs(eval_pi_polynomial(p, 640) - exact) < mpmath.mpf(2) ** -630


def test_eval_triangular_coefficient():
    # n = 2 uniform sum has a_1 = 4/pi^2
    from fourierpdf.moments import uniform_sum_moments
    from fourierpdf.series import coeff_from_moments, uniform_sum_support

    poly = coeff_from_moments(uniform_sum_support(2), uniform_sum_moments(2, 35), 1, 35)
    assert mpmath.nstr(eval_pi_polynomial(poly, 320), 6) == "0.405285"


def test_eval_rejects_low_precision():
    with pytest.raises(ValueError):
        eval_pi_polynomial(PiPolynomial((1,)), 128)


def test_beta_half_examples():
    assert beta_half_exact(6).rational == Fraction(4, 3) and beta_half_exact(6).pi_power == 0
    assert beta_half(4) == 2
    numeric, _ = integrate.quad(lambda t: t**-0.5 * (1 - t) ** 1.5, 0, 1)
    assert float(beta_half(7)) == pytest.approx(numeric, rel=1e-10)
    assert beta_half_exact(7).pi_power == 1


@pytest.mark.parametrize("n", range(4, 25))
def test_beta_half_matches_gamma_ratio(n):
    with mpmath.workprec(200):
        ref = mpmath.beta(mpmath.mpf(1) / 2, mpmath.mpf(n - 2) / 2)
        assert abs(beta_half(n, 200) - ref) < ref * mpmath.mpf(2) ** -190
