import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import trapezoid

from fourierpdf import build_model
from fourierpdf.exact_dists import (
    geary_consistency,
    geary_rhs,
    irwin_hall,
    irwin_hall_cdf,
    irwin_hall_pdf,
    skewness_support,
    uniform_sum_coeff_exact,
)
from fourierpdf.series import coeff_from_pdf, uniform_sum_support

# max |recurrence - model| on 101 points over [-A/2, A/2], measured once and frozen
GEARY_BOUNDS = {
    6: 4.0e-3, 7: 2.2e-3, 8: 5.0e-4, 9: 7.3e-4, 10: 2.4e-4, 11: 5.2e-5, 12: 1.3e-5,
    13: 5.4e-6, 14: 8.0e-6, 15: 1.9e-5, 16: 3.8e-5, 17: 7.0e-5, 18: 1.2e-4,
    19: 2.0e-4, 20: 3.0e-4, 21: 4.3e-4, 22: 6.0e-4,
}


def test_irwin_hall4_examples():
    assert irwin_hall_pdf(4, Fraction(0)) == Fraction(2, 3)
    assert irwin_hall_pdf(4, 0.0) == pytest.approx(2 / 3, abs=1e-15)
    assert irwin_hall_cdf(4, 1.3002) == pytest.approx(0.990006, abs=2e-6)


def test_triangular_peak_and_tail():
    assert irwin_hall_pdf(2, Fraction(0)) == 1
    assert irwin_hall_cdf(2, 0.5528) == pytest.approx(0.9, abs=1e-4)


@pytest.mark.parametrize("n", range(1, 13))
def test_endpoints_and_symmetry(n):
    half = Fraction(n, 2)
    if n > 1:
        assert irwin_hall_pdf(n, half) == 0 and irwin_hall_pdf(n, -half) == 0
    assert irwin_hall_cdf(n, Fraction(0)) == Fraction(1, 2)
    assert irwin_hall_cdf(n, half) == 1
    assert irwin_hall_pdf(n, half + 1) == 0
    x = np.linspace(-n / 2, n / 2, 301)
    assert np.allclose(irwin_hall_pdf(n, x), irwin_hall_pdf(n, -x), atol=1e-13)


@pytest.mark.parametrize("n", range(1, 13))
def test_exact_unit_mass(n):
    assert irwin_hall(n).total_mass() == 1


@pytest.mark.parametrize("n", range(2, 13))
def test_continuity_and_nonnegativity(n):
    law = irwin_hall(n)
    for b in law.breakpoints[1:-1]:
        i = int(b + Fraction(n, 2))
        left = sum(c for c in law.pdf_pieces[i - 1])  # u = 1 on the left piece
        right = law.pdf_pieces[i][0]
        assert left == right
    grid = [Fraction(-n, 2) + Fraction(j, 7) for j in range(7 * n + 1)]
    assert all(law.pdf(x) >= 0 for x in grid)


@pytest.mark.parametrize("n", range(1, 8))
def test_cdf_monotone(n):
    F = irwin_hall_cdf(n, np.linspace(-n / 2 - 0.5, n / 2 + 0.5, 4001))
    assert np.all(np.diff(F) >= -1e-15)


def test_uniform4_closed_form_equivalence():
    for k in range(1, 9):
        closed = 128 * math.sin(k * math.pi / 4) ** 4 / (math.pi**4 * k**4)
        exact = uniform_sum_coeff_exact(4, k)
        if closed == 0 or k % 4 == 0:
            assert abs(exact) <= 1e-30 and abs(closed) <= 1e-15
        else:
            assert exact == pytest.approx(closed, rel=1e-15)


def test_exact_coefficient_examples():
    assert uniform_sum_coeff_exact(4, 1) == pytest.approx(32 / math.pi**4, rel=1e-15)
    assert uniform_sum_coeff_exact(4, 2) == pytest.approx(0.0821279, abs=5e-8)
    assert uniform_sum_coeff_exact(7, 0) == 2 / 7
    assert uniform_sum_coeff_exact(6, 12) == 0.0
    with pytest.raises(ValueError):
        uniform_sum_coeff_exact(0, 1)


@pytest.mark.parametrize("n", range(2, 13))
def test_exact_coefficients_match_quadrature(n):
    support = uniform_sum_support(n)
    knots = np.arange(n + 1) - n / 2
    for k in range(9):
        q = coeff_from_pdf(lambda x: irwin_hall_pdf(n, x), support, k, knots)
        assert q == pytest.approx(uniform_sum_coeff_exact(n, k), abs=1e-11)


def test_exact_coefficients_n6_tight():
    support = uniform_sum_support(6)
    for k in range(1, 9):
        q = coeff_from_pdf(lambda x: irwin_hall_pdf(6, x), support, k, np.arange(7) - 3)
        assert q == pytest.approx(uniform_sum_coeff_exact(6, k), abs=1e-12)


@pytest.mark.parametrize("n", range(3, 23))
def test_skewness_support_exact(n):
    spec = skewness_support(n)
    assert spec.A_squared == Fraction((n - 2) ** 2, n - 1)
    assert spec.A_float == pytest.approx((n - 2) / math.sqrt(n - 1), rel=1e-15)


def test_skewness_support_examples():
    assert 1 / skewness_support(4).A_float == pytest.approx(0.866025, abs=5e-7)
    assert 1 / skewness_support(6).A_float == pytest.approx(0.559017, abs=5e-7)
    assert skewness_support(3).A_float == pytest.approx(math.sqrt(0.5), abs=2e-16)
    with pytest.raises(ValueError):
        skewness_support(2)


@pytest.mark.parametrize("n", sorted(GEARY_BOUNDS))
def test_geary_deviation_frozen(n):
    prev, cur = build_model("skewness", n - 1), build_model("skewness", n)
    grid = np.linspace(-cur.A / 2, cur.A / 2, 101)
    check = geary_consistency(prev, cur, grid)
    assert check.max_deviation <= GEARY_BOUNDS[n]
    assert np.max(np.abs(check.rhs - check.rhs[::-1])) <= 1e-12


def test_geary_n6_within_loose_bound():
    prev, cur = build_model("skewness", 5), build_model("skewness", 6)
    check = geary_consistency(prev, cur, np.linspace(-cur.A / 2, cur.A / 2, 101))
    assert check.max_deviation <= 0.01


@pytest.mark.parametrize("n", [6, 9, 14])
def test_geary_rhs_normalised(n):
    prev = build_model("skewness", n - 1)
    A = skewness_support(n).A_float
    x = np.linspace(-A, A, 801)
    rhs, _ = geary_rhs(prev, n, x)
    assert trapezoid(rhs, x) == pytest.approx(1.0, abs=0.01)


def test_geary_rejects_small_n():
    with pytest.raises(ValueError, match="n >= 6"):
        geary_rhs(build_model("skewness", 4), 5, [0.0])


def test_geary_rejects_mismatched_models():
    with pytest.raises(ValueError):
        geary_consistency(build_model("skewness", 6), build_model("skewness", 8), [0.0])
