from fractions import Fraction
from math import comb

import pytest

from fourierpdf.moments import (
    Family,
    skewness_moments,
    skewness_variance,
    uniform4_moment_closed,
    uniform_sum_moments,
)
from fourierpdf.series import skewness_support, uniform_sum_support



def test_uniform_base_case():
    assert uniform_sum_moments(1, 3).even_moments == (1, Fraction(1, 12), Fraction(1, 80), Fraction(1, 448))


def test_uniform4_closed_form_values():
    assert uniform4_moment_closed(0) == 1
    assert uniform4_moment_closed(1) == Fraction(1, 3)
    # E T^4 for four iid U(-1/2, 1/2): n mu_4 + 3 n (n-1) sigma^4 = 4/80 + 36/144
    assert uniform4_moment_closed(2) == Fraction(8 * 63, 5 * 6 * 7 * 8) == Fraction(4, 80) + Fraction(36, 144)


def test_uniform4_recurrence_equals_closed_form():
    seq = uniform_sum_moments(4, 35)
    assert seq.family is Family.UNIFORM_SUM
    assert list(seq.even_moments) == [uniform4_moment_closed(j) for j in range(36)]


@pytest.mark.parametrize("n", range(1, 9))
def test_uniform_variance(n):
    assert uniform_sum_moments(n, 1)[1] == Fraction(n, 12)


def test_skewness_examples():
    assert all(skewness_moments(n, 0)[0] == 1 for n in range(3, 10))
    assert skewness_moments(3, 1)[1] == Fraction(1, 4)
    assert skewness_moments(4, 1)[1] == Fraction(12, 35)


def test_skewness_n3_is_arcsine():
    # with three observations sqrt(b1) = A sin(3 phi), phi uniform: arcsine law on [-A, A], A^2 = 1/2
    seq = skewness_moments(3, 50)
    assert all(seq[s] == Fraction(comb(2 * s, s), 8**s) for s in range(51))


@pytest.mark.parametrize("n", range(3, 23))
def test_skewness_variance_table(n):
    assert skewness_moments(n, 1)[1] == skewness_variance(n) == Fraction(6 * (n - 2), (n + 1) * (n + 3))


def test_skewness_rejects_small_n():
    with pytest.raises(ValueError):
        skewness_moments(2, 3)


def test_moments_do_not_depend_on_requested_depth():
    assert skewness_moments(7, 5).even_moments == skewness_moments(7, 60).even_moments[:6]


@pytest.mark.parametrize(
    "family,n",
    [("uniform-sum", n) for n in (2, 4, 7, 12)] + [("skewness", n) for n in (3, 4, 9, 22)],
)
def test_support_and_hankel_bounds(family, n):
    if family == "uniform-sum":
        seq, A2 = uniform_sum_moments(n, 40), uniform_sum_support(n).A_squared
    else:
        seq, A2 = skewness_moments(n, 50), skewness_support(n).A_squared
    for j, mu in enumerate(seq.even_moments):
        assert 0 <= mu <= A2**j
    for j in range(len(seq) - 2):
        assert seq[j] * seq[j + 2] - seq[j + 1] ** 2 >= 0


def test_odd_moments_vanish():
    seq = uniform_sum_moments(3, 4)
    assert seq.moment(3) == 0 and seq.moment(4) == seq[2]
