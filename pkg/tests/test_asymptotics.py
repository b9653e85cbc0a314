import decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rderangements import asymptotics as asy
from rderangements import core

mpmath.mp.dps = 60


def test_inv_e_against_mpmath():
    for digits in (5, 30, 80):
        approx = asy.inv_e(digits)
        with mpmath.workdps(digits + 20):
            err = abs(mpmath.mpf(approx.numerator) / approx.denominator - mpmath.exp(-1))
            assert err < mpmath.mpf(10) ** -(digits + 5)


def test_bracket_contains_inv_e():
    for K in range(1, 30):
        lo, hi = asy.inv_e_bracket(K)
        assert lo < hi
        assert mpmath.mpf(lo.numerator) / lo.denominator < mpmath.exp(-1)
        assert mpmath.exp(-1) < mpmath.mpf(hi.numerator) / hi.denominator


def test_saddle_coeffs_trivial():
    assert asy.saddle_coeffs(0).coeffs == (Fraction(1),)
    assert asy.saddle_coeffs(2).coeffs == (Fraction(1), Fraction(-1), Fraction(-1, 2))


def test_r2_coefficient_sum():
    a2 = asy.saddle_coeffs(2)
    assert all(a2.weighted_sum(n) == Fraction(n * n + n - 1, 2) for n in range(51))


def test_r3_coefficient_sum_is_over_six():
    # (n^3 - 4n + 1)/6 is what reproduces the D_3(n)/(n+3)! approximation.
    a3 = asy.saddle_coeffs(3)
    assert all(a3.weighted_sum(n) == Fraction(n**3 - 4 * n + 1, 6) for n in range(51))


def test_r3_normalized_form():
    for n in range(3, 40):
        est = asy.saddle_estimate(3, n, 40, normalized=True)
        alt = Fraction(n**3 - 4 * n + 1, 6 * (n + 1) * (n + 2) * (n + 3)) * asy.inv_e(40)
        assert abs(est.rational - alt) < Fraction(1, 10**35)


def test_d4_8_estimate():
    est = asy.saddle_estimate(4, 8, 12, normalized=True)
    assert str(est.value).startswith("0.0035108023")
    assert str(est.exact_decimal).startswith("0.0035108024")
    assert est.error < decimal.Decimal("2e-10")


def test_estimate_tiny_n():
    est = asy.saddle_estimate(0, 1, 5)
    assert est.value == decimal.Decimal("0.36788")
    assert est.exact_reference == 0


def test_estimate_against_mpmath_oracle():
    for r in range(5):
        for n in range(r, 25):
            est = asy.saddle_estimate(r, n, 40)
            s = sum(
                mpmath.mpf(a.numerator) / a.denominator * mpmath.binomial(n + r - k, n)
                for k, a in enumerate(asy.saddle_coeffs(r).coeffs)
            )
            ref = s * mpmath.exp(-1)
            assert abs(mpmath.mpf(str(est.value)) - ref) <= abs(ref) * mpmath.mpf(10) ** -38 + mpmath.mpf(10) ** -50


def test_estimate_error_within_bound():
    for r in range(1, 5):
        for n in range(r + 2, 61):
            est = asy.saddle_estimate(r, n, 60)
            err = abs(est.rational - est.exact_reference)
            assert err < asy.deviation_bound(r, n) / core.factorial(n)


def test_estimate_error_shrinks():
    for r in range(5):
        errs = [abs(asy.saddle_estimate(r, n, 120).rational - asy.saddle_estimate(r, n, 120).exact_reference)
                for n in range(r + 2, 61)]
        assert errs[-1] < errs[0]


@pytest.mark.parametrize("r, n", [(2, 10), (1, 1), (4, 40)])
def test_deviation_examples(r, n):
    assert asy.deviation_bound_check(r, n)


def test_deviation_against_mpmath():
    with mpmath.workdps(50):
        d = core.r_derangement(2, 10)
        assert d == 72755370
        centre = mpmath.factorial(10) / mpmath.e * mpmath.binomial(9, 2)
        assert abs(d - centre) < 2 * mpmath.factorial(10) * mpmath.binomial(9, 1)


def test_deviation_detects_false_inequality(monkeypatch):
    monkeypatch.setattr(asy, "r_derangement", lambda r, n: 10**40)
    assert not asy.deviation_bound_check(2, 10)


@given(st.integers(1, 5), st.integers(0, 95))
def test_deviation_property(r, extra):
    assert asy.deviation_bound_check(r, r + extra)


def test_limit_ratio_examples():
    est = asy.limit_ratio(1, 1000, 15)
    assert abs(est.exact_reference - asy.inv_e(20)) < Fraction(1, 1000)
    assert asy.limit_ratio(2, 2, 10).exact_reference == Fraction(2, 24)
    est = asy.limit_ratio(3, 100, 15)
    assert abs(est.exact_reference - asy.limit_value(3)) < Fraction(1, 100)


def test_limit_ratio_within_scaled_bound():
    for r in range(1, 4):
        n = 500
        gap = abs(asy.limit_ratio(r, n).exact_reference - asy.limit_value(r, 60))
        assert gap < Fraction(asy.deviation_bound(r, n), core.factorial(n + r))
