from fractions import Fraction
from math import factorial, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobern.series import (
    OrderMismatchError,
    TruncatedSeries,
    exp_series,
    expm1_over_t,
    mb_gf,
    psi_gf,
    psi_gf_direct,
    psi_gf_factored,
    t_over_expm1,
)

K = 16
F = Fraction


def poly(*cs, order=4):
    return TruncatedSeries(cs, order)


def test_add_and_zero():
    assert poly(1, 1) + poly(1, -1) == poly(2)
    a = poly(F(1, 3), 2, -1)
    assert TruncatedSeries.zero(4) + a == a


def test_mul_examples():
    assert poly(1, 1) * poly(1, -1) == poly(1, 0, -1)
    a = poly(3, F(1, 2), 0, 7)
    assert a * TruncatedSeries.one(4) == a


def test_mul_truncates():
    assert poly(0, 0, 1, order=3) * poly(0, 0, 1, order=3) == TruncatedSeries.zero(3)


def test_order_mismatch_rejected():
    with pytest.raises(OrderMismatchError):
        poly(1, order=3) + poly(1, order=4)
    with pytest.raises(OrderMismatchError):
        poly(1, order=3) * poly(1, order=4)


def test_pow():
    assert poly(1, 1) ** 2 == poly(1, 2, 1)
    a = poly(2, 3, 5)
    assert a**1 == a
    assert a**0 == TruncatedSeries.one(4)
    assert a**3 == a * a * a


def test_inverse():
    assert poly(1, -1).inverse() == poly(1, 1, 1, 1, 1)
    a = poly(2, F(-1, 3), 4, 0, 1)
    assert a.inverse().inverse() == a
    with pytest.raises(ZeroDivisionError):
        poly(0, 1).inverse()


def test_egf_bounds():
    with pytest.raises(ValueError):
        poly(1).egf(5)


def test_expm1_over_t():
    assert expm1_over_t(1, 2).coeffs == (1, F(1, 2), F(1, 6))
    assert expm1_over_t(2, 2).coeffs == (2, 2, F(4, 3))
    for d in range(1, 8):
        assert expm1_over_t(d, K)[0] == d


def test_expm1_over_t_is_difference_of_exponentials():
    # e^{dt} - 1 computed from exp_series, shifted down by one power of t
    for d in (1, 2, 3, F(5, 2)):
        full = exp_series(d, K + 1) - TruncatedSeries.one(K + 1)
        assert full.shift_down() == expm1_over_t(d, K)


def test_reciprocal_pair():
    assert expm1_over_t(1, K) * t_over_expm1(1, K) == TruncatedSeries.one(K)


def test_t_over_expm1_first_terms():
    g = t_over_expm1(1, K)
    assert [g[k] for k in range(3)] == [1, F(-1, 2), F(1, 12)]
    assert t_over_expm1(2, K)[0] == F(1, 2)


def test_t_over_expm1_scaling():
    # k! c_k(d) = B_k d^(k-1): compare against d = 1
    base = t_over_expm1(1, K)
    for d in (2, 3, 5, 6):
        scaled = t_over_expm1(d, K)
        for k in range(K + 1):
            assert scaled.egf(k) == base.egf(k) * Fraction(d) ** (k - 1)


def test_mb_gf_n1_is_bernoulli_gf():
    assert mb_gf(1, K) == t_over_expm1(1, K)


def test_mb_gf_n6_closed_form():
    # closed form B_k (1 - 2^(k-1)) (1 - 3^(k-1)) using B_k from t/(e^t - 1)
    f, g = mb_gf(6, K), t_over_expm1(1, K)
    for k in range(11):
        b = g.egf(k)
        assert f.egf(k) == b * (1 - F(2) ** (k - 1)) * (1 - F(3) ** (k - 1))


def test_mb_gf_odd_coefficients_vanish():
    for n in range(2, 31):
        f = mb_gf(n, K)
        assert all(f[k] == 0 for k in range(1, K + 1, 2))


def test_psi_gf_zero_at_x0():
    for n in (1, 2, 6):
        assert psi_gf(0, n, K) == TruncatedSeries.zero(K)


def test_psi_gf_n6_matches_coprime_power_sums():
    f = psi_gf(6, 6, K)
    for k in range(9):
        assert f.egf(k) == 1**k + 5**k


def test_psi_gf_n1_x1():
    f = psi_gf(1, 1, K)
    assert all(f.egf(k) == 1 for k in range(K + 1))


def test_psi_gf_integer_x_is_sum_of_exponentials():
    # at x = n the series is Σ e^{m t} over m < n coprime to n
    for n in (2, 6, 10, 12):
        units = [m for m in range(1, n) if gcd(m, n) == 1]
        want = TruncatedSeries.zero(K)
        for m in units:
            want = want + exp_series(m, K)
        assert psi_gf(n, n, K) == want


@pytest.mark.parametrize("x", [F(1), F(5, 2), F(7)])
def test_psi_gf_routes_agree(x):
    for n in range(2, 13):
        assert psi_gf_direct(x, n, K) == psi_gf_factored(x, n, K)


series_st = st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=7, max_size=7
).map(lambda cs: TruncatedSeries(cs))


@settings(max_examples=50, deadline=None)
@given(series_st, series_st, series_st)
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert all((a + b)[k] == a[k] + b[k] for k in range(7))


@settings(max_examples=50, deadline=None)
@given(series_st)
def test_inverse_property(a):
    if a[0] == 0:
        return
    assert a * a.inverse() == TruncatedSeries.one(a.order)


def test_egf_reads_factorial_scaled_coefficient():
    e = exp_series(3, 6)
    assert [e.egf(k) for k in range(7)] == [3**k for k in range(7)]
    assert e[4] == F(81, factorial(4))
