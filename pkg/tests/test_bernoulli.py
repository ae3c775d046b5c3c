from fractions import Fraction
from math import comb

import pytest

import mobern
from mobern.bernoulli import (
    bernoulli,
    bernoulli_explicit,
    higher_bernoulli,
    higher_bernoulli_conv,
    stirling2,
    stirling_identity_check,
)
from mobern.series import t_over_expm1

F = Fraction

# B_0..B_20; even entries checked below against the recurrence and the explicit sum
KNOWN = {
    0: F(1), 1: F(-1, 2), 2: F(1, 6), 4: F(-1, 30), 6: F(1, 42), 8: F(-1, 30),
    10: F(5, 66), 12: F(-691, 2730), 14: F(7, 6), 16: F(-3617, 510),
    18: F(43867, 798), 20: F(-174611, 330),
}


def test_small_values():
    assert [bernoulli(k) for k in range(5)] == [1, F(-1, 2), F(1, 6), 0, F(-1, 30)]


def test_known_table():
    for k, v in KNOWN.items():
        assert bernoulli(k) == v


def test_recurrence_holds():
    for k in range(1, 40):
        assert sum(comb(k + 1, j) * bernoulli(j) for j in range(k + 1)) == 0


def test_odd_vanishing():
    for k in range(1, 11):
        assert bernoulli(2 * k + 1) == 0


def test_explicit_formula_examples():
    assert bernoulli_explicit(2) == F(1, 6)
    assert bernoulli_explicit(3) == 0
    # empty outer sum at k = 0 is special-cased to B_0
    assert bernoulli_explicit(0) == 1


def test_explicit_formula_agrees_with_recurrence():
    for k in range(21):
        assert bernoulli_explicit(k) == bernoulli(k)


def test_series_coefficients_are_bernoulli():
    g = t_over_expm1(1, 24)
    for k in range(25):
        assert g.egf(k) == bernoulli(k)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_higher_bernoulli_examples():
    assert higher_bernoulli(0, 0) == 1
    assert higher_bernoulli(3, 0) == 0
    assert higher_bernoulli(1, 2) == -1
    for m in range(7):
        assert higher_bernoulli(0, m) == 1
    for j in range(13):
        assert higher_bernoulli(j, 1) == bernoulli(j)


def test_higher_bernoulli_square():
    # (1 - t/2 + t^2/12 + ...)^2 = 1 - t + (5/12) t^2 + ...
    assert higher_bernoulli(2, 2) == F(5, 6)
    assert higher_bernoulli_conv(2, 2) == F(5, 6)


def test_higher_bernoulli_closed_form_matches_series():
    for j in range(13):
        for m in range(7):
            assert higher_bernoulli(j, m) == higher_bernoulli_conv(j, m), (j, m)


def test_higher_bernoulli_conv_order_guard():
    with pytest.raises(ValueError):
        higher_bernoulli_conv(5, 2, order=3)
    assert higher_bernoulli_conv(0, 0) == 1
    assert higher_bernoulli_conv(1, 2) == -1


def bell_triangle(limit):
    bells, row = [1], [1]
    for _ in range(limit):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
        bells.append(row[0])
    return bells


def test_stirling_examples():
    assert stirling2(4, 2) == 7
    assert stirling2(3, 3) == 1
    assert stirling2(0, 0) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(2, 5) == 0
    assert all(stirling2(k, 1) == 1 for k in range(1, 20))


def test_stirling_recurrence_and_bell_rows():
    bells = bell_triangle(12)
    for ell in range(13):
        assert sum(stirling2(ell, m) for m in range(ell + 1)) == bells[ell]
    for ell in range(1, 30):
        for m in range(1, ell + 1):
            assert stirling2(ell, m) == m * stirling2(ell - 1, m) + stirling2(ell - 1, m - 1)


def test_stirling_big_integers():
    # exceeds 64 bits well before ell = 40
    assert stirling2(40, 20) > 2**64


@pytest.mark.parametrize("x, N", [(1, 1), (F(5, 2), 3), (0, 2), (-3, 4), (F(7, 3), 2)])
def test_stirling_identity(x, N):
    assert stirling_identity_check(x, N, 10)


def test_clear_caches_rebuilds_same_values():
    before = [bernoulli(k) for k in range(30)]
    mobern.clear_caches()
    assert [bernoulli(k) for k in range(30)] == before
