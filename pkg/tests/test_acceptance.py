"""Exit criteria.  Every comparison is exact rational equality.

Run ``pytest tests/test_acceptance.py`` to get one PASS/FAIL line per
criterion in the terminal summary.
"""

import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

import pytest

import mobern
from mobern.arith_core import factorize, faa_di_bruno_terms, falling_factorial
from mobern.bernoulli import (
    bernoulli,
    bernoulli_explicit,
    higher_bernoulli,
    higher_bernoulli_conv,
    stirling_identity_check,
)
from mobern.moebius_bernoulli import (
    mb_higher_conv,
    mb_higher_kernel,
    mb_higher_partition,
    mb_higher_primepower,
    mb_number,
)
from mobern.powersums import (
    derivative_identity_check,
    psi_brute,
    psi_eval,
    psi_products_brute,
    psi_products_conv,
    psi_products_poly,
)
from mobern.series import mb_gf, psi_gf

F = Fraction
K = 16


def prime_power(n):
    fac = factorize(n)
    return fac[0] if len(fac) == 1 else None


def solve(matrix, rhs):
    """Exact Gauss-Jordan elimination over the rationals."""
    n = len(rhs)
    a = [[F(v) for v in row] + [F(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


@pytest.fixture(scope="module")
def full_verify():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "mobern", "verify", "--suite", "all"],
        capture_output=True,
        text=True,
    )
    return proc, time.perf_counter() - start


@pytest.mark.criterion(1, "coprime power-sum anchor, n in [2,50], k in [0,8], < 5 s")
def test_coprime_power_sum_anchor():
    mobern.clear_caches()
    start = time.perf_counter()
    bad = [
        (k, n)
        for n in range(2, 51)
        for k in range(9)
        if psi_eval(k, n, n) != psi_brute(k, n)
    ]
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < 5


@pytest.mark.criterion(2, "four-route M_k^N(n) agreement, n in [2,30], N in [1,5], k in [0,10], < 30 s")
def test_four_route_agreement():
    mobern.clear_caches()
    start = time.perf_counter()
    bad = []
    primepower_cells = 0
    for n in range(2, 31):
        pp = prime_power(n)
        for N in range(1, 6):
            for k in range(11):
                conv = mb_higher_conv(k, N, n)
                routes = [mb_higher_partition(k, N, n), mb_higher_kernel(k, N, n)]
                if pp:
                    routes.append(mb_higher_primepower(k, N, *pp))
                    primepower_cells += 1
                if any(r != conv for r in routes):
                    bad.append((n, N, k, conv, routes))
    elapsed = time.perf_counter() - start
    assert bad == []
    # prime powers in [2,30]: 2,3,4,5,7,8,9,11,13,16,17,19,23,25,27,29
    assert primepower_cells == 16 * 5 * 11
    assert elapsed < 30


@pytest.mark.criterion(3, "odd vanishing on every route, n in [2,30], k in [1,5], N in [1,5]")
def test_odd_vanishing():
    for n in range(2, 31):
        pp = prime_power(n)
        for N in range(1, 6):
            for k in range(1, 6):
                odd = 2 * k - 1
                assert mb_higher_conv(odd, N, n) == 0
                assert mb_higher_partition(odd, N, n) == 0
                assert mb_higher_kernel(odd, N, n) == 0
                if pp:
                    assert mb_higher_primepower(odd, N, *pp) == 0


@pytest.mark.criterion(4, "M_8^N worked example: coefficients 28, 35, 210, 105")
def test_m8_worked_example():
    # grouped terms of the partition route
    grouped = {part.parts: w for part, w in faa_di_bruno_terms(8, even_only=True)}
    assert grouped == {(8,): 1, (6, 2): 28, (4, 4): 35, (4, 2, 2): 210, (2, 2, 2, 2): 105}

    # recover the grouped terms G_j from convolution-route values at N = 2, 4, 6, 8:
    #   M_8^N(n) = Σ_j N!/(N-j)! M_0(n)^(N-j) G_j(n)
    def grouped_terms(n):
        m0 = mb_number(0, n)
        Ns = (2, 4, 6, 8)
        matrix = [[falling_factorial(N, j) * m0 ** (N - j) for j in range(1, 5)] for N in Ns]
        return solve(matrix, [mb_higher_conv(8, N, n) for N in Ns])

    m = {n: {i: mb_number(i, n) for i in (2, 4, 6, 8)} for n in (6, 10)}
    g6 = grouped_terms(6)
    assert g6[0] == m[6][8]
    assert g6[2] / (m[6][4] * m[6][2] ** 2) == 210
    assert g6[3] / m[6][2] ** 4 == 105

    # G_2 = a M_6 M_2 + b M_4^2; two moduli separate a and b
    g10 = grouped_terms(10)
    a, b = solve(
        [[m[6][6] * m[6][2], m[6][4] ** 2], [m[10][6] * m[10][2], m[10][4] ** 2]],
        [g6[1], g10[1]],
    )
    assert (a, b) == (28, 35)

    # and the partition route reproduces the convolution value at n = 6
    for N in range(1, 9):
        assert mb_higher_partition(8, N, 6) == mb_higher_conv(8, N, 6)


@pytest.mark.criterion(5, "sums-of-products theorem = definition = brute force, < 30 s")
def test_theorem_vs_definition():
    mobern.clear_caches()
    start = time.perf_counter()
    for n in range(2, 21):
        for N in range(1, 5):
            for k in range(7):
                assert psi_products_poly(k, N, n) == psi_products_conv(k, N, n), (k, N, n)
    for n in range(2, 13):
        for N in range(1, 4):
            for k in range(7):
                assert psi_products_conv(k, N, n)(n) == psi_products_brute(k, N, n), (k, N, n)
    elapsed = time.perf_counter() - start
    assert psi_products_poly(1, 2, 6)(6) == psi_products_brute(1, 2, 6) == 24
    assert elapsed < 30


@pytest.mark.criterion(6, "generating-function oracles at K = 16, n <= 12, N <= 4, k <= 10")
def test_generating_function_oracles():
    for n in range(1, 13):
        f = mb_gf(n, K)
        for k in range(11):
            assert f.egf(k) == mb_number(k, n)
        for N in range(1, 5):
            fN = f**N
            for k in range(11):
                assert fN.egf(k) == mb_higher_conv(k, N, n)
        for x in (F(1), F(5, 2)):
            g = psi_gf(x, n, K)
            for N in range(1, 5):
                gN = g**N
                for k in range(11):
                    want = psi_products_conv(k, N, n)(x)
                    assert gN.egf(k) == want, (n, x, N, k)
                    if n > 1:
                        assert psi_products_poly(k, N, n)(x) == want


@pytest.mark.criterion(7, "derivative identity, k in [1,10], n in [1,30]")
def test_derivative_identity():
    bad = [(k, n) for n in range(1, 31) for k in range(1, 11) if not derivative_identity_check(k, n)]
    assert bad == []


@pytest.mark.criterion(8, "Bernoulli cross-checks: explicit sum, higher order, Stirling identity")
def test_bernoulli_cross_checks():
    for k in range(21):
        assert bernoulli(k) == bernoulli_explicit(k)
    for j in range(13):
        for m in range(7):
            assert higher_bernoulli(j, m) == higher_bernoulli_conv(j, m)
    for N in range(1, 5):
        for x in (F(1), F(5, 2), F(0), F(-3), F(7, 3)):
            assert stirling_identity_check(x, N, 10)


@pytest.mark.criterion(9, "verify prints the M_2^2(6) discrepancy: 2/9 vs printed 4/3")
def test_erratum_golden_line(full_verify):
    proc, _ = full_verify
    golden = (
        "ERRATUM M_2^2(6) documented discrepancy: generating-function value 2/9, "
        "printed-table convention value 4/3 "
        "(table uses phi(n)^(N-1) where the generating function gives (phi(n)/n)^(N-1))"
    )
    assert golden in proc.stdout.splitlines()
    assert mb_higher_conv(2, 2, 6) == F(2, 9)
    phi6 = 2
    assert 2 * phi6 * mb_number(2, 6) == F(4, 3)


@pytest.mark.criterion(10, "verify --suite all exits 0 in under 120 s")
def test_full_verify(full_verify):
    proc, elapsed = full_verify
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
    assert elapsed < 120


def test_worked_example_partition_count_remark():
    # M_20^N is a sum over partitions of 10: 42 grouped terms
    assert len(faa_di_bruno_terms(20, even_only=True)) == 42
    assert factorial(8) // (factorial(2) ** 4 * factorial(4)) == 105
