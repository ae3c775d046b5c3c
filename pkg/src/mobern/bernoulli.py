"""Bernoulli numbers, higher-order Bernoulli numbers and Stirling numbers.

Convention: B_1 = -1/2, the one fixed by t / (e^t - 1) = Σ B_k t^k / k!.
Flipping it to +1/2 breaks the Ψ derivative identity, so don't.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .series import TruncatedSeries, expm1_over_t, t_over_expm1

__all__ = [
    "bernoulli",
    "bernoulli_explicit",
    "higher_bernoulli",
    "higher_bernoulli_conv",
    "stirling2",
    "stirling_identity_check",
    "clear_caches",
]

_B_TABLE: list[Fraction] = [Fraction(1)]
_B_LOCK = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """B_k from the recurrence Σ_{j<=k} C(k+1, j) B_j = 0 (k >= 1).

    >>> [str(bernoulli(k)) for k in range(5)]
    ['1', '-1/2', '1/6', '0', '-1/30']
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k < len(_B_TABLE):
        return _B_TABLE[k]
    with _B_LOCK:
        for m in range(len(_B_TABLE), k + 1):
            if m > 1 and m % 2:
                _B_TABLE.append(Fraction(0))
                continue
            s = sum((comb(m + 1, j) * _B_TABLE[j] for j in range(m)), Fraction(0))
            _B_TABLE.append(-s / (m + 1))
    return _B_TABLE[k]


def bernoulli_explicit(k: int) -> Fraction:
    """B_k as Σ_{m=1}^{k} 1/(m+1) Σ_{i=1}^{m} (-1)^i C(m, i) i^k.

    The outer sum is empty at k = 0, which would give 0; B_0 = 1 is returned
    there instead.  Meant as a test oracle, the integers get large quickly.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    for m in range(1, k + 1):
        inner = sum((-1) ** i * comb(m, i) * i**k for i in range(1, m + 1))
        total += Fraction(inner, m + 1)
    return total


@lru_cache(maxsize=None)
def higher_bernoulli(j: int, m: int) -> Fraction:
    """Order-m Bernoulli number B_j^(m), the j! t^j coefficient of (t/(e^t-1))^m.

    Closed form:

        Σ_{l=0}^{j} C(j+m, j-l) C(m+l-1, l) j!/(j+l)! Σ_{h=0}^{l} (-1)^h C(l,h) h^(j+l)

    B_0^(0) = 1 and B_j^(0) = 0 for j >= 1.
    """
    if j < 0 or m < 0:
        raise ValueError("j and m must be nonnegative")
    if m == 0:
        return Fraction(1 if j == 0 else 0)
    total = Fraction(0)
    jf = factorial(j)
    for ell in range(j + 1):
        inner = sum((-1) ** h * comb(ell, h) * h ** (j + ell) for h in range(ell + 1))
        if not inner:
            continue
        total += Fraction(
            comb(j + m, j - ell) * comb(m + ell - 1, ell) * jf * inner,
            factorial(j + ell),
        )
    return total


def higher_bernoulli_conv(j: int, m: int, order: int | None = None) -> Fraction:
    """B_j^(m) read off the m-th power of the series t/(e^t - 1).

    Recomputed from scratch on every call so it stays independent of
    :func:`higher_bernoulli`.
    """
    if j < 0 or m < 0:
        raise ValueError("j and m must be nonnegative")
    K = j if order is None else order
    if K < j:
        raise ValueError(f"order {K} is too small for coefficient {j}")
    return (t_over_expm1(1, K) ** m).egf(j)


@lru_cache(maxsize=None)
def stirling2(ell: int, m: int) -> int:
    """Stirling number of the second kind S(ell, m)."""
    if ell < 0 or m < 0:
        return 0
    if ell == 0 or m == 0:
        return 1 if ell == m else 0
    if m > ell:
        return 0
    # iterate on ell to keep the recursion depth bounded
    row = [1]  # S(0, 0)
    for L in range(1, ell + 1):
        new = [0] * (min(L, m) + 1)
        for i in range(1, len(new)):
            prev_i = row[i] if i < len(row) else 0
            new[i] = i * prev_i + row[i - 1]
        row = new
    return row[m]


def stirling_identity_check(x: Fraction | int, N: int, order: int) -> bool:
    """Check ((e^(x t) - 1)/t)^N = Σ_j j! N!/(j+N)! S(j+N, N) x^(j+N) t^j / j!.

    The left side is a series power, the right side the Stirling formula,
    compared coefficientwise for j = 0..order.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    x = Fraction(x)
    lhs = expm1_over_t(x, order) ** N
    rhs = TruncatedSeries(
        Fraction(factorial(N) * stirling2(j + N, N), factorial(j + N)) * x ** (j + N)
        for j in range(order + 1)
    )
    return lhs == rhs


def clear_caches() -> None:
    """Drop memoized values; the Bernoulli table keeps only B_0."""
    with _B_LOCK:
        del _B_TABLE[1:]
    higher_bernoulli.cache_clear()
    stirling2.cache_clear()
