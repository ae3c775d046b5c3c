"""Möbius-Bernoulli numbers M_k(n) and their higher-order versions M_k^N(n).

M_k(n) are the k! t^k coefficients of

    f_n(t) = Σ_{d|n} μ(d) t / (e^(t d) - 1),

and M_k^N(n) those of f_n(t)^N.  The higher-order numbers are computed by
four independent routes:

* ``convolution``: multinomial sum over compositions of k into N parts,
* ``partition``: the power form of Faà di Bruno applied to f_n,
* ``prime_power``: a Leibniz expansion in higher-order Bernoulli numbers,
  valid only for n = p^s,
* ``kernel``: a multinomial expansion over the squarefree divisors of n.

Normalization note: f_n(0) = Σ_{d|n} μ(d)/d = φ(n)/n, so M_0(n) = φ(n)/n and
the partition route carries powers of M_0(n), not of φ(n).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .arith_core import (
    compositions,
    factorize,
    is_prime,
    moebius,
    multinomial,
    power_derivative_partition,
    radical,
    squarefree_divisors,
    totient,
)
from .bernoulli import bernoulli, higher_bernoulli
from .series import DEFAULT_ORDER, mb_gf

__all__ = [
    "CROSS_CHECK_MAX_K",
    "KERNEL_CROSS_CHECK_MAX_PRIMES",
    "Method",
    "HigherMBRequest",
    "MBTable",
    "RouteDisagreement",
    "mb_number",
    "mb_number_series",
    "mb_table",
    "mb_higher_conv",
    "mb_higher_partition",
    "mb_higher_primepower",
    "mb_higher_kernel",
    "mb_higher",
    "table_convention_m2",
    "clear_caches",
]

CROSS_CHECK_MAX_K = 12
KERNEL_CROSS_CHECK_MAX_PRIMES = 3


class Method(str, enum.Enum):
    CONVOLUTION = "conv"
    PARTITION = "partition"
    PRIME_POWER = "primepower"
    KERNEL = "kernel"
    AUTO = "auto"


class RouteDisagreement(ArithmeticError):
    """Two computation routes produced different values for the same M_k^N(n)."""

    def __init__(self, k: int, N: int, n: int, values: dict[str, Fraction]):
        self.k, self.N, self.n = k, N, n
        self.values = dict(values)
        shown = ", ".join(f"{name}={value}" for name, value in self.values.items())
        super().__init__(f"routes disagree for k={k}, N={N}, n={n}: {shown}")


@dataclass(frozen=True)
class HigherMBRequest:
    n: int
    N: int
    k: int
    method: Method = Method.AUTO

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method(self.method))
        if self.n < 1 or self.N < 1 or self.k < 0:
            raise ValueError("need n >= 1, N >= 1, k >= 0")
        if self.method is Method.PRIME_POWER and len(factorize(self.n)) != 1:
            raise ValueError(f"prime_power route needs n = p^s, got n = {self.n}")


@lru_cache(maxsize=None)
def mb_number(k: int, n: int) -> Fraction:
    """M_k(n) = B_k Π_{p|n} (1 - p^(k-1)); M_k(1) = B_k.

    At k = 0 this is φ(n)/n.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if n == 1:
        return bernoulli(k)
    if k == 0:
        return Fraction(totient(n), n)
    b = bernoulli(k)
    if not b:
        return b
    return b * prod(1 - p ** (k - 1) for p, _ in factorize(n))


def mb_number_series(k: int, n: int, order: int = DEFAULT_ORDER) -> Fraction:
    """M_k(n) read from the generating function truncated at ``order``."""
    if k > order:
        raise ValueError(f"order {order} is too small for coefficient {k}")
    return mb_gf(n, order).egf(k)


@dataclass(frozen=True)
class MBTable:
    n: int
    max_k: int
    values: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]


def mb_table(n: int, max_k: int) -> MBTable:
    return MBTable(n, max_k, tuple(mb_number(k, n) for k in range(max_k + 1)))


def mb_higher_conv(k: int, N: int, n: int) -> Fraction:
    """Σ over compositions (k_1..k_N) of k of mult(k; k_i) Π M_{k_i}(n)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    values = [mb_number(i, n) for i in range(k + 1)]
    total = Fraction(0)
    for parts in compositions(k, N):
        term = Fraction(1)
        for p in parts:
            term *= values[p]
            if not term:
                break
        if term:
            total += multinomial(k, parts) * term
    return total


def mb_higher_partition(k: int, N: int, n: int) -> Fraction:
    """M_k^N(n) by Faà di Bruno over partitions of k.

    For n > 1 every odd M_i(n) vanishes, so only partitions into even parts
    are enumerated (and odd k gives 0 outright).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if k == 0:
        return mb_number(0, n) ** N
    derivs = [mb_number(i, n) for i in range(k + 1)]
    return power_derivative_partition(derivs, N, k, even_only=n > 1)


def _binomial_convolve(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """EGF product: c_k = Σ_j C(k, j) a_j b_(k-j)."""
    out = []
    for k in range(len(a)):
        s = Fraction(0)
        for j in range(k + 1):
            if a[j] and b[k - j]:
                s += comb(k, j) * a[j] * b[k - j]
        out.append(s)
    return out


def mb_higher_primepower(k: int, N: int, p: int, s: int = 1) -> Fraction:
    """M_k^N(p^s) from higher-order Bernoulli numbers.

        Σ_{m=0}^{N} C(N,m) (-p)^(m-N) Σ_{j=0}^{k} C(k,j) B_j^(m) B_{k-j}^(N-m) p^(k-j)

    The exponent s never enters: only the radical of n matters.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("s must be >= 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    total = Fraction(0)
    for m in range(N + 1):
        inner = Fraction(0)
        for j in range(k + 1):
            a = higher_bernoulli(j, m)
            if not a:
                continue
            b = higher_bernoulli(k - j, N - m)
            if b:
                inner += comb(k, j) * a * b * p ** (k - j)
        if inner:
            total += comb(N, m) * inner / Fraction(-p) ** (N - m)
    return total


@lru_cache(maxsize=4096)
def _kernel_row(rad: int, N: int, k: int) -> tuple[Fraction, ...]:
    divs = squarefree_divisors(rad)
    total = [Fraction(0)] * (k + 1)
    for ms in compositions(N, len(divs)):
        weight = Fraction(multinomial(N, ms))
        row = [Fraction(1)] + [Fraction(0)] * k
        for d, m in zip(divs, ms):
            if not m:
                continue
            weight *= Fraction(moebius(d), d) ** m
            row = _binomial_convolve(row, [higher_bernoulli(j, m) * d**j for j in range(k + 1)])
        for i in range(k + 1):
            total[i] += weight * row[i]
    return tuple(total)


def mb_higher_kernel(k: int, N: int, n: int) -> Fraction:
    """M_k^N(n) expanded over the squarefree divisors d of n.

    Writing f_n(t) = Σ_d (μ(d)/d) g(d t) with g(t) = t/(e^t - 1) and raising
    to the N-th power gives

        Σ_{(m_d) ⊢ N} mult(N; m) Π_d (μ(d)/d)^(m_d)
            Σ_{(k_d) ⊢ k} mult(k; k_d) Π_d B_{k_d}^(m_d) d^(k_d),

    the inner composition sum being evaluated as iterated binomial
    convolution.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    # rows are built to a minimum length so a sweep over k reuses one row
    return _kernel_row(radical(n), N, max(k, CROSS_CHECK_MAX_K))[k]


def mb_higher(request: HigherMBRequest, cross_check_max_k: int = CROSS_CHECK_MAX_K) -> Fraction:
    """Dispatch a request to one route; ``auto`` cross-checks before answering.

    In auto mode the convolution value is returned, but for k up to
    ``cross_check_max_k`` it must first agree with the partition route, the
    kernel route (when n has at most three distinct primes) and the prime
    power route (when n is a prime power).  Disagreement raises
    :class:`RouteDisagreement`.
    """
    k, N, n = request.k, request.N, request.n
    method = request.method
    if method is Method.CONVOLUTION:
        return mb_higher_conv(k, N, n)
    if method is Method.PARTITION:
        return mb_higher_partition(k, N, n)
    if method is Method.KERNEL:
        return mb_higher_kernel(k, N, n)
    if method is Method.PRIME_POWER:
        ((p, s),) = factorize(n)
        return mb_higher_primepower(k, N, p, s)

    value = mb_higher_conv(k, N, n)
    if k > cross_check_max_k:
        return value
    values = {"conv": value, "partition": mb_higher_partition(k, N, n)}
    fac = factorize(n)
    if len(fac) <= KERNEL_CROSS_CHECK_MAX_PRIMES:
        values["kernel"] = mb_higher_kernel(k, N, n)
    if len(fac) == 1:
        p, s = fac[0]
        values["primepower"] = mb_higher_primepower(k, N, p, s)
    if any(v != value for v in values.values()):
        raise RouteDisagreement(k, N, n, values)
    return value


def table_convention_m2(N: int, n: int) -> Fraction:
    """M_2^N(n) in the printed-table convention N φ(n)^(N-1) M_2(n).

    Differs from the generating-function value N (φ(n)/n)^(N-1) M_2(n)
    whenever n > 1 and N > 1; kept only to report the discrepancy.
    """
    return N * Fraction(totient(n)) ** (N - 1) * mb_number(2, n)


def clear_caches() -> None:
    mb_number.cache_clear()
    _kernel_row.cache_clear()
