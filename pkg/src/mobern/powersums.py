"""Power-sum polynomials: Faulhaber S_k(x), Ψ_k(x, n) and their products.

Ψ_k(x, n) is the polynomial whose value at x = n is the sum of the k-th
powers of the integers in [1, n) coprime to n.  Ψ_k^N(x, n) is the
multinomial convolution of N copies of the Ψ sequence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial, gcd
from typing import Iterable, Union

from .arith_core import compositions, divisors, factorize, moebius, multinomial
from .bernoulli import bernoulli, stirling2
from .moebius_bernoulli import HigherMBRequest, mb_higher, mb_number

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "Polynomial",
    "bernoulli_poly",
    "faulhaber_poly",
    "psi_poly",
    "psi_eval",
    "psi_moebius",
    "psi_brute",
    "psi_products_poly",
    "psi_products_conv",
    "psi_products_brute",
    "derivative_identity_check",
]

BRUTE_FORCE_LIMIT = 10**6

Scalar = Union[int, Fraction]


class Polynomial:
    """Univariate polynomial over Q; ``coeffs[i]`` multiplies x**i."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> Polynomial:
        return cls([0] * power + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if not c:
                continue
            x = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not x:
                terms.append(str(c))
            elif c == 1:
                terms.append(x)
            elif c == -1:
                terms.append(f"-{x}")
            else:
                terms.append(f"({c})*{x}")
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: Polynomial) -> Polynomial:
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self[i] - other[i] for i in range(n))

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self._coeffs)

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self._coeffs) if i)

    def shift(self, a: Scalar) -> Polynomial:
        """The polynomial p(x + a)."""
        a = Fraction(a)
        out = [Fraction(0)] * len(self._coeffs)
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            for j in range(i + 1):
                out[j] += c * comb(i, j) * a ** (i - j)
        return Polynomial(out)


def bernoulli_poly(m: int) -> Polynomial:
    """B_m(x) = Σ_i C(m, i) B_i x^(m-i)."""
    return Polynomial(comb(m, m - p) * bernoulli(m - p) for p in range(m + 1))


def faulhaber_poly(k: int) -> Polynomial:
    """S_k(x) = (B_{k+1}(x+1) - B_{k+1}(1)) / (k+1).

    S_k(m) = 1^k + ... + m^k for every positive integer m.  The constant is
    B_{k+1}(1) rather than B_{k+1}(0): the two agree except at k = 0, where
    B_1(0) = -1/2 would give S_0(x) = x + 1.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    shifted = bernoulli_poly(k + 1).shift(1)
    return (shifted - Polynomial([shifted(0)])) * Fraction(1, k + 1)


def psi_poly(k: int, n: int) -> Polynomial:
    """Ψ_k(x, n) as a polynomial in x.

    For n >= 2:

        Ψ_k(x, n) = 1/(k+1) Σ_{m<=k/2} C(k+1, 2m) B_{2m} x^(k+1-2m) Π_{p|n} (1 - p^(2m-1))

    For n = 1 the even-index sum misses the B_1 term, so S_k(x) is returned.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return faulhaber_poly(k)
    primes = [p for p, _ in factorize(n)]
    coeffs = [Fraction(0)] * (k + 2)
    for m in range(k // 2 + 1):
        factor = Fraction(1)
        for p in primes:
            factor *= 1 - Fraction(p) ** (2 * m - 1)
        coeffs[k + 1 - 2 * m] = Fraction(comb(k + 1, 2 * m), k + 1) * bernoulli(2 * m) * factor
    return Polynomial(coeffs)


def psi_eval(k: int, n: int, x: Scalar) -> Fraction:
    return psi_poly(k, n)(x)


def psi_moebius(k: int, n: int, x: Scalar) -> Fraction:
    """Σ_{d|n} μ(d) d^k S_k(x/d), the divisor-sum form of Ψ_k(x, n)."""
    S = faulhaber_poly(k)
    x = Fraction(x)
    return sum(
        (moebius(d) * Fraction(d) ** k * S(x / d) for d in divisors(n) if moebius(d)),
        Fraction(0),
    )


def psi_brute(k: int, n: int) -> int:
    """Σ m^k over 1 <= m < n with gcd(m, n) = 1, by enumeration."""
    if n < 2:
        raise ValueError("psi_brute needs n >= 2")
    return sum(m**k for m in range(1, n) if gcd(m, n) == 1)


def psi_products_poly(k: int, N: int, n: int) -> Polynomial:
    """Ψ_k^N(x, n) from the Stirling-number closed form (n >= 2).

        k! N!/(k+N)! Σ_{j<=k} C(k+N, j) M_j^N(n) S(k+N-j, N) x^(k+N-j)

    M_j^N(n) comes from the cross-checked ``auto`` route.
    """
    if n < 2:
        raise ValueError("the closed form holds for n >= 2; use psi_products_conv for n = 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    lead = Fraction(factorial(k) * factorial(N), factorial(k + N))
    coeffs = [Fraction(0)] * (k + N + 1)
    for j in range(k + 1):
        m = mb_higher(HigherMBRequest(n=n, N=N, k=j))
        if m:
            coeffs[k + N - j] = lead * comb(k + N, j) * m * stirling2(k + N - j, N)
    return Polynomial(coeffs)


def psi_products_conv(k: int, N: int, n: int) -> Polynomial:
    """Σ over compositions of k into N parts of mult(k; k_i) Π Ψ_{k_i}(x, n)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    polys = [psi_poly(i, n) for i in range(k + 1)]
    total = Polynomial()
    for parts in compositions(k, N):
        term = Polynomial([multinomial(k, parts)])
        for p in parts:
            term = term * polys[p]
        total = total + term
    return total


def psi_products_brute(k: int, N: int, n: int, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Σ (m_1 + ... + m_N)^k over N-tuples of residues in [1, n) coprime to n.

    This is Ψ_k^N(n, n): at x = n the Ψ generating function is
    Σ_{coprime m < n} e^(m t).
    """
    if n < 2:
        raise ValueError("psi_products_brute needs n >= 2")
    if N < 1:
        raise ValueError("N must be >= 1")
    units = [m for m in range(1, n) if gcd(m, n) == 1]
    if len(units) ** N > limit:
        raise ValueError(f"{len(units)}^{N} tuples exceed the brute-force limit {limit}")
    return sum(sum(t) ** k for t in product(units, repeat=N))


def derivative_identity_check(k: int, n: int) -> bool:
    """d/dx Ψ_k(x, n) == k Ψ_{k-1}(x, n) + (-1)^k M_k(n), as polynomials."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = psi_poly(k, n).derivative()
    rhs = psi_poly(k - 1, n) * k + Polynomial([(-1) ** k * mb_number(k, n)])
    return lhs == rhs

