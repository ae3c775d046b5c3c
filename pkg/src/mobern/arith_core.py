"""Integer arithmetic functions and combinatorial enumeration.

Everything here works on Python ints and :class:`fractions.Fraction`, so all
results are exact.  Divisors, partitions and compositions are the index sets
that the Möbius-Bernoulli formulas sum over.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Sequence

__all__ = [
    "MAX_N",
    "MAX_PARTITION_K",
    "Partition",
    "factorize",
    "moebius",
    "totient",
    "divisors",
    "squarefree_divisors",
    "radical",
    "is_prime",
    "binomial",
    "multinomial",
    "falling_factorial",
    "partitions",
    "compositions",
    "faa_di_bruno_terms",
    "power_derivative_partition",
]

MAX_N = 2**63 - 1
MAX_PARTITION_K = 64


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > MAX_N:
        raise ValueError(f"{n} exceeds the supported range 2**63-1")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with increasing p.

    Trial division; ``factorize(1) == ()``.

    >>> factorize(12)
    ((2, 2), (3, 1))
    """
    _check_positive(n)
    pairs = []
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            pairs.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            pairs.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        pairs.append((m, 1))
    return tuple(pairs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == ((n, 1),)


def moebius(n: int) -> int:
    """μ(n): 0 if a square divides n, else (-1)^(number of prime factors)."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    """Euler's φ(n), computed from the factorization."""
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    return prod(p for p, _ in factorize(n))


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n in ascending order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


@lru_cache(maxsize=4096)
def squarefree_divisors(n: int) -> tuple[int, ...]:
    """Divisors d of n with μ(d) != 0; there are 2**β of them for β primes."""
    divs = [1]
    for p, _ in factorize(n):
        divs = divs + [d * p for d in divs]
    return tuple(sorted(divs))


def binomial(a: int, b: int) -> int:
    """C(a, b) with the convention C(a, b) = 0 outside 0 <= b <= a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def multinomial(k: int, parts: Sequence[int]) -> int:
    """k! / prod(k_i!) for a composition ``parts`` of k."""
    if sum(parts) != k:
        raise ValueError(f"parts {tuple(parts)} do not sum to {k}")
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    result = 1
    remaining = k
    for p in parts:
        result *= comb(remaining, p)
        remaining -= p
    return result


def falling_factorial(n: int, j: int) -> int:
    """n (n-1) ... (n-j+1); zero once j exceeds a nonnegative n."""
    result = 1
    for i in range(j):
        result *= n - i
    return result


@dataclass(frozen=True)
class Partition:
    """A partition of ``sum(parts)``, parts stored in non-increasing order.

    ``multiplicity`` holds ``(value, count)`` pairs for each distinct part,
    i.e. the λ map of the Faà di Bruno formula, with values decreasing.
    """

    parts: tuple[int, ...]
    multiplicity: tuple[tuple[int, int], ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("partition parts must be non-increasing")
        counts = Counter(self.parts)
        object.__setattr__(
            self, "multiplicity", tuple(sorted(counts.items(), reverse=True))
        )

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicity_factorial(self) -> int:
        """prod of λ! over distinct part values (each value counted once)."""
        return prod(factorial(c) for _, c in self.multiplicity)

    def scaled(self, factor: int) -> Partition:
        return Partition(tuple(factor * p for p in self.parts))


def _partitions_bounded(k: int, largest: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions_bounded(k - first, first):
            yield (first,) + rest


@lru_cache(maxsize=128)
def partitions(k: int) -> tuple[Partition, ...]:
    """Every partition of k once, in decreasing-part lexicographic order.

    >>> [p.parts for p in partitions(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if k < 1:
        raise ValueError("partitions() needs k >= 1; the empty partition is the caller's j=0 case")
    if k > MAX_PARTITION_K:
        raise ValueError(f"partition enumeration is capped at k = {MAX_PARTITION_K}")
    return tuple(Partition(p) for p in _partitions_bounded(k, k))


def compositions(k: int, N: int) -> Iterator[tuple[int, ...]]:
    """All ordered N-tuples of nonnegative integers summing to k, lexicographic.

    There are C(k+N-1, N-1) of them.
    """
    if N < 1:
        raise ValueError("compositions need N >= 1")
    if k < 0:
        raise ValueError("compositions need k >= 0")
    if N == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in compositions(k - first, N - 1):
            yield (first,) + rest


@lru_cache(maxsize=256)
def faa_di_bruno_terms(k: int, even_only: bool = False) -> tuple[tuple[Partition, int], ...]:
    """Partitions of k paired with multinomial(k; parts) / prod λ!.

    The weight counts the set partitions of a k-set with the given block
    sizes, so it is always an integer.  With ``even_only`` only partitions
    into even parts are produced (none for odd k).
    """
    if even_only:
        if k % 2:
            return ()
        base = (p.scaled(2) for p in partitions(k // 2))
    else:
        base = iter(partitions(k))
    terms = []
    for part in base:
        num = multinomial(k, part.parts)
        den = part.multiplicity_factorial()
        assert num % den == 0
        terms.append((part, num // den))
    return tuple(terms)


def power_derivative_partition(
    derivs: Sequence[Fraction],
    N: int,
    k: int,
    *,
    even_only: bool = False,
) -> Fraction:
    """k-th derivative of f**N at 0 from the derivatives of f at 0.

    ``derivs[i]`` is f^(i)(0).  Uses the power form of Faà di Bruno:

        D^k f^N = Σ_j N!/(N-j)! f^(N-j) Σ_{|π|=j} mult(k; π) Π f^(k_i) / Π λ!

    Partitions with more than N parts drop out.  ``even_only`` restricts the
    sum to partitions into even parts, valid when every odd derivative of f
    vanishes.
    """
    if k < 1:
        raise ValueError("k must be >= 1; for k = 0 the value is f(0)**N")
    if N < 1:
        raise ValueError("N must be >= 1")
    if len(derivs) < k + 1:
        raise ValueError(f"need {k + 1} derivative values, got {len(derivs)}")
    f0 = Fraction(derivs[0])
    total = Fraction(0)
    for part, weight in faa_di_bruno_terms(k, even_only):
        j = len(part)
        if j > N:
            continue
        term = Fraction(weight * falling_factorial(N, j)) * f0 ** (N - j)
        for value, count in part.multiplicity:
            term *= Fraction(derivs[value]) ** count
        total += term
    return total
