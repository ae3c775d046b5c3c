"""Truncated formal power series in one variable over the rationals.

A :class:`TruncatedSeries` of order K stands for Σ_{k<=K} c_k t^k modulo
t^(K+1).  Coefficients are stored plainly (not divided by k!); use
:meth:`TruncatedSeries.egf` to read off exponential-generating-function
values.  Binary operations refuse operands of different orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

from .arith_core import divisors, moebius

__all__ = [
    "DEFAULT_ORDER",
    "OrderMismatchError",
    "TruncatedSeries",
    "add",
    "mul",
    "pow",
    "inverse",
    "exp_series",
    "expm1_over_t",
    "t_over_expm1",
    "mb_gf",
    "psi_gf",
    "psi_gf_direct",
    "psi_gf_factored",
]

DEFAULT_ORDER = 16

Scalar = Union[int, Fraction]


class OrderMismatchError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            if len(cs) > order + 1:
                raise ValueError(f"{len(cs)} coefficients do not fit order {order}")
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def variable(cls, order: int) -> TruncatedSeries:
        """The series t (just 0 at order 0)."""
        return cls([0, 1][: order + 1], order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs[k]

    def egf(self, k: int) -> Fraction:
        """k! times the coefficient of t^k."""
        if k > self.order:
            raise ValueError(f"coefficient {k} is beyond truncation order {self.order}")
        return self._coeffs[k] * factorial(k)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self._coeffs]})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"cannot combine a series with {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(a + b for a, b in zip(self._coeffs, other._coeffs))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(a - b for a, b in zip(self._coeffs, other._coeffs))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-a for a in self._coeffs)

    def scale(self, c: Scalar) -> TruncatedSeries:
        c = Fraction(c)
        return TruncatedSeries(c * a for a in self._coeffs)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        a, b = self._coeffs, other._coeffs
        K = self.order
        out = []
        for k in range(K + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return TruncatedSeries(out)

    def __pow__(self, N: int) -> TruncatedSeries:
        if N < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = TruncatedSeries.one(self.order)
        base = self
        while N:
            if N & 1:
                result = result * base
            N >>= 1
            if N:
                base = base * base
        return result

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse modulo t^(K+1); needs a nonzero constant term."""
        a = self._coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, self.order + 1):
            s = sum((a[i] * b[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            b.append(-s * inv0)
        return TruncatedSeries(b)

    def shift_down(self) -> TruncatedSeries:
        """(f(t) - f(0)) / t, which loses one order of precision."""
        if self.order == 0:
            raise ValueError("cannot divide an order-0 series by t")
        return TruncatedSeries(self._coeffs[1:])


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def pow(a: TruncatedSeries, N: int) -> TruncatedSeries:  # noqa: A001
    return a**N


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    return a.inverse()


def exp_series(a: Scalar, order: int) -> TruncatedSeries:
    """e^(a t)."""
    a = Fraction(a)
    return TruncatedSeries(a**k / factorial(k) for k in range(order + 1))


def expm1_over_t(d: Scalar, order: int) -> TruncatedSeries:
    """(e^(d t) - 1) / t, coefficients d^(k+1) / (k+1)!.

    ``d`` is normally a positive divisor, but any rational scale is accepted
    (x = 0 gives the zero series).
    """
    d = Fraction(d)
    return TruncatedSeries(d ** (k + 1) / factorial(k + 1) for k in range(order + 1))


def t_over_expm1(d: int, order: int) -> TruncatedSeries:
    """t / (e^(d t) - 1), whose k-th coefficient is B_k d^(k-1) / k!."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    return expm1_over_t(d, order).inverse()


def mb_gf(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Σ_{d|n} μ(d) t / (e^(t d) - 1), the Möbius-Bernoulli generating function."""
    total = TruncatedSeries.zero(order)
    for d in divisors(n):
        mu = moebius(d)
        if mu:
            total = total + t_over_expm1(d, order).scale(mu)
    return total


def psi_gf_direct(x: Scalar, n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Σ_{d|n} μ(d) (e^((1 + x/d) t d) - e^(t d)) / (e^(t d) - 1) built term by term.

    Numerator and denominator both vanish at t = 0, so each is divided by t
    before the quotient is formed.
    """
    x = Fraction(x)
    total = TruncatedSeries.zero(order)
    for d in divisors(n):
        mu = moebius(d)
        if not mu:
            continue
        # (e^((d+x)t) - e^(dt)) / t
        numer = TruncatedSeries(
            ((d + x) ** (k + 1) - Fraction(d) ** (k + 1)) / factorial(k + 1)
            for k in range(order + 1)
        )
        denom = expm1_over_t(d, order)
        total = total + (numer * denom.inverse()).scale(mu)
    return total


def psi_gf_factored(x: Scalar, n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """(t δ_{1n} + mb_gf(n)) · (e^(x t) - 1) / t."""
    head = mb_gf(n, order)
    if n == 1:
        head = head + TruncatedSeries.variable(order)
    return head * expm1_over_t(x, order)


def psi_gf(x: Scalar, n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Generating function of Ψ_k(x, n); k! c_k = Ψ_k(x, n).

    Both constructions are computed and must agree coefficientwise.
    """
    direct = psi_gf_direct(x, n, order)
    factored = psi_gf_factored(x, n, order)
    if direct != factored:
        raise ArithmeticError(f"psi_gf routes disagree for x={x}, n={n}")
    return direct
