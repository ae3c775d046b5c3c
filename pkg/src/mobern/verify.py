"""Property sweeps behind ``mobern verify``.

Each :class:`Property` is a named grid of parameter cells and a module-level
check function.  A check returns ``None`` when the cell holds and a dict of
the disagreeing values otherwise.  Checks are plain functions so a process
pool can run them; results are always assembled in grid order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Any, Callable, Iterable, Sequence

from . import arith_core as ac
from .bernoulli import (
    bernoulli,
    bernoulli_explicit,
    higher_bernoulli,
    higher_bernoulli_conv,
    stirling2,
    stirling_identity_check,
)
from .moebius_bernoulli import (
    mb_higher_conv,
    mb_higher_kernel,
    mb_higher_partition,
    mb_higher_primepower,
    mb_number,
    table_convention_m2,
)
from .powersums import (
    Polynomial,
    derivative_identity_check,
    psi_brute,
    psi_eval,
    psi_moebius,
    psi_poly,
    psi_products_brute,
    psi_products_conv,
    psi_products_poly,
)
from .series import TruncatedSeries, mb_gf, psi_gf, psi_gf_direct, psi_gf_factored, t_over_expm1

__all__ = [
    "SUITES",
    "Bounds",
    "Property",
    "Outcome",
    "build_properties",
    "run_properties",
    "erratum_record",
    "m8_grouped_coefficients",
]

SUITES = ("arith", "series", "bernoulli", "mb", "psi")

CAPS = {"max_n": 200, "max_k": 20, "max_N": 8, "order": 40}


@dataclass(frozen=True)
class Bounds:
    """Sweep limits; ``None`` keeps each property's own default range."""

    max_n: int | None = None
    max_k: int | None = None
    max_N: int | None = None
    order: int | None = None

    def __post_init__(self) -> None:
        for name, cap in CAPS.items():
            value = getattr(self, name)
            if value is not None and not 1 <= value <= cap:
                raise ValueError(f"{name} must be in [1, {cap}], got {value}")

    def n(self, default: int) -> int:
        return self.max_n if self.max_n is not None else default

    def k(self, default: int) -> int:
        return self.max_k if self.max_k is not None else default

    def N(self, default: int) -> int:
        return self.max_N if self.max_N is not None else default

    def K(self, default: int) -> int:
        return self.order if self.order is not None else default


@dataclass
class Property:
    name: str
    suite: str
    check: Callable[[tuple], dict | None]
    cells: list[tuple]
    params: Sequence[str]


@dataclass
class Outcome:
    name: str
    suite: str
    cells: int
    failures: int
    counterexample: dict | None = field(default=None)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _s(value: Any) -> str:
    if isinstance(value, Polynomial):
        return "[" + ", ".join(str(c) for c in value.coeffs) + "]"
    if isinstance(value, TruncatedSeries):
        return "[" + ", ".join(str(c) for c in value.coeffs) + "]"
    return str(value)


def _diff(**values: Any) -> dict:
    return {name: _s(v) for name, v in values.items()}


# ---------------------------------------------------------------- arith


def _chk_kronecker(cell: tuple) -> dict | None:
    (n,) = cell
    s = sum(ac.moebius(d) for d in ac.divisors(n))
    return None if s == (1 if n == 1 else 0) else _diff(sum_mu=s)


def _chk_mu_over_d(cell: tuple) -> dict | None:
    (n,) = cell
    lhs = sum((Fraction(ac.moebius(d), d) for d in ac.divisors(n)), Fraction(0))
    rhs = Fraction(ac.totient(n), n)
    return None if lhs == rhs else _diff(sum_mu_over_d=lhs, totient_ratio=rhs)


def _chk_totient(cell: tuple) -> dict | None:
    (n,) = cell
    phi = ac.totient(n)
    brute = sum(1 for m in range(1, n + 1) if gcd(m, n) == 1)
    product = Fraction(n)
    for p, _ in ac.factorize(n):
        product *= 1 - Fraction(1, p)
    ok = phi == brute == product
    return None if ok else _diff(totient=phi, brute=brute, product=product)


def _chk_factorize(cell: tuple) -> dict | None:
    (n,) = cell
    fac = ac.factorize(n)
    rebuilt = 1
    for p, e in fac:
        rebuilt *= p**e
    primes_ok = all(all(p % q for q in range(2, int(p**0.5) + 1)) for p, _ in fac)
    increasing = all(a[0] < b[0] for a, b in zip(fac, fac[1:]))
    ok = rebuilt == n and primes_ok and increasing
    return None if ok else _diff(factorization=fac)


def _partition_counts(limit: int) -> list[int]:
    # Euler's pentagonal number recurrence
    p = [1] + [0] * limit
    for m in range(1, limit + 1):
        total, i = 0, 1
        while True:
            g1 = i * (3 * i - 1) // 2
            g2 = i * (3 * i + 1) // 2
            if g1 > m:
                break
            sign = 1 if i % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            i += 1
        p[m] = total
    return p


def _chk_partition_count(cell: tuple) -> dict | None:
    (k,) = cell
    got = len(ac.partitions(k))
    want = _partition_counts(k)[k]
    return None if got == want else _diff(enumerated=got, pentagonal=want)


def _chk_power_derivative(cell: tuple) -> dict | None:
    k, N, seed = cell
    rng = random.Random(seed)
    derivs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(k + 1)]
    series = TruncatedSeries((d / factorial(i) for i, d in enumerate(derivs)), k)
    want = (series**N).egf(k)
    got = ac.power_derivative_partition(derivs, N, k)
    return None if got == want else _diff(derivs=derivs, partition=got, series=want)


# ---------------------------------------------------------------- series


def _random_series(rng: random.Random, order: int, unit: bool = False) -> TruncatedSeries:
    cs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(order + 1)]
    if unit and cs[0] == 0:
        cs[0] = Fraction(1)
    return TruncatedSeries(cs)


def _chk_ring_laws(cell: tuple) -> dict | None:
    order, seed = cell
    rng = random.Random(seed)
    a, b, c = (_random_series(rng, order) for _ in range(3))
    u = _random_series(rng, order, unit=True)
    one = TruncatedSeries.one(order)
    problems = {}
    if a * b != b * a:
        problems["commutative"] = "no"
    if (a * b) * c != a * (b * c):
        problems["associative"] = "no"
    if u * u.inverse() != one:
        problems["inverse"] = _s(u)
    if u.inverse().inverse() != u:
        problems["involution"] = _s(u)
    return problems or None


def _chk_mb_gf_odd(cell: tuple) -> dict | None:
    n, order = cell
    f = mb_gf(n, order)
    bad = [k for k in range(1, order + 1, 2) if f[k]]
    return None if not bad else _diff(nonzero_odd_indices=bad)


def _chk_psi_gf_routes(cell: tuple) -> dict | None:
    n, x, order = cell
    a = psi_gf_direct(x, n, order)
    b = psi_gf_factored(x, n, order)
    return None if a == b else _diff(direct=a, factored=b)


def _chk_mb_gf_closed_form(cell: tuple) -> dict | None:
    n, order, max_k = cell
    f = mb_gf(n, order)
    for k in range(max_k + 1):
        if f.egf(k) != mb_number(k, n):
            return _diff(k=k, series=f.egf(k), closed_form=mb_number(k, n))
    return None


# ---------------------------------------------------------------- bernoulli


def _chk_bernoulli_odd(cell: tuple) -> dict | None:
    (k,) = cell
    b = bernoulli(2 * k + 1)
    return None if b == 0 else _diff(value=b)


def _chk_bernoulli_explicit(cell: tuple) -> dict | None:
    (k,) = cell
    a, b = bernoulli(k), bernoulli_explicit(k)
    return None if a == b else _diff(recurrence=a, explicit=b)


def _chk_bernoulli_series(cell: tuple) -> dict | None:
    (order,) = cell
    f = t_over_expm1(1, order)
    for k in range(order + 1):
        if f.egf(k) != bernoulli(k):
            return _diff(k=k, series=f.egf(k), recurrence=bernoulli(k))
    return None


def _chk_higher_bernoulli(cell: tuple) -> dict | None:
    j, m = cell
    a, b = higher_bernoulli(j, m), higher_bernoulli_conv(j, m)
    return None if a == b else _diff(closed_form=a, series=b)


def _bell_numbers(limit: int) -> list[int]:
    # Bell triangle
    bells = [1]
    row = [1]
    for _ in range(limit):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
        bells.append(row[0])
    return bells


def _chk_stirling_rows(cell: tuple) -> dict | None:
    (ell,) = cell
    got = sum(stirling2(ell, m) for m in range(ell + 1))
    want = _bell_numbers(ell)[ell]
    return None if got == want else _diff(row_sum=got, bell=want)


def _chk_stirling_identity(cell: tuple) -> dict | None:
    x, N, order = cell
    return None if stirling_identity_check(x, N, order) else _diff(x=x, N=N)


# ---------------------------------------------------------------- mb


def _prime_power(n: int) -> tuple[int, int] | None:
    fac = ac.factorize(n)
    return fac[0] if len(fac) == 1 else None


def _chk_four_routes(cell: tuple) -> dict | None:
    n, N, k = cell
    values = {
        "conv": mb_higher_conv(k, N, n),
        "partition": mb_higher_partition(k, N, n),
        "kernel": mb_higher_kernel(k, N, n),
    }
    pp = _prime_power(n)
    if pp:
        values["primepower"] = mb_higher_primepower(k, N, *pp)
    if len(set(values.values())) == 1:
        return None
    return _diff(**values)


def _chk_odd_vanishing(cell: tuple) -> dict | None:
    n, N, k = cell
    odd = 2 * k - 1
    values = {
        "conv": mb_higher_conv(odd, N, n),
        "partition": mb_higher_partition(odd, N, n),
        "kernel": mb_higher_kernel(odd, N, n),
    }
    pp = _prime_power(n)
    if pp:
        values["primepower"] = mb_higher_primepower(odd, N, *pp)
    if all(v == 0 for v in values.values()):
        return None
    return _diff(**values)


def _chk_mb_series_power(cell: tuple) -> dict | None:
    n, N, order, max_k = cell
    f = mb_gf(n, order) ** N
    for k in range(max_k + 1):
        if f.egf(k) != mb_higher_conv(k, N, n):
            return _diff(k=k, series=f.egf(k), conv=mb_higher_conv(k, N, n))
    return None


def _chk_table_rows(cell: tuple) -> dict | None:
    n, N = cell
    m0 = Fraction(ac.totient(n), n)
    want0 = m0**N
    want2 = N * m0 ** (N - 1) * mb_number(2, n)
    got0, got2 = mb_higher_conv(0, N, n), mb_higher_conv(2, N, n)
    if got0 == want0 and got2 == want2:
        return None
    return _diff(M0N=got0, expected_M0N=want0, M2N=got2, expected_M2N=want2)


def _chk_radical(cell: tuple) -> dict | None:
    n, N, max_k = cell
    r = ac.radical(n)
    for k in range(max_k + 1):
        a, b = mb_higher_conv(k, N, n), mb_higher_conv(k, N, r)
        if a != b:
            return _diff(k=k, value=a, radical_value=b)
    return None


def m8_grouped_coefficients() -> dict[tuple[int, ...], int]:
    """Grouped partition coefficients of M_8^N over partitions with >= 2 parts."""
    return {
        part.parts: weight
        for part, weight in ac.faa_di_bruno_terms(8, even_only=True)
        if len(part) > 1
    }


def _chk_m8_example(cell: tuple) -> dict | None:
    want = {(6, 2): 28, (4, 4): 35, (4, 2, 2): 210, (2, 2, 2, 2): 105}
    got = m8_grouped_coefficients()
    return None if got == want else _diff(coefficients=got)


# ---------------------------------------------------------------- psi


def _chk_psi_anchor(cell: tuple) -> dict | None:
    n, k = cell
    a, b = psi_eval(k, n, n), psi_brute(k, n)
    return None if a == b else _diff(closed_form=a, brute=b)


def _chk_psi_moebius(cell: tuple) -> dict | None:
    n, k, x = cell
    a, b = psi_eval(k, n, x), psi_moebius(k, n, x)
    return None if a == b else _diff(closed_form=a, divisor_sum=b)


def _chk_theorem_vs_definition(cell: tuple) -> dict | None:
    n, N, k = cell
    a, b = psi_products_poly(k, N, n), psi_products_conv(k, N, n)
    return None if a == b else _diff(theorem=a, convolution=b)


def _chk_integer_anchor(cell: tuple) -> dict | None:
    n, N, k = cell
    a, b = psi_products_conv(k, N, n)(n), psi_products_brute(k, N, n)
    return None if a == b else _diff(convolution=a, brute=b)


def _chk_psi_shape(cell: tuple) -> dict | None:
    n, k = cell
    p = psi_poly(k, n)
    lead = Fraction(ac.totient(n), n) / (k + 1)
    if p[0] == 0 and p.degree == k + 1 and p.leading == lead:
        return None
    return _diff(poly=p, expected_leading=lead)


def _chk_psiprod_shape(cell: tuple) -> dict | None:
    n, N, k = cell
    p = psi_products_conv(k, N, n)
    ok = p[0] == 0 and p.degree == k + N
    if n > 1:
        lead = Fraction(ac.totient(n), n) ** N * Fraction(
            factorial(k) * factorial(N) * stirling2(k + N, N), factorial(k + N)
        )
        ok = ok and p.leading == lead
    return None if ok else _diff(poly=p)


def _chk_n1_reduction(cell: tuple) -> dict | None:
    n, k = cell
    a, b = psi_products_poly(k, 1, n), psi_poly(k, n)
    return None if a == b else _diff(theorem=a, psi=b)


def _chk_derivative_identity(cell: tuple) -> dict | None:
    n, k = cell
    if derivative_identity_check(k, n):
        return None
    return _diff(derivative_identity_check=False, derivative=psi_poly(k, n).derivative())


def _chk_psi_series(cell: tuple) -> dict | None:
    n, x, N, order, max_k = cell
    f = psi_gf(x, n, order) ** N
    for k in range(max_k + 1):
        want = psi_products_conv(k, N, n)(x)
        if f.egf(k) != want:
            return _diff(k=k, series=f.egf(k), convolution=want)
    return None


# ---------------------------------------------------------------- registry


def _grid(*axes: Iterable) -> list[tuple]:
    cells: list[tuple] = [()]
    for axis in axes:
        cells = [c + (v,) for c in cells for v in axis]
    return cells


def build_properties(suite: str = "all", bounds: Bounds | None = None) -> list[Property]:
    """The properties of one suite (or all of them) at the given bounds."""
    b = bounds or Bounds()
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    r = range
    K = b.K(16)
    xs = (Fraction(1), Fraction(5, 2))
    props = [
        Property("kronecker_delta", "arith", _chk_kronecker, _grid(r(1, b.n(200) + 1)), ["n"]),
        Property("mu_over_d_is_totient_ratio", "arith", _chk_mu_over_d, _grid(r(1, b.n(200) + 1)), ["n"]),
        Property("totient_product_formula", "arith", _chk_totient, _grid(r(1, b.n(200) + 1)), ["n"]),
        Property("factorization_reconstructs", "arith", _chk_factorize, _grid(r(1, b.n(200) + 1)), ["n"]),
        Property("partition_count", "arith", _chk_partition_count, _grid(r(1, b.k(30) + 1)), ["k"]),
        Property(
            "power_derivative_partition_vs_series", "arith", _chk_power_derivative,
            _grid(r(1, min(b.k(8), 8) + 1), r(1, b.N(5) + 1), r(3)), ["k", "N", "seed"],
        ),
        Property("ring_laws", "series", _chk_ring_laws, _grid([min(K, 10)], r(20)), ["order", "seed"]),
        Property("mb_gf_odd_vanishing", "series", _chk_mb_gf_odd, _grid(r(2, b.n(30) + 1), [K]), ["n", "order"]),
        Property(
            "psi_gf_routes_agree", "series", _chk_psi_gf_routes,
            _grid(r(2, min(b.n(12), 12) + 1), (Fraction(1), Fraction(5, 2), Fraction(7)), [K]),
            ["n", "x", "order"],
        ),
        Property(
            "mb_gf_matches_closed_form", "series", _chk_mb_gf_closed_form,
            _grid(r(1, min(b.n(12), 12) + 1), [K], [min(b.k(10), K)]), ["n", "order", "max_k"],
        ),
        Property("bernoulli_odd_vanishing", "bernoulli", _chk_bernoulli_odd, _grid(r(1, 11)), ["k"]),
        Property("bernoulli_explicit_formula", "bernoulli", _chk_bernoulli_explicit, _grid(r(0, 21)), ["k"]),
        Property("bernoulli_series", "bernoulli", _chk_bernoulli_series, _grid([K]), ["order"]),
        Property(
            "higher_bernoulli_closed_form", "bernoulli", _chk_higher_bernoulli,
            _grid(r(0, 13), r(0, 7)), ["j", "m"],
        ),
        Property("stirling_row_sums", "bernoulli", _chk_stirling_rows, _grid(r(0, 13)), ["ell"]),
        Property(
            "stirling_identity_check", "bernoulli", _chk_stirling_identity,
            _grid((Fraction(1), Fraction(5, 2), Fraction(0), Fraction(-3)), r(1, 5), [10]),
            ["x", "N", "order"],
        ),
        Property(
            "four_route_agreement", "mb", _chk_four_routes,
            _grid(r(2, b.n(30) + 1), r(1, b.N(5) + 1), r(0, b.k(10) + 1)), ["n", "N", "k"],
        ),
        Property(
            "odd_vanishing", "mb", _chk_odd_vanishing,
            _grid(r(2, b.n(30) + 1), r(1, b.N(5) + 1), r(1, 6)), ["n", "N", "k"],
        ),
        Property(
            "mb_series_power", "mb", _chk_mb_series_power,
            _grid(r(1, min(b.n(12), 12) + 1), r(1, min(b.N(4), 4) + 1), [K], [min(b.k(10), K)]),
            ["n", "N", "order", "max_k"],
        ),
        Property(
            "table_rows_corrected", "mb", _chk_table_rows,
            _grid(r(2, b.n(30) + 1), r(1, b.N(5) + 1)), ["n", "N"],
        ),
        Property(
            "radical_invariance", "mb", _chk_radical,
            _grid(r(1, 101), r(1, 4), [min(b.k(10), 10)]), ["n", "N", "max_k"],
        ),
        Property("m8_worked_example", "mb", _chk_m8_example, [()], []),
        Property(
            "coprime_power_sum_anchor", "psi", _chk_psi_anchor,
            _grid(r(2, 51), r(0, min(b.k(8), 8) + 1)), ["n", "k"],
        ),
        Property(
            "divisor_sum_form", "psi", _chk_psi_moebius,
            _grid(r(1, 31), r(0, 9), (Fraction(5, 2), Fraction(30))), ["n", "k", "x"],
        ),
        Property(
            "theorem_vs_definition", "psi", _chk_theorem_vs_definition,
            _grid(r(2, 21), r(1, min(b.N(4), 4) + 1), r(0, min(b.k(6), 6) + 1)), ["n", "N", "k"],
        ),
        Property(
            "integer_anchor", "psi", _chk_integer_anchor,
            _grid(r(2, 13), r(1, 4), r(0, min(b.k(6), 6) + 1)), ["n", "N", "k"],
        ),
        Property("psi_shape", "psi", _chk_psi_shape, _grid(r(2, b.n(30) + 1), r(0, b.k(10) + 1)), ["n", "k"]),
        Property(
            "psi_products_shape", "psi", _chk_psiprod_shape,
            _grid(r(1, 13), r(1, 4), r(0, 7)), ["n", "N", "k"],
        ),
        Property("n1_reduction", "psi", _chk_n1_reduction, _grid(r(2, b.n(30) + 1), r(0, b.k(10) + 1)), ["n", "k"]),
        Property(
            "derivative_identity_check", "psi", _chk_derivative_identity,
            _grid(r(1, b.n(30) + 1), r(1, b.k(10) + 1)), ["n", "k"],
        ),
        Property(
            "psi_series_power", "psi", _chk_psi_series,
            _grid(r(1, min(b.n(12), 12) + 1), xs, r(1, min(b.N(4), 4) + 1), [K], [min(b.k(10), K)]),
            ["n", "x", "N", "order", "max_k"],
        ),
    ]
    if suite == "all":
        return props
    return [p for p in props if p.suite == suite]


def _run_cell(check: Callable[[tuple], dict | None], cell: tuple) -> dict | None:
    # a route disagreement or any other error counts as a failed cell
    try:
        return check(cell)
    except Exception as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}


def _evaluate(prop: Property, executor: ProcessPoolExecutor | None) -> Outcome:
    if executor is None:
        results = [_run_cell(prop.check, cell) for cell in prop.cells]
    else:
        chunk = max(1, len(prop.cells) // 32)
        checks = [prop.check] * len(prop.cells)
        results = list(executor.map(_run_cell, checks, prop.cells, chunksize=chunk))
    failures = [(cell, res) for cell, res in zip(prop.cells, results) if res is not None]
    counterexample = None
    if failures:
        cell, res = failures[0]
        counterexample = {
            "params": {name: _s(v) for name, v in zip(prop.params, cell)},
            "values": res,
        }
    return Outcome(prop.name, prop.suite, len(prop.cells), len(failures), counterexample)


def run_properties(props: Sequence[Property], jobs: int = 1) -> list[Outcome]:
    if jobs <= 1:
        return [_evaluate(p, None) for p in props]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return [_evaluate(p, pool) for p in props]


def erratum_record(n: int = 6, N: int = 2) -> dict[str, Any]:
    """M_2^N(n) under the generating-function and printed-table conventions."""
    gf_value = mb_higher_conv(2, N, n)
    table_value = table_convention_m2(N, n)
    return {
        "n": n,
        "N": N,
        "k": 2,
        "generating_function_value": gf_value,
        "table_convention_value": table_value,
        "ratio": table_value / gf_value,
    }
