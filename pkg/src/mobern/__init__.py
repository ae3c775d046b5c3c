"""Exact Möbius-Bernoulli numbers and coprime power sums."""

from .arith_core import (
    Partition,
    binomial,
    compositions,
    divisors,
    factorize,
    moebius,
    multinomial,
    partitions,
    power_derivative_partition,
    squarefree_divisors,
    totient,
)
from .bernoulli import (
    bernoulli,
    bernoulli_explicit,
    higher_bernoulli,
    higher_bernoulli_conv,
    stirling2,
    stirling_identity_check,
)
from .moebius_bernoulli import (
    HigherMBRequest,
    Method,
    RouteDisagreement,
    mb_higher,
    mb_higher_conv,
    mb_higher_kernel,
    mb_higher_partition,
    mb_higher_primepower,
    mb_number,
    mb_number_series,
)
from .powersums import (
    Polynomial,
    derivative_identity_check,
    faulhaber_poly,
    psi_brute,
    psi_eval,
    psi_poly,
    psi_products_brute,
    psi_products_conv,
    psi_products_poly,
)
from .series import TruncatedSeries, mb_gf, psi_gf

__version__ = "0.1.0"

__all__ = [
    "Partition",
    "binomial",
    "compositions",
    "divisors",
    "factorize",
    "moebius",
    "multinomial",
    "partitions",
    "power_derivative_partition",
    "squarefree_divisors",
    "totient",
    "bernoulli",
    "bernoulli_explicit",
    "higher_bernoulli",
    "higher_bernoulli_conv",
    "stirling2",
    "stirling_identity_check",
    "HigherMBRequest",
    "Method",
    "RouteDisagreement",
    "mb_higher",
    "mb_higher_conv",
    "mb_higher_kernel",
    "mb_higher_partition",
    "mb_higher_primepower",
    "mb_number",
    "mb_number_series",
    "Polynomial",
    "derivative_identity_check",
    "faulhaber_poly",
    "psi_brute",
    "psi_eval",
    "psi_poly",
    "psi_products_brute",
    "psi_products_conv",
    "psi_products_poly",
    "TruncatedSeries",
    "mb_gf",
    "psi_gf",
    "clear_caches",
]


def clear_caches() -> None:
    """Reset every memo table in the package."""
    from . import arith_core
    from .bernoulli import clear_caches as clear_bernoulli
    from .moebius_bernoulli import clear_caches as clear_mb

    clear_bernoulli()
    clear_mb()
    for fn in (
        arith_core.factorize,
        arith_core.divisors,
        arith_core.squarefree_divisors,
        arith_core.partitions,
        arith_core.faa_di_bruno_terms,
    ):
        fn.cache_clear()
