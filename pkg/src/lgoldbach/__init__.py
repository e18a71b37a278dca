"""Computational toolkit for the Liouville convolution sum
sum_{n<N} lambda(n) lambda(N-n) and the character-sum machinery around it."""

from .arith import (
    CapacityError,
    FactorView,
    ParityTable,
    SignFunction,
    build_parity_table,
    find_primitive_root,
    is_prime,
    jacobi_symbol,
    largest_prime_factor,
    liouville,
)
from .convolution import conv_scan, conv_sum_naive

__all__ = [
    "CapacityError",
    "FactorView",
    "ParityTable",
    "SignFunction",
    "build_parity_table",
    "conv_scan",
    "conv_sum_naive",
    "find_primitive_root",
    "is_prime",
    "jacobi_symbol",
    "largest_prime_factor",
    "liouville",
]
