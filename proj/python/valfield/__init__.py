"""Exact computer-algebra kernel for valued fields of characteristic p."""

from ._core import (
    HahnSeries,
    KernelError,
    LaurentSeries,
    as_decompose,
    build_tower,
    frobenius_parts,
    kernel,
    optimal_approx,
    parse_hahn,
    parse_series,
    pd_check,
    pd_holds_on_samples,
    preimage,
    prime_sequence,
    run_cli,
    telescope,
    valuation_independent,
    wp_solve,
)

__all__ = [
    "HahnSeries",
    "KernelError",
    "LaurentSeries",
    "as_decompose",
    "build_tower",
    "frobenius_parts",
    "kernel",
    "optimal_approx",
    "parse_hahn",
    "parse_series",
    "pd_check",
    "pd_holds_on_samples",
    "preimage",
    "prime_sequence",
    "run_cli",
    "telescope",
    "valuation_independent",
    "wp_solve",
]
