"""Identifiability checks, exact recovery and counterexamples for admixture factorizations Pi = F Q."""

from ._core import (
    Error,
    are_equivalent,
    classify,
    convex_decompose,
    counterexample,
    generate_instance,
    has_unique_conic_decompositions,
    has_unique_decompositions,
    minimal_conic_generating_rows,
    minimal_generating_columns,
    read_matrix,
    recover,
    simulate_genotypes,
    write_matrix,
)

__all__ = [
    "Error",
    "are_equivalent",
    "classify",
    "convex_decompose",
    "counterexample",
    "generate_instance",
    "has_unique_conic_decompositions",
    "has_unique_decompositions",
    "minimal_conic_generating_rows",
    "minimal_generating_columns",
    "read_matrix",
    "recover",
    "simulate_genotypes",
    "write_matrix",
]
