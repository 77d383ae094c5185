"""Exact polynomial arithmetic and graded linear algebra."""
from .linalg import NoSolution, as_fraction, matrix, nullspace, rank, rref, solve_particular, vector
from .poly import (
    Jet,
    Monomial,
    SparsePoly,
    compose_jet,
    fischer_ip,
    from_vector,
    gradient,
    grlex_key,
    monomial_basis,
    monomial_index,
    poly_from_terms,
    substitute,
    to_vector,
    variables,
)
from .subspace import (
    GradedSubspace,
    image_subspace,
    intersect_subspaces,
    kernel_subspace,
    sum_subspaces,
)

__all__ = [
    "GradedSubspace",
    "Jet",
    "Monomial",
    "NoSolution",
    "SparsePoly",
    "as_fraction",
    "compose_jet",
    "fischer_ip",
    "from_vector",
    "gradient",
    "grlex_key",
    "image_subspace",
    "intersect_subspaces",
    "kernel_subspace",
    "matrix",
    "monomial_basis",
    "monomial_index",
    "nullspace",
    "poly_from_terms",
    "rank",
    "rref",
    "solve_particular",
    "substitute",
    "sum_subspaces",
    "to_vector",
    "variables",
    "vector",
]
