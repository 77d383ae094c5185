"""Subspaces of homogeneous polynomials, stored canonically as RREF row spaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionMismatch
from . import linalg
from .poly import SparsePoly, from_vector, monomial_basis, to_vector


@dataclass(frozen=True)
class GradedSubspace:
    """Subspace of the degree-``degree`` polynomials in ``num_vars`` variables.

    ``basis_rows`` is in reduced row-echelon form over the graded-lex monomial
    basis, so equal subspaces have identical fields.
    """

    degree: int
    num_vars: int
    basis_rows: linalg.Matrix

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], num_vars: int, degree: int) -> "GradedSubspace":
        n = len(monomial_basis(num_vars, degree))
        rows = [tuple(linalg.as_fraction(x) for x in r) for r in rows]
        if any(len(r) != n for r in rows):
            raise DimensionMismatch(f"rows must have length {n}")
        red, _ = linalg.rref(rows, n)
        return cls(degree, num_vars, red)

    @classmethod
    def span(cls, polys: Iterable[SparsePoly], num_vars: int, degree: int) -> "GradedSubspace":
        return cls.from_rows([to_vector(p, degree) for p in polys], num_vars, degree)

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "GradedSubspace":
        return cls(degree, num_vars, ())

    @classmethod
    def full(cls, num_vars: int, degree: int) -> "GradedSubspace":
        return cls(degree, num_vars, linalg.identity(len(monomial_basis(num_vars, degree))))

    @property
    def ambient_dim(self) -> int:
        return len(monomial_basis(self.num_vars, self.degree))

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.basis_rows)

    def basis(self) -> list[SparsePoly]:
        return [from_vector(r, self.num_vars, self.degree) for r in self.basis_rows]

    def contains(self, p: SparsePoly) -> bool:
        v = to_vector(p, self.degree)
        return linalg.rank(self.basis_rows + (v,)) == self.dim

    def contains_subspace(self, other: "GradedSubspace") -> bool:
        _check_compatible(self, other)
        return linalg.rank(self.basis_rows + other.basis_rows) == self.dim

    def coordinates(self, p: SparsePoly) -> tuple[Fraction, ...]:
        """Coefficients of ``p`` on ``basis_rows``; raises if ``p`` is outside."""
        v = to_vector(p, self.degree)
        coords = tuple(v[j] for j in self.pivots)
        recon = [sum((c * r[i] for c, r in zip(coords, self.basis_rows)), Fraction(0))
                 for i in range(self.ambient_dim)]
        if tuple(recon) != v:
            raise ValueError("polynomial is not in the subspace")
        return coords


def _check_compatible(a: GradedSubspace, b: GradedSubspace) -> None:
    if a.degree != b.degree or a.num_vars != b.num_vars:
        raise DimensionMismatch(
            f"subspaces live in different spaces: (deg {a.degree}, n {a.num_vars}) vs (deg {b.degree}, n {b.num_vars})"
        )


def sum_subspaces(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    _check_compatible(a, b)
    return GradedSubspace.from_rows(a.basis_rows + b.basis_rows, a.num_vars, a.degree)


def intersect_subspaces(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    """Canonical ``a & b`` from the kernel of ``[A^T | -B^T]``."""
    _check_compatible(a, b)
    if not a.dim or not b.dim:
        return GradedSubspace.zero(a.num_vars, a.degree)
    cols = a.basis_rows + tuple(tuple(-x for x in r) for r in b.basis_rows)
    system = linalg.transpose(cols)
    rows = []
    for v in linalg.nullspace(system, len(cols)):
        coeffs = v[: a.dim]
        rows.append(tuple(
            sum((c * r[i] for c, r in zip(coeffs, a.basis_rows)), Fraction(0))
            for i in range(a.ambient_dim)
        ))
    return GradedSubspace.from_rows(rows, a.num_vars, a.degree)


def image_subspace(op: linalg.Matrix, domain: GradedSubspace | None, num_vars: int, degree: int) -> GradedSubspace:
    """Image of a degree-preserving operator (column convention), optionally restricted."""
    if domain is None:
        rows = linalg.transpose(op)
    else:
        rows = [linalg.matvec(op, r) for r in domain.basis_rows]
    return GradedSubspace.from_rows(rows, num_vars, degree)


def kernel_subspace(op: linalg.Matrix, num_vars: int, degree: int) -> GradedSubspace:
    n = len(monomial_basis(num_vars, degree))
    return GradedSubspace.from_rows(linalg.nullspace(op, n), num_vars, degree)
