"""Symplectic linear algebra for an arbitrary constant symplectic form.

The form is given by its Gram matrix ``[w]`` (skew, invertible); it need not be
the canonical ``J``.  Hamiltonian fields are ``X_H = ([w]^-1)^T grad H``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotHamiltonianMatrix, ValidationError
from .polycore import linalg
from .polycore.poly import SparsePoly, gradient, substitute, variables


@dataclass(frozen=True)
class SymplecticForm:
    matrix: linalg.Matrix
    _inv_t: linalg.Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = linalg.matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        n, k = linalg.shape(m)
        if n != k or n == 0:
            raise ValidationError("omega must be a non-empty square matrix")
        if n % 2:
            raise ValidationError("omega must have even dimension")
        if linalg.transpose(m) != linalg.neg(m):
            raise ValidationError("omega not skew-symmetric")
        if linalg.det(m) == 0:
            raise ValidationError("omega not invertible")
        object.__setattr__(self, "_inv_t", linalg.transpose(linalg.inverse(m)))

    @classmethod
    def canonical(cls, n: int) -> "SymplecticForm":
        """``J = [[0, I], [-I, 0]]`` on R^{2n}."""
        z = Fraction(0)
        rows = []
        for i in range(2 * n):
            row = [z] * (2 * n)
            if i < n:
                row[i + n] = Fraction(1)
            else:
                row[i - n] = Fraction(-1)
            rows.append(row)
        return cls(rows)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def dim_half(self) -> int:
        return self.dim // 2

    @property
    def inverse_transpose(self) -> linalg.Matrix:
        return self._inv_t

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        """``w(u, v) = u^T [w] v``."""
        return sum((a * b for a, b in zip(u, linalg.matvec(self.matrix, list(v)))), Fraction(0))


class MatrixClass(enum.Enum):
    SYMPLECTIC = "Symplectic"
    ANTISYMPLECTIC = "Antisymplectic"
    NEITHER = "Neither"

    @property
    def sign(self) -> int | None:
        return {MatrixClass.SYMPLECTIC: 1, MatrixClass.ANTISYMPLECTIC: -1}.get(self)


def _check_square(b: linalg.Matrix, omega: SymplecticForm) -> linalg.Matrix:
    b = linalg.matrix(b)
    if linalg.shape(b) != (omega.dim, omega.dim):
        raise DimensionMismatch(f"expected a {omega.dim}x{omega.dim} matrix, got {linalg.shape(b)}")
    return b


def classify_matrix(b, omega: SymplecticForm) -> MatrixClass:
    b = _check_square(b, omega)
    pulled = linalg.matmul(linalg.matmul(linalg.transpose(b), omega.matrix), b)
    if pulled == omega.matrix:
        return MatrixClass.SYMPLECTIC
    if pulled == linalg.neg(omega.matrix):
        return MatrixClass.ANTISYMPLECTIC
    return MatrixClass.NEITHER


def hamiltonian_defect(a, omega: SymplecticForm) -> linalg.Matrix:
    """``A^T [w] + [w] A``; zero exactly when ``A`` is an w-Hamiltonian matrix."""
    a = _check_square(a, omega)
    return linalg.add(linalg.matmul(linalg.transpose(a), omega.matrix), linalg.matmul(omega.matrix, a))


def is_hamiltonian_matrix(a, omega: SymplecticForm) -> bool:
    return linalg.is_zero(hamiltonian_defect(a, omega))


@dataclass(frozen=True)
class PolyVectorField:
    components: tuple[SparsePoly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("empty vector field")
        n = len(comps)
        if any(c.num_vars != n for c in comps):
            raise DimensionMismatch("vector field components must all have num_vars equal to the field dimension")

    @classmethod
    def linear(cls, a) -> "PolyVectorField":
        """The field ``x -> A x``."""
        a = linalg.matrix(a)
        xs = variables(len(a))
        zero = SparsePoly.zero(len(a))
        return cls(tuple(sum((xs[j].scale(row[j]) for j in range(len(a))), zero) for row in a))

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> SparsePoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(a - b for a, b in zip(self, other)))

    def scale(self, c) -> "PolyVectorField":
        return PolyVectorField(tuple(a.scale(c) for a in self))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def truncate(self, order: int) -> "PolyVectorField":
        return PolyVectorField(tuple(c.truncate(order) for c in self))

    def jacobian(self) -> tuple[tuple[SparsePoly, ...], ...]:
        return tuple(gradient(c) for c in self)

    def apply(self, other: "PolyVectorField") -> "PolyVectorField":
        """Directional derivative ``(dX) . Y`` of this field along ``other``."""
        rows = self.jacobian()
        zero = SparsePoly.zero(self.dim)
        return PolyVectorField(tuple(sum((d * y for d, y in zip(row, other)), zero) for row in rows))

    def compose(self, images: Sequence[SparsePoly]) -> "PolyVectorField":
        return PolyVectorField(tuple(substitute(c, images) for c in self))

    def to_str(self, names=None) -> str:
        return "(" + ", ".join(c.to_str(names) for c in self) + ")"


def _apply_matrix_to_polys(m: linalg.Matrix, polys: Sequence[SparsePoly]) -> tuple[SparsePoly, ...]:
    zero = SparsePoly.zero(polys[0].num_vars)
    return tuple(sum((p.scale(c) for c, p in zip(row, polys) if c), zero) for row in m)


def hamiltonian_field(h: SparsePoly, omega: SymplecticForm) -> PolyVectorField:
    if h.num_vars != omega.dim:
        raise DimensionMismatch(f"Hamiltonian has {h.num_vars} variables, form has dimension {omega.dim}")
    return PolyVectorField(_apply_matrix_to_polys(omega.inverse_transpose, gradient(h)))


def poisson(f: SparsePoly, g: SparsePoly, omega: SymplecticForm) -> SparsePoly:
    """``{F, G} = <grad F, X_G>``."""
    if f.num_vars != omega.dim or g.num_vars != omega.dim:
        raise DimensionMismatch("Poisson bracket operands must live on the symplectic space")
    xg = hamiltonian_field(g, omega)
    out = SparsePoly.zero(omega.dim)
    for df, comp in zip(gradient(f), xg):
        if df and comp:
            out = out + df * comp
    return out


def lie_bracket(a: PolyVectorField, b: PolyVectorField) -> PolyVectorField:
    """``[A, B] = (dB) A - (dA) B``."""
    if a.dim != b.dim:
        raise DimensionMismatch("fields of different dimension")
    return b.apply(a) - a.apply(b)


def quadratic_from_matrix(a, omega: SymplecticForm) -> SparsePoly:
    """The quadratic ``Q`` with ``X_Q(x) = A x``, namely ``Q = x^T ([w]^T A) x / 2``."""
    a = _check_square(a, omega)
    s = linalg.matmul(linalg.transpose(omega.matrix), a)
    if s != linalg.transpose(s):
        raise NotHamiltonianMatrix("A^T[omega] + [omega]A != 0: matrix is not omega-Hamiltonian")
    n = omega.dim
    terms = {}
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            if s[i][j]:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                e = tuple(e)
                terms[e] = terms.get(e, Fraction(0)) + half * s[i][j]
    return SparsePoly(terms, n)


def linearization(h2: SparsePoly, omega: SymplecticForm) -> linalg.Matrix:
    """Matrix ``L`` of the linear field ``X_{H2}`` for a quadratic ``H2``."""
    if not h2.is_homogeneous(2):
        raise ValueError("linearization expects a homogeneous quadratic")
    field_ = hamiltonian_field(h2, omega)
    n = omega.dim
    rows = []
    for comp in field_:
        row = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            row.append(comp.coeff(tuple(e)))
        rows.append(tuple(row))
    return tuple(rows)
