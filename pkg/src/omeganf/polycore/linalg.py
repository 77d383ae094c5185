"""Dense exact linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Nothing in
here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionMismatch

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


class _NoSolution:
    """Sentinel returned by :func:`solve_particular` for inconsistent systems."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NoSolution"

    def __bool__(self) -> bool:
        return False


NoSolution = _NoSolution()


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string exactly.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a rational string")
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(tuple(as_fraction(v) for v in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionMismatch("ragged matrix rows")
    return out


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = shape(b)[1]
    zero = Fraction(0)
    # row-by-row accumulation skipping zero entries; graded operators are sparse
    sparse_b = [[(j, y) for j, y in enumerate(brow) if y] for brow in b]
    out = []
    for row in a:
        acc = [zero] * cols
        for x, brow in zip(row, sparse_b):
            if x:
                for j, y in brow:
                    acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    if shape(a)[1] != len(v):
        raise DimensionMismatch(f"cannot apply {shape(a)} matrix to length {len(v)}")
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionMismatch(f"shape mismatch {shape(a)} vs {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = as_fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form; zero rows are dropped.

    Returns the nonzero rows and their pivot columns.  Pivots are chosen as the
    first nonzero entry scanning down each column, so the result depends only
    on the row space.
    """
    rows = [list(r) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        prow = [x * inv for x in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> Matrix:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = shape(m)[1]
    red, pivots = rref(m, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return tuple(basis)


def solve_particular(m: Matrix, b: Sequence[Fraction]):
    """Solve ``m v = b``.

    Returns the solution whose non-pivot coordinates are zero, or
    :data:`NoSolution` when ``b`` is outside the column space.
    """
    nrows, ncols = shape(m)
    if nrows != len(b):
        raise DimensionMismatch(f"matrix has {nrows} rows but rhs has {len(b)} entries")
    if nrows == 0:
        return ()
    aug = [tuple(row) + (as_fraction(bi),) for row, bi in zip(m, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return NoSolution
    v = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[ncols]
    return tuple(v)


def det(m: Matrix) -> Fraction:
    n, k = shape(m)
    if n != k:
        raise DimensionMismatch("determinant of non-square matrix")
    rows = [list(r) for r in m]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            out = -out
        out *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                for j in range(c, n):
                    rows[i][j] -= f * rows[c][j]
    return out


def inverse(m: Matrix) -> Matrix:
    n, k = shape(m)
    if n != k:
        raise DimensionMismatch("inverse of non-square matrix")
    aug = [tuple(row) + ident for row, ident in zip(m, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n:] for row in red)
