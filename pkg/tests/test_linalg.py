from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from omeganf.polycore import linalg
from strategies import matrices, rationals


def to_sympy(m, cols=None):
    if not m:
        return sympy.zeros(0, cols or 0)
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


def test_as_fraction_accepts_exact_inputs():
    assert linalg.as_fraction("3/4") == Fraction(3, 4)
    assert linalg.as_fraction(-2) == Fraction(-2)
    assert linalg.as_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, None])
def test_as_fraction_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        linalg.as_fraction(bad)


def test_inverse_small():
    m = linalg.matrix([[2, 1], [1, 1]])
    assert linalg.inverse(m) == linalg.matrix([[1, -1], [-1, 2]])
    with pytest.raises(Exception):
        linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))


def test_solve_particular_reports_inconsistency():
    m = linalg.matrix([[1, 1], [2, 2]])
    assert linalg.solve_particular(m, [1, 3]) is linalg.NoSolution
    x = linalg.solve_particular(m, [1, 2])
    assert linalg.matvec(m, x) == (Fraction(1), Fraction(2))


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_matches_sympy(r, c, data):
    m = data.draw(matrices(r, c))
    assert linalg.rank(m) == to_sympy(m).rank()


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_is_kernel_of_right_size(r, c, data):
    m = data.draw(matrices(r, c))
    ns = linalg.nullspace(m, c)
    assert len(ns) == c - to_sympy(m).rank()
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(m, v))


@given(st.integers(1, 4), st.data())
def test_det_and_inverse_match_sympy(n, data):
    m = data.draw(matrices(n, n))
    d = linalg.det(m)
    assert sympy.Rational(d.numerator, d.denominator) == to_sympy(m).det()
    if d:
        assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(n)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_particular_against_rank_criterion(r, c, data):
    m = data.draw(matrices(r, c))
    b = data.draw(st.lists(rationals, min_size=r, max_size=r))
    x = linalg.solve_particular(m, b)
    consistent = to_sympy(m).rank() == to_sympy(m).row_join(to_sympy([tuple(b)]).T).rank()
    if consistent:
        assert tuple(linalg.matvec(m, x)) == tuple(Fraction(v) for v in b)
    else:
        assert x is linalg.NoSolution


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rref_is_canonical(r, c, data):
    m = data.draw(matrices(r, c))
    red, piv = linalg.rref(m, c)
    assert linalg.rref(red, c) == (red, piv)
    sym, sym_piv = to_sympy(m).rref()
    assert tuple(piv) == tuple(sym_piv)
    assert to_sympy(red, c) == sym[: len(red), :]
