"""Worked problems used by the tests, scripts and sample problem files."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import FiniteSymmetryGroup, Generator, generate_group
from .polycore import linalg
from .polycore.poly import SparsePoly, variables
from .symplectic import SymplecticForm

R_QUARTER = ((0, -1), (1, 0))
KAPPA = ((1, 0), (0, -1))
TAU = ((-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1))
PSI = ((-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1))
OMEGA_Z2Z2 = ((0, 0, 0, -1), (0, 0, 1, 0), (0, -1, 0, 0), (1, 0, 0, 0))
OMEGA_BAD_S = ((0, 1, 0, 2), (-1, 0, -1, 0), (0, 1, 0, 1), (-2, 0, -1, 0))
L_BAD_S = ((-1, 1, -1, 2), (3, 0, 4, 1), (-1, 2, 0, 2), (3, 1, 1, 1))


@dataclass(frozen=True)
class Problem:
    omega: SymplecticForm
    h2: SparsePoly
    linear_part: linalg.Matrix
    group: FiniteSymmetryGroup | None


def dihedral_plane(a12=1, lam=1) -> Problem:
    """D4 acting on (R^2, w) with [w] = [[0, a12], [-a12, 0]] and L = [[0, lam], [-lam, 0]]."""
    a12, lam = Fraction(a12), Fraction(lam)
    omega = SymplecticForm([[0, a12], [-a12, 0]])
    x1, x2 = variables(2)
    h2 = (x1 * x1 + x2 * x2).scale(lam * a12 / 2)
    group = generate_group([
        Generator(R_QUARTER, 1, 1, "R"),
        Generator(KAPPA, -1, -1, "kappa"),
    ])
    return Problem(omega, h2, linalg.matrix([[0, lam], [-lam, 0]]), group)


def z2z2_space(lam=1) -> Problem:
    """Z2(tau) x Z2(psi) on (R^4, w) with all four symmetry types present."""
    lam = Fraction(lam)
    omega = SymplecticForm(OMEGA_Z2Z2)
    x1, x2, x3, x4 = variables(4)
    h2 = (x1 * x3 + x2 * x4).scale(-lam)
    group = generate_group([
        Generator(TAU, -1, -1, "tau"),
        Generator(PSI, 1, -1, "psi"),
    ])
    l_mat = linalg.matrix([[0, lam, 0, 0], [-lam, 0, 0, 0], [0, 0, 0, lam], [0, 0, -lam, 0]])
    return Problem(omega, h2, l_mat, group)


def z2z2_invariants() -> dict[str, SparsePoly]:
    x1, x2, x3, x4 = variables(4)
    return {
        "u1": x1 * x1 + x2 * x2,
        "u2": x3 * x3 + x4 * x4,
        "u3": x1 * x3 + x2 * x4,
        "u4": x2 * x3 - x1 * x4,
    }


def nonsymplectic_s() -> tuple[SymplecticForm, linalg.Matrix]:
    """A pair (w, L) with L w-Hamiltonian but L^T not."""
    return SymplecticForm(OMEGA_BAD_S), linalg.matrix(L_BAD_S)
