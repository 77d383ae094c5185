from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from omeganf.engine import (
    ad_matrix,
    complement_basis,
    complement_with_certificates,
    equivariant_complement,
    equivariant_normal_form,
    fischer_adjoint_check,
    fischer_projection,
    homological_split,
    lie_transform,
    normal_form,
)
from omeganf.errors import NonEquilibriumInput, NonHomogeneous, SNotSymplectic, SymmetryHypothesisFailed
from omeganf.polycore import linalg
from omeganf.polycore.poly import Jet, SparsePoly, fischer_ip, monomial_basis, variables
from omeganf.polycore.subspace import GradedSubspace
from omeganf.problems import dihedral_plane, nonsymplectic_s, z2z2_invariants, z2z2_space
from omeganf.symplectic import SymplecticForm, poisson, quadratic_from_matrix
from strategies import homogeneous, polys

J1 = SymplecticForm.canonical(1)


def test_ad_matrix_matches_oracle(z2z2):
    ad = ad_matrix(z2z2.h2, z2z2.omega, 3)
    h2 = oracle.expr(z2z2.h2)
    for j, m in enumerate(monomial_basis(4, 3)):
        mono = SparsePoly.monomial(m)
        expected = oracle.poly(oracle.bracket(oracle.expr(mono), h2, z2z2.omega.matrix, 4), 4)
        assert ad(mono) == expected
        assert ad(mono) == poisson(mono, z2z2.h2, z2z2.omega)


def test_ad_matrix_requires_quadratic():
    x, y = variables(2)
    with pytest.raises(NonHomogeneous):
        ad_matrix(x**3, J1, 3)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_complement_dims_match_oracle(z2z2, k):
    comp = complement_basis(z2z2.linear_part, z2z2.omega, k)
    assert comp.dim == oracle.invariant_dim(z2z2.linear_part, z2z2.omega.matrix, 4, k)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_equivariant_dims_match_oracle(z2z2, k):
    g = z2z2.group
    constraints = [(g.elements[i], g.sigma1sigma2[i]) for i in range(g.order)]
    expected = oracle.invariant_dim(z2z2.linear_part, z2z2.omega.matrix, 4, k, constraints)
    assert equivariant_complement(z2z2.linear_part, z2z2.omega, g, k).dim == expected


def test_equivariant_degree_four_basis(z2z2):
    u = z2z2_invariants()
    comp = equivariant_complement(z2z2.linear_part, z2z2.omega, z2z2.group, 4)
    assert comp == GradedSubspace.span([u["u3"] * u["u1"], u["u3"] * u["u2"]], 4, 4)


@pytest.mark.parametrize("a12, lam", [(1, 1), (3, Fraction(2, 5)), (-2, 7)])
def test_dihedral_complements_are_powers_of_u(a12, lam):
    prob = dihedral_plane(a12, lam)
    x1, x2 = variables(2)
    u = x1 * x1 + x2 * x2
    for k in range(3, 9):
        comp = equivariant_complement(prob.linear_part, prob.omega, prob.group, k)
        expected = GradedSubspace.span([u ** (k // 2)] if k % 2 == 0 else [], 2, k)
        assert comp == expected
        assert complement_basis(prob.linear_part, prob.omega, k) == expected


@given(st.integers(3, 5), st.data())
def test_fischer_adjoint_and_direct_sum(k, data):
    from strategies import hamiltonian_matrices, symplectic_forms

    w = data.draw(symplectic_forms(2))
    l_mat = data.draw(hamiltonian_matrices(w))
    try:
        comp, certs = complement_with_certificates(l_mat, w, k)
    except SNotSymplectic:
        return
    assert certs[0].passed and certs[1].passed
    ad = ad_matrix(quadratic_from_matrix(l_mat, w), w, k)
    assert comp.dim + ad.image().dim == len(monomial_basis(2, k))


@given(homogeneous(2, 4))
def test_fischer_projection_is_orthogonal(p):
    x1, x2 = variables(2)
    sub = GradedSubspace.span([(x1 * x1 + x2 * x2) ** 2, x1 * x2 * x2 * x2], 2, 4)
    proj = fischer_projection(p, sub)
    assert sub.contains(proj)
    for b in sub.basis():
        assert fischer_ip(p - proj, b, 4) == 0


@given(homogeneous(4, 4))
def test_homological_split(hk):
    prob = z2z2_space()
    ad = ad_matrix(prob.h2, prob.omega, 4)
    comp = complement_basis(prob.linear_part, prob.omega, 4)
    split = homological_split(hk, ad, comp)
    assert split.resonant + ad(split.generator) == hk
    assert comp.contains(split.resonant)
    for b in ad.image().basis():
        assert fischer_ip(split.resonant, b, 4) == 0


@settings(max_examples=12)
@given(polys(2, max_deg=5, min_deg=2), homogeneous(2, 3))
def test_lie_transform_matches_flow_composition(h, xi):
    w = SymplecticForm([[0, 2], [-2, 0]])
    got = lie_transform(Jet(h, 5), xi, w, 5)
    expected = oracle.compose_with_flow(oracle.expr(h), oracle.expr(xi), w.matrix, 2, 5)
    assert got.poly == oracle.poly(expected, 2)


def test_lie_transform_rejects_low_degree():
    x1, x2 = variables(2)
    with pytest.raises(ValueError):
        lie_transform(Jet(x1 * x2, 4), x1 * x2, J1, 4)


def test_nonsymplectic_s_is_rejected():
    w, l_mat = nonsymplectic_s()
    with pytest.raises(SNotSymplectic, match="S not symplectic"):
        complement_basis(l_mat, w, 3)
    h = quadratic_from_matrix(l_mat, w)
    with pytest.raises(SNotSymplectic):
        normal_form(Jet(h, 4), w, 4)


def test_non_equilibrium_input():
    x1, x2 = variables(2)
    with pytest.raises(NonEquilibriumInput):
        normal_form(Jet(x1 + x1 * x2, 4), J1, 4)


def test_degenerate_linear_part():
    x1, x2 = variables(2)
    h = x1**3 + x1 * x2**3
    rep = normal_form(Jet(h, 4), J1, 4)
    assert "degenerate-linear-part" in rep.flags
    assert rep.normal_form.poly == h
    assert rep.complement_dims == {3: 4, 4: 5}


def test_equivariant_run_requires_invariant_hamiltonian(dihedral):
    x1, x2 = variables(2)
    with pytest.raises(SymmetryHypothesisFailed):
        equivariant_normal_form(Jet(dihedral.h2 + x1**4, 4), dihedral.omega, dihedral.group, 4)


def test_normal_form_of_dihedral_problem():
    prob = dihedral_plane(3, Fraction(2, 5))
    x1, x2 = variables(2)
    u = x1 * x1 + x2 * x2
    h = prob.h2 + x1**4 + x2**4 + (x1 * x2) ** 2 * 3 + (x1**6 + x2**6).scale(Fraction(1, 7))
    rep = equivariant_normal_form(Jet(h, 7), prob.omega, prob.group, 7)
    assert rep.passed
    k = rep.normal_form.poly
    c2 = k.homogeneous_part(4).coeff((4, 0))
    c3 = k.homogeneous_part(6).coeff((6, 0))
    assert k == prob.h2 + (u**2).scale(c2) + (u**3).scale(c3)


@settings(max_examples=15)
@given(polys(4, max_deg=5, min_deg=3, max_terms=5))
def test_z2z2_normal_form_terms_lie_in_complement(extra):
    prob = z2z2_space()
    rep = normal_form(Jet(prob.h2 + extra, 5), prob.omega, 5)
    for k, part in rep.resonant_parts().items():
        assert rep.complements[k].contains(part)
    assert rep.passed
