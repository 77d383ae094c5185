"""Acceptance criteria, one test per criterion at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (or execute this file);
each criterion prints a single PASS/FAIL line and the lines are repeated in
the terminal summary.
"""
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

import oracle
from omeganf.cli import execute
from omeganf.engine import (
    ad_matrix,
    complement_with_certificates,
    equivariant_complement,
    equivariant_complement_with_certificates,
    equivariant_normal_form,
    homological_split,
    lie_transform,
    normal_form,
)
from omeganf.groups import (
    check_equivariance,
    check_invariance,
    classify_symmetry_types,
    pullback_matrix,
    reynolds_projection,
)
from omeganf.polycore import linalg
from omeganf.polycore.poly import Jet, SparsePoly, from_vector, monomial_basis, to_vector, variables
from omeganf.polycore.subspace import GradedSubspace
from omeganf.problems import PSI, TAU, dihedral_plane, z2z2_invariants, z2z2_space
from omeganf.symplectic import (
    PolyVectorField,
    SymplecticForm,
    hamiltonian_field,
    lie_bracket,
    poisson,
    quadratic_from_matrix,
)

pytestmark = pytest.mark.acceptance

ROOT = Path(__file__).resolve().parent.parent


def rand_q(rng, lo=-5, hi=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def rand_homogeneous(rng, n, k, terms=5):
    basis = monomial_basis(n, k)
    return SparsePoly({rng.choice(basis): rand_q(rng) for _ in range(terms)}, n)


def rand_poly(rng, n, degrees, terms=3):
    out = SparsePoly.zero(n)
    for k in degrees:
        out = out + rand_homogeneous(rng, n, k, terms)
    return out


def apply(mat, p, k):
    return from_vector(linalg.matvec(mat, to_vector(p, k)), p.num_vars, k)


def dihedral_hamiltonian(prob, rng):
    x1, x2 = variables(2)
    u = x1 * x1 + x2 * x2
    p = x1 * x1 * x2 * x2
    # D4-invariant but not SO(2)-invariant terms make the reduction non-trivial
    return (prob.h2 + (u * u).scale(rand_q(rng)) + p.scale(rand_q(rng))
            + (u**3).scale(rand_q(rng)) + (u * p).scale(rand_q(rng)))


# 1 -------------------------------------------------------------------------

DIHEDRAL_PARAMS = [(1, 1), (3, Fraction(2, 5)), (Fraction(-7, 2), Fraction(5, 3))]


@pytest.mark.parametrize("a12, lam", DIHEDRAL_PARAMS)
def test_criterion_1_dihedral_reproduction(criterion, a12, lam):
    a12, lam = Fraction(a12), Fraction(lam)
    prob = dihedral_plane(a12, lam)
    h = dihedral_hamiltonian(prob, random.Random(17))
    t0 = time.perf_counter()
    rep = equivariant_normal_form(Jet(h, 7), prob.omega, prob.group, 7)
    elapsed = time.perf_counter() - t0

    x1, x2 = variables(2)
    u = x1 * x1 + x2 * x2
    k = rep.normal_form.poly
    c2 = k.coeff((4, 0))
    c3 = k.coeff((6, 0))
    closed_k = u.scale(lam * a12 / 2) + (u**2).scale(c2) + (u**3).scale(c3)
    # X_K = (lambda + (2/a12) sum_j j C_j u^{j-1}) (x2, -x1), kept through degree r-1
    factor = SparsePoly.constant(lam, 2) + (u.scale(2 * c2) + (u * u).scale(3 * c3)).scale(2 / a12)
    closed_field = PolyVectorField((factor * x2, -(factor * x1))).truncate(6)

    dims = rep.complement_dims
    ok = (
        dims == {3: 0, 4: 1, 5: 0, 6: 1, 7: 0}
        and k == closed_k
        and rep.vector_field == closed_field
        and rep.passed
        and elapsed < 5
    )
    criterion(1, ok, f"a12={a12}, lambda={lam}, dims={dims}, C2={c2}, C3={c3}, {elapsed:.2f}s")


# 2 -------------------------------------------------------------------------

@pytest.mark.parametrize("a12, lam", DIHEDRAL_PARAMS)
def test_criterion_2_dihedral_coincidence(criterion, a12, lam):
    prob = dihedral_plane(a12, lam)
    h = dihedral_hamiltonian(prob, random.Random(5))
    eq = equivariant_normal_form(Jet(h, 7), prob.omega, prob.group, 7)
    plain = normal_form(Jet(h, 7), prob.omega, 7)
    same = all(eq.complements[k] == plain.complements[k] for k in range(3, 8))
    same_k = eq.normal_form == plain.normal_form
    criterion(2, same and same_k, f"a12={a12}, lambda={lam}, equal bases for k=3..7: {same}, equal K: {same_k}")


# 3 -------------------------------------------------------------------------

def ansatz_products(degree):
    """u3 * u1^j1 u2^j2 u3^(2 j3) u4^(2 j4) of the requested degree."""
    u = z2z2_invariants()
    out = []
    rest = degree - 2
    for j1 in range(rest // 2 + 1):
        for j2 in range(rest // 2 + 1):
            for j3 in range(rest // 4 + 1):
                for j4 in range(rest // 4 + 1):
                    if 2 * j1 + 2 * j2 + 4 * j3 + 4 * j4 == rest:
                        out.append(u["u3"] * u["u1"] ** j1 * u["u2"] ** j2
                                   * u["u3"] ** (2 * j3) * u["u4"] ** (2 * j4))
    return out


def test_criterion_3_z2z2_reproduction(criterion):
    prob = z2z2_space(Fraction(3, 2))
    g = prob.group
    t0 = time.perf_counter()
    comps = {k: equivariant_complement(prob.linear_part, prob.omega, g, k) for k in (3, 4, 5, 6)}
    elapsed = time.perf_counter() - t0
    u = z2z2_invariants()
    low_dims = {k: comps[k].dim for k in (3, 4, 5)}
    k4_ok = comps[4] == GradedSubspace.span([u["u3"] * u["u1"], u["u3"] * u["u2"]], 4, 4)

    products = ansatz_products(6)
    ansatz_span = GradedSubspace.span(products, 4, 6)
    constraints = [(g.elements[i], g.sigma1sigma2[i]) for i in range(g.order)]
    oracle_dim = oracle.invariant_dim(prob.linear_part, prob.omega.matrix, 4, 6, constraints)
    engine_dim = comps[6].dim
    detail = (
        f"dims k=3..5 {low_dims}, k=4 basis {{u3u1, u3u2}}: {k4_ok}; k=6: engine {engine_dim}, "
        f"kernel oracle {oracle_dim}, {len(products)} ansatz products of rank {ansatz_span.dim}, "
        f"required 5; {elapsed:.2f}s"
    )
    ok = (
        low_dims == {3: 0, 4: 2, 5: 0}
        and k4_ok
        and engine_dim == 5
        and oracle_dim == 5
        and elapsed < 30
    )
    criterion(3, ok, detail)


# 4 -------------------------------------------------------------------------

def test_criterion_4_table_of_symmetry_types(criterion):
    g = z2z2_space().group
    tags, _ = classify_symmetry_types(g)
    ident = linalg.identity(4)
    labels = {}
    for a_name, a in (("I", ident), ("tau", linalg.matrix(TAU))):
        for b_name, b in (("I", ident), ("psi", linalg.matrix(PSI))):
            labels[g.index_of(linalg.matmul(a, b))] = (a_name, b_name)
    table = {tags[i].value: labels[i] for i in range(g.order)}
    expected = {"SE": ("I", "I"), "SR": ("I", "psi"), "AE": ("tau", "psi"), "AR": ("tau", "I")}
    criterion(4, table == expected and len(tags) == 4, f"{table}")


# 5 -------------------------------------------------------------------------

def test_criterion_5_nonsymplectic_s_rejected(criterion):
    doc = execute(ROOT / "problems" / "nonsymplectic_s.toml")
    err = doc.machine.get("error", {})
    ok = doc.exit_code == 3 and err.get("type") == "SNotSymplectic" and "S not symplectic" in err.get("message", "")
    criterion(5, ok, f"exit {doc.exit_code}, {err.get('type')}")


# 6 -------------------------------------------------------------------------

def test_criterion_6_invariance_equivariance_property(criterion):
    rng = random.Random(2024)
    groups = [dihedral_plane(3, Fraction(2, 5)), z2z2_space(2)]
    failures = 0
    for trial in range(200):
        prob = groups[trial % 2]
        g, w = prob.group, prob.omega
        n = w.dim
        k = rng.choice((3, 4))
        f = rand_homogeneous(rng, n, k, 6)
        # forward: sigma1 sigma2-invariant H gives a sigma2-equivariant field
        h = apply(reynolds_projection(g, g.sigma1sigma2, k), f, k)
        fwd = check_invariance(h, g, g.sigma1sigma2) and check_equivariance(hamiltonian_field(h, w), g, g.sigma2)
        # converse as stated: sigma2-invariant H gives a sigma1 sigma2-equivariant field
        h2 = apply(reynolds_projection(g, g.sigma2, k), f, k)
        conv = check_equivariance(hamiltonian_field(h2, w), g, g.sigma1sigma2)
        # and a field that is sigma2-equivariant has a sigma1 sigma2-invariant Hamiltonian
        back = (not check_equivariance(hamiltonian_field(f, w), g, g.sigma2)) or check_invariance(f, g, g.sigma1sigma2)
        failures += not (fwd and conv and back)
    criterion(6, failures == 0, f"200 trials, {failures} failures")


# 7 -------------------------------------------------------------------------

def test_criterion_7_structural_identities(criterion):
    rng = random.Random(7)
    failures = []
    forms = [SymplecticForm([[0, 3], [-3, 0]]), z2z2_space().omega]
    for trial in range(30):
        w = forms[trial % 2]
        n = w.dim
        f, g_, h = (rand_poly(rng, n, (1, 2, 3)) for _ in range(3))
        if poisson(f, g_, w) != -poisson(g_, f, w):
            failures.append("antisymmetry")
        if poisson(f, g_ * h, w) != poisson(f, g_, w) * h + g_ * poisson(f, h, w):
            failures.append("leibniz")
        jac = poisson(f, poisson(g_, h, w), w) + poisson(g_, poisson(h, f, w), w) + poisson(h, poisson(f, g_, w), w)
        if not jac.is_zero():
            failures.append("jacobi")
        if hamiltonian_field(poisson(f, g_, w), w) != lie_bracket(hamiltonian_field(g_, w), hamiltonian_field(f, w)):
            failures.append("bracket-field")

    certificates = 0
    for prob in (dihedral_plane(3, Fraction(2, 5)), z2z2_space(2)):
        grp, w, l_mat = prob.group, prob.omega, prob.linear_part
        for k in range(2, 7):
            pi = reynolds_projection(grp, grp.sigma1sigma2, k)
            pibar = reynolds_projection(grp, grp.sigma1, k)
            if linalg.matmul(pi, pi) != pi or linalg.matmul(pibar, pibar) != pibar:
                failures.append(f"idempotence k={k}")
            ad = ad_matrix(prob.h2, w, k).matrix
            if linalg.matmul(pi, ad) != linalg.matmul(ad, pibar):
                failures.append(f"pi ad = ad pibar k={k}")
            for i, el in enumerate(grp.elements):
                pm = pullback_matrix(el, k)
                if linalg.matmul(pm, ad) != linalg.scale(grp.sigma2[i], linalg.matmul(ad, pm)):
                    failures.append(f"ad sigma2-equivariance k={k}")
            if k >= 3:
                _, certs = complement_with_certificates(l_mat, w, k)
                _, _, ecerts = equivariant_complement_with_certificates(l_mat, w, grp, k)
                for c in ecerts:
                    certificates += 1
                    if not c.passed:
                        failures.append(f"{c.kind} k={k}")
    criterion(7, not failures, f"{certificates} rank certificates, failures: {sorted(set(failures)) or 'none'}")


@pytest.mark.skipif(os.environ.get("OMEGANF_INNER_RUN") == "1", reason="inner timing run")
def test_criterion_7_full_suite_runtime(criterion):
    env = {**os.environ, "OMEGANF_INNER_RUN": "1"}
    t0 = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "pytest", str(ROOT / "tests"), "-q", "-p", "no:cacheprovider",
         "--deselect", "tests/test_acceptance.py::test_criterion_7_full_suite_runtime"],
        cwd=ROOT, env=env, capture_output=True, text=True, check=False,
    )
    elapsed = time.perf_counter() - t0
    tail = res.stdout.strip().splitlines()[-1] if res.stdout.strip() else ""
    # the inner run contains the criterion 3 failure, so only the time budget is judged here
    criterion(7, elapsed < 120, f"full suite {elapsed:.1f}s < 120s; inner result: {tail}")


# 8 -------------------------------------------------------------------------

def random_problem(rng):
    if rng.random() < 0.5:
        prob = dihedral_plane(rand_q(rng, 1, 5) * rng.choice((1, -1)), rand_q(rng, 1, 5))
        return prob.omega, prob.h2, prob.linear_part, rng.randint(4, 6)
    w = rng.choice([z2z2_space().omega, SymplecticForm.canonical(2)])
    if w == SymplecticForm.canonical(2):
        a, b = rand_q(rng, 1, 4), rand_q(rng, -4, -1)
        l_mat = linalg.matrix([[0, 0, a, 0], [0, 0, 0, b], [-a, 0, 0, 0], [0, -b, 0, 0]])
    else:
        l_mat = z2z2_space(rand_q(rng, 1, 4)).linear_part
    return w, quadratic_from_matrix(l_mat, w), l_mat, rng.randint(4, 5)


def test_criterion_8_conjugacy_bookkeeping(criterion):
    rng = random.Random(88)
    failures = 0
    transforms = 0
    for _ in range(50):
        w, h2, l_mat, r = random_problem(rng)
        n = w.dim
        h = h2 + rand_poly(rng, n, range(3, r + 1), terms=3)
        current = Jet(h, r)
        resonant = {}
        for k in range(3, r + 1):
            comp, _ = complement_with_certificates(l_mat, w, k)
            ad = ad_matrix(h2, w, k)
            split = homological_split(current.part(k), ad, comp)
            nxt = lie_transform(current, split.generator, w, r)
            transforms += 1
            lower = all(nxt.part(j) == current.part(j) for j in range(k))
            shift = nxt.part(k) == current.part(k) - ad(split.generator)
            inside = comp.contains(nxt.part(k))
            failures += not (lower and shift and inside)
            resonant[k] = nxt.part(k)
            current = nxt
        final = normal_form(Jet(h, r), w, r)
        failures += final.normal_form.poly != h2 + sum(resonant.values(), SparsePoly.zero(n))
    criterion(8, failures == 0, f"50 Hamiltonians, {transforms} Lie transforms, {failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
