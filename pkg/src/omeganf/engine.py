"""Homological operators, complements and the degree-by-degree normal-form sweep."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import (
    ComplementCertificateFailed,
    DecompositionCertificateFailed,
    EquivariantSolveFailed,
    NonEquilibriumInput,
    NonHomogeneous,
    NotHamiltonianMatrix,
    SNotSymplectic,
    SymmetryHypothesisFailed,
)
from .groups import (
    FiniteSymmetryGroup,
    check_equivariance,
    check_invariance,
    reynolds_projection,
    verify_semisymplectic,
)
from .polycore import linalg
from .polycore.linalg import NoSolution
from .polycore.poly import (
    Jet,
    SparsePoly,
    fischer_ip,
    fischer_weight,
    from_vector,
    monomial_basis,
    to_vector,
)
from .polycore.subspace import (
    GradedSubspace,
    image_subspace,
    intersect_subspaces,
    kernel_subspace,
    sum_subspaces,
)
from .symplectic import (
    PolyVectorField,
    SymplecticForm,
    hamiltonian_field,
    is_hamiltonian_matrix,
    linearization,
    poisson,
    quadratic_from_matrix,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    kind: str
    degree: int | None
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class AdOperator:
    """``xi -> {xi, H2}`` restricted to degree-``degree`` polynomials."""

    degree: int
    matrix: linalg.Matrix
    h2: SparsePoly
    omega: SymplecticForm

    @property
    def num_vars(self) -> int:
        return self.h2.num_vars

    def __call__(self, p: SparsePoly) -> SparsePoly:
        v = linalg.matvec(self.matrix, to_vector(p, self.degree))
        return from_vector(v, self.num_vars, self.degree)

    def image(self, domain: GradedSubspace | None = None) -> GradedSubspace:
        return image_subspace(self.matrix, domain, self.num_vars, self.degree)

    def kernel(self) -> GradedSubspace:
        return kernel_subspace(self.matrix, self.num_vars, self.degree)


def ad_matrix(h2: SparsePoly, omega: SymplecticForm, k: int) -> AdOperator:
    if not h2.is_homogeneous(2):
        raise NonHomogeneous("ad_matrix needs a homogeneous quadratic H2")
    n = omega.dim
    field_ = hamiltonian_field(h2, omega)
    basis = monomial_basis(n, k)
    cols = []
    zero = SparsePoly.zero(n)
    for m in basis:
        mono = SparsePoly({m: 1}, n)
        img = zero
        for i in range(n):
            if m[i] and field_[i]:
                img = img + mono.diff(i) * field_[i]
        cols.append(to_vector(img, k))
    mat = linalg.transpose(cols) if cols else ()
    return AdOperator(k, mat, h2, omega)


def _require_s_symplectic(l_mat: linalg.Matrix, omega: SymplecticForm) -> None:
    if not is_hamiltonian_matrix(l_mat, omega):
        raise NotHamiltonianMatrix("linear part L is not omega-Hamiltonian: L^T[omega] + [omega]L != 0")
    if not is_hamiltonian_matrix(linalg.transpose(l_mat), omega):
        raise SNotSymplectic(
            "S not symplectic: L^T is not omega-Hamiltonian, so the closure of exp(s L^T) "
            "is not a subgroup of Sp_omega"
        )


def fischer_adjoint_check(ad: AdOperator, ad_t: AdOperator) -> bool:
    """Whether ``ad_t`` is the Fischer adjoint of ``ad``: ``W M_t = M^T W``."""
    w = [fischer_weight(m) for m in monomial_basis(ad.num_vars, ad.degree)]
    size = len(w)
    return all(
        w[i] * ad_t.matrix[i][j] == ad.matrix[j][i] * w[j]
        for i in range(size)
        for j in range(size)
    )


def complement_with_certificates(l_mat, omega: SymplecticForm, k: int) -> tuple[GradedSubspace, list[Certificate]]:
    l_mat = linalg.matrix(l_mat)
    _require_s_symplectic(l_mat, omega)
    ad = ad_matrix(quadratic_from_matrix(l_mat, omega), omega, k)
    ad_t = ad_matrix(quadratic_from_matrix(linalg.transpose(l_mat), omega), omega, k)
    ker = ad_t.kernel()
    im = ad.image()
    total = len(monomial_basis(omega.dim, k))
    joint = sum_subspaces(im, ker).dim
    detail = {"dim_P": total, "dim_image": im.dim, "dim_complement": ker.dim, "dim_sum": joint}
    certs = [
        Certificate("direct-sum", k, im.dim + ker.dim == total and joint == total, detail),
        Certificate("fischer-adjoint", k, fischer_adjoint_check(ad, ad_t)),
    ]
    if not certs[0].passed:
        raise ComplementCertificateFailed(f"P^{k} != ad(P^{k}) (+) ker ad_T at degree {k}: {detail}")
    return ker, certs


def complement_basis(l_mat, omega: SymplecticForm, k: int) -> GradedSubspace:
    """The S-invariant degree-k polynomials, computed as ``ker ad_{H2_T}``."""
    return complement_with_certificates(l_mat, omega, k)[0]


def _check_group_hypotheses(l_mat: linalg.Matrix, omega: SymplecticForm, group: FiniteSymmetryGroup) -> None:
    verify_semisymplectic(group, omega)
    if not check_equivariance(PolyVectorField.linear(l_mat), group, group.sigma2):
        raise SymmetryHypothesisFailed("linear part L is not Gamma_sigma2-equivariant")


def equivariant_complement_with_certificates(
    l_mat, omega: SymplecticForm, group: FiniteSymmetryGroup, k: int, *, checked: bool = False
) -> tuple[GradedSubspace, GradedSubspace, list[Certificate]]:
    """Returns ``(complement, P^k_{sigma1}(Gamma), certificates)``."""
    l_mat = linalg.matrix(l_mat)
    base, certs = complement_with_certificates(l_mat, omega, k)
    if not checked:
        _check_group_hypotheses(l_mat, omega, group)
    n = omega.dim
    p_s1s2 = image_subspace(reynolds_projection(group, group.sigma1sigma2, k), None, n, k)
    p_s1 = image_subspace(reynolds_projection(group, group.sigma1, k), None, n, k)
    result = intersect_subspaces(base, p_s1s2)
    ad = ad_matrix(quadratic_from_matrix(l_mat, omega), omega, k)
    ad_img = ad.image(p_s1)
    joint = sum_subspaces(ad_img, result)
    detail = {
        "dim_P_s1s2": p_s1s2.dim,
        "dim_ad_P_s1": ad_img.dim,
        "dim_complement": result.dim,
        "dim_sum": joint.dim,
    }
    ok = (
        p_s1s2.dim == ad_img.dim + result.dim
        and joint.dim == p_s1s2.dim
        and p_s1s2.contains_subspace(ad_img)
    )
    certs.append(Certificate("equivariant-direct-sum", k, ok, detail))
    if not ok:
        raise DecompositionCertificateFailed(f"equivariant decomposition fails at degree {k}: {detail}")
    return result, p_s1, certs


def equivariant_complement(l_mat, omega: SymplecticForm, group: FiniteSymmetryGroup, k: int) -> GradedSubspace:
    return equivariant_complement_with_certificates(l_mat, omega, group, k)[0]


@dataclass(frozen=True)
class HomologicalSplit:
    degree: int
    resonant: SparsePoly  # K^k
    generator: SparsePoly  # xi^k
    removed: SparsePoly  # G^k = ad(xi^k)


def fischer_projection(p: SparsePoly, sub: GradedSubspace) -> SparsePoly:
    """Fischer-orthogonal projection of ``p`` onto ``sub``."""
    if not sub.dim:
        return SparsePoly.zero(p.num_vars)
    basis = sub.basis()
    gram = tuple(tuple(fischer_ip(a, b, sub.degree) for b in basis) for a in basis)
    rhs = tuple(fischer_ip(a, p, sub.degree) for a in basis)
    coeffs = linalg.solve_particular(gram, rhs)
    out = SparsePoly.zero(p.num_vars)
    for c, b in zip(coeffs, basis):
        out = out + b.scale(c)
    return out


def homological_split(
    hk: SparsePoly,
    adop: AdOperator,
    complement: GradedSubspace,
    constraint: GradedSubspace | None = None,
) -> HomologicalSplit:
    k = adop.degree
    if not hk.is_homogeneous(k):
        raise NonHomogeneous(f"H^{k} must be homogeneous of degree {k}")
    resonant = fischer_projection(hk, complement)
    removed = hk - resonant
    target = to_vector(removed, k)
    if constraint is None:
        sol = linalg.solve_particular(adop.matrix, target)
        if sol is NoSolution:
            raise ComplementCertificateFailed(f"H^{k} - K^{k} is not in the image of ad at degree {k}")
        generator = from_vector(sol, adop.num_vars, k)
    else:
        rows = constraint.basis_rows
        cols = [linalg.matvec(adop.matrix, r) for r in rows]
        sol = linalg.solve_particular(linalg.transpose(cols), target) if cols else (
            () if not any(target) else NoSolution
        )
        if sol is NoSolution:
            raise EquivariantSolveFailed(
                f"H^{k} - K^{k} is not in ad(P^{k}_sigma1(Gamma)); the constrained image is too small"
            )
        vec = [sum((c * r[i] for c, r in zip(sol, rows)), Fraction(0)) for i in range(complement.ambient_dim)]
        generator = from_vector(vec, adop.num_vars, k)
    if adop(generator) != removed:
        raise ComplementCertificateFailed(f"ad(xi^{k}) != G^{k} at degree {k}")
    return HomologicalSplit(k, resonant, generator, removed)


def lie_transform(h: Jet, xi_k: SparsePoly, omega: SymplecticForm, r: int) -> Jet:
    """Degree-<=r part of ``H o phi_1`` with ``phi_t`` the flow of ``X_{xi_k}``.

    Uses the series ``sum_m ad^m(H) / m!`` with ``ad(F) = {F, xi_k}``; every
    bracket raises degree by ``k - 2``, so the sum is finite.
    """
    if h.order < r:
        raise ValueError(f"jet of order {h.order} cannot be transformed to order {r}")
    current = h.poly.truncate(r)
    if xi_k.is_zero():
        return Jet(current, r)
    k = xi_k.degree()
    if not xi_k.is_homogeneous() or k < 3:
        raise ValueError("generator must be homogeneous of degree >= 3")
    step = k - 2
    result = current
    term = current
    m = 0
    while True:
        m += 1
        term = poisson(term.truncate(r - step), xi_k, omega).scale(Fraction(1, m)).truncate(r)
        if term.is_zero():
            break
        result = result + term
    return Jet(result, r)


@dataclass
class NormalFormReport:
    hamiltonian: Jet
    omega: SymplecticForm
    order: int
    linear_part: linalg.Matrix
    splits: list[HomologicalSplit]
    normal_form: Jet
    vector_field: PolyVectorField
    complements: dict[int, GradedSubspace]
    certificates: list[Certificate]
    group: FiniteSymmetryGroup | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def complement_dims(self) -> dict[int, int]:
        return {k: c.dim for k, c in self.complements.items()}

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def resonant_parts(self) -> dict[int, SparsePoly]:
        return {s.degree: s.resonant for s in self.splits}


def _ingest(h: Jet, r: int) -> Jet:
    if h.order < r:
        raise ValueError(f"input jet has order {h.order} < requested order {r}")
    if r < 2:
        raise ValueError("normal-form order must be at least 2")
    if h.poly.min_degree() in (0, 1):
        raise NonEquilibriumInput("Hamiltonian has constant or linear terms; the origin must be an equilibrium with H(0)=0")
    return Jet.truncated(h.poly, r)


def _sweep(h: Jet, omega: SymplecticForm, r: int, complement_fn, constraint_fn) -> tuple:
    h2 = h.part(2)
    splits, certs, complements = [], [], {}
    current = h
    for k in range(3, r + 1):
        complement, extra = complement_fn(k)
        complements[k] = complement
        certs.extend(extra)
        adop = ad_matrix(h2, omega, k)
        before = current.poly
        split = homological_split(current.part(k), adop, complement, constraint_fn(k))
        current = lie_transform(current, split.generator, omega, r)
        lower_same = all(before.homogeneous_part(j) == current.part(j) for j in range(k))
        shift_ok = current.part(k) == before.homogeneous_part(k) - adop(split.generator)
        certs.append(Certificate("conjugacy-bookkeeping", k, lower_same and shift_ok,
                                 {"lower_degrees_preserved": lower_same, "degree_k_shift": shift_ok}))
        certs.append(Certificate("resonant-in-complement", k, complement.contains(split.resonant)))
        splits.append(split)
        log.debug("degree %d: dim D=%d, K=%s", k, complement.dim, split.resonant.to_str())
    return current, splits, certs, complements


def _finish(h, omega, r, l_mat, result, splits, certs, complements, group=None, flags=None) -> NormalFormReport:
    expected = h.part(2)
    for s in splits:
        expected = expected + s.resonant
    certs.append(Certificate("normal-form-assembly", None, expected == result.poly))
    field_ = hamiltonian_field(result.poly, omega).truncate(r - 1)
    report = NormalFormReport(h, omega, r, l_mat, splits, result, field_, complements, certs, group, flags or [])
    if not report.passed:
        failed = [c.kind for c in certs if not c.passed]
        raise DecompositionCertificateFailed(f"certificates failed: {', '.join(failed)}")
    return report


def normal_form(h: Jet, omega: SymplecticForm, r: int) -> NormalFormReport:
    h = _ingest(h, r)
    h2 = h.part(2)
    l_mat = linearization(h2, omega)
    _require_s_symplectic(l_mat, omega)
    flags = ["degenerate-linear-part"] if linalg.is_zero(l_mat) else []
    result, splits, certs, complements = _sweep(
        h, omega, r,
        lambda k: complement_with_certificates(l_mat, omega, k),
        lambda k: None,
    )
    return _finish(h, omega, r, l_mat, result, splits, certs, complements, None, flags)


def equivariant_normal_form(h: Jet, omega: SymplecticForm, group: FiniteSymmetryGroup, r: int) -> NormalFormReport:
    h = _ingest(h, r)
    h2 = h.part(2)
    l_mat = linearization(h2, omega)
    _require_s_symplectic(l_mat, omega)
    verify_semisymplectic(group, omega)
    if not check_invariance(h.poly, group, group.sigma1sigma2):
        raise SymmetryHypothesisFailed("Hamiltonian is not Gamma_{sigma1 sigma2}-invariant")
    _check_group_hypotheses(l_mat, omega, group)
    flags = ["degenerate-linear-part"] if linalg.is_zero(l_mat) else []
    constraints = {}

    def complement_fn(k):
        comp, p_s1, certs = equivariant_complement_with_certificates(l_mat, omega, group, k, checked=True)
        constraints[k] = p_s1
        return comp, certs

    result, splits, certs, complements = _sweep(h, omega, r, complement_fn, lambda k: constraints[k])
    k_field = hamiltonian_field(result.poly, omega)
    certs.append(Certificate("normal-form-invariant", None, check_invariance(result.poly, group, group.sigma1sigma2)))
    certs.append(Certificate("normal-form-field-equivariant", None, check_equivariance(k_field, group, group.sigma2)))
    return _finish(h, omega, r, l_mat, result, splits, certs, complements, group, flags)
