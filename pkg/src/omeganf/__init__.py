"""Exact normal forms of omega-Hamiltonian vector fields with semisymplectic symmetry."""
from .engine import (
    Certificate,
    NormalFormReport,
    ad_matrix,
    complement_basis,
    equivariant_complement,
    equivariant_normal_form,
    homological_split,
    lie_transform,
    normal_form,
)
from .groups import (
    FiniteSymmetryGroup,
    Generator,
    SymmetryType,
    classify_symmetry_types,
    coset_structure,
    generate_group,
    reynolds_projection,
    verify_semisymplectic,
)
from .polycore import GradedSubspace, Jet, SparsePoly, variables
from .symplectic import (
    MatrixClass,
    PolyVectorField,
    SymplecticForm,
    classify_matrix,
    hamiltonian_field,
    lie_bracket,
    poisson,
    quadratic_from_matrix,
)

__version__ = "0.1.0"
