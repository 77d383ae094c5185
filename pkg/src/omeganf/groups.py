"""Finite matrix groups carrying two sign homomorphisms sigma1, sigma2.

sigma1 records how an element treats the symplectic form (+1 symplectic, -1
antisymplectic); sigma2 records whether it is a symmetry (+1) or a reversing
symmetry (-1) of the vector field.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .errors import (
    ClosureExceeded,
    DimensionMismatch,
    InconsistentSigns,
    NonMultiplicativeCharacter,
    NotSemisymplectic,
    SigmaMismatch,
    SingularGenerator,
    ValidationError,
)
from .polycore import linalg
from .polycore.poly import SparsePoly, monomial_basis, monomial_index, substitute, variables
from .symplectic import MatrixClass, PolyVectorField, SymplecticForm, classify_matrix


class Generator(NamedTuple):
    matrix: linalg.Matrix
    s1: int
    s2: int
    name: str | None = None


@dataclass(frozen=True)
class SignHomomorphism:
    """Values in {+1, -1}, indexed like the owning group's elements."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v not in (1, -1) for v in vals):
            raise ValidationError("sign homomorphism values must be +1 or -1")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __mul__(self, other: "SignHomomorphism") -> "SignHomomorphism":
        return SignHomomorphism(tuple(a * b for a, b in zip(self, other)))

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def kernel(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == 1)


def check_multiplicative(values: Sequence[int], mul_table: Mapping[tuple[int, int], int], what: str = "character") -> None:
    for (i, j), k in mul_table.items():
        if values[k] != values[i] * values[j]:
            raise NonMultiplicativeCharacter(
                f"{what} is not multiplicative at pair ({i}, {j}): "
                f"{values[i]} * {values[j]} != {values[k]}"
            )


@dataclass(frozen=True)
class FiniteSymmetryGroup:
    elements: tuple[linalg.Matrix, ...]
    mul_table: Mapping[tuple[int, int], int]
    identity_index: int
    sigma1: SignHomomorphism
    sigma2: SignHomomorphism
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.elements)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(n)))
        if len(set(self.elements)) != n:
            raise ValidationError("group elements are not pairwise distinct")
        if len(self.sigma1) != n or len(self.sigma2) != n:
            raise ValidationError("sign homomorphisms must have one value per element")
        if len(self.mul_table) != n * n:
            raise ValidationError("multiplication table is incomplete")
        check_multiplicative(self.sigma1, self.mul_table, "sigma1")
        check_multiplicative(self.sigma2, self.mul_table, "sigma2")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements[0])

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[(i, j)]

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.order) if self.mul_table[(i, j)] == self.identity_index)

    def index_of(self, m) -> int:
        return self.elements.index(linalg.matrix(m))

    @property
    def sigma1sigma2(self) -> SignHomomorphism:
        return self.sigma1 * self.sigma2

    def character(self, name: str) -> SignHomomorphism:
        """Named characters: ``trivial``, ``sigma1``, ``sigma2``, ``sigma1sigma2``."""
        table = {
            "trivial": SignHomomorphism((1,) * self.order),
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "sigma1sigma2": self.sigma1sigma2,
        }
        try:
            return table[name]
        except KeyError:
            raise ValueError(f"unknown character {name!r}") from None

    @classmethod
    def trivial(cls, dim: int) -> "FiniteSymmetryGroup":
        return generate_group([Generator(linalg.identity(dim), 1, 1, "I")])


def generate_group(generators: Sequence, max_size: int = 1024) -> FiniteSymmetryGroup:
    """Breadth-first closure of the generators with signs propagated multiplicatively.

    Each generator is ``(matrix, s1, s2)`` or ``(matrix, s1, s2, name)``.
    """
    gens = []
    for i, g in enumerate(generators):
        g = Generator(*g)
        m = linalg.matrix(g.matrix)
        n, k = linalg.shape(m)
        if n != k or n == 0 or n % 2:
            raise DimensionMismatch("generators must be square matrices of even dimension")
        if gens and n != len(gens[0].matrix):
            raise DimensionMismatch("generators have different dimensions")
        if linalg.det(m) == 0:
            raise SingularGenerator(f"generator {g.name or i} is singular")
        if g.s1 not in (1, -1) or g.s2 not in (1, -1):
            raise ValidationError(f"generator {g.name or i} has signs outside {{+1, -1}}")
        gens.append(Generator(m, int(g.s1), int(g.s2), g.name or f"g{i + 1}"))
    if not gens:
        raise ValidationError("at least one generator is required")

    ident = linalg.identity(len(gens[0].matrix))
    elements = [ident]
    signs = {ident: (1, 1)}
    words = {ident: ""}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        s_cur = signs[cur]
        for g in gens:
            prod = linalg.matmul(cur, g.matrix)
            s_new = (s_cur[0] * g.s1, s_cur[1] * g.s2)
            if prod in signs:
                if signs[prod] != s_new:
                    raise InconsistentSigns(
                        f"signs are not multiplicative at pair ({words[cur] or 'I'}, {g.name}): "
                        f"their product {words[prod] or 'I'} already carries signs {signs[prod]}, "
                        f"propagation gives {s_new}"
                    )
                continue
            if len(elements) >= max_size:
                raise ClosureExceeded(f"group closure exceeded max_size={max_size}")
            signs[prod] = s_new
            words[prod] = f"{words[cur]}*{g.name}" if words[cur] else g.name
            elements.append(prod)
            queue.append(prod)

    index = {m: i for i, m in enumerate(elements)}
    table = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            p = linalg.matmul(a, b)
            if p not in index:
                raise ValidationError("generated set is not closed under multiplication")
            table[(i, j)] = index[p]
    s1 = SignHomomorphism(tuple(signs[m][0] for m in elements))
    s2 = SignHomomorphism(tuple(signs[m][1] for m in elements))
    try:
        check_multiplicative(s1, table, "sigma1")
        check_multiplicative(s2, table, "sigma2")
    except NonMultiplicativeCharacter as exc:
        raise InconsistentSigns(str(exc)) from None
    names = tuple(words[m] or "I" for m in elements)
    return FiniteSymmetryGroup(tuple(elements), table, 0, s1, s2, names)


@dataclass(frozen=True)
class SemisymplecticReport:
    classes: tuple[MatrixClass, ...]
    certified: bool = True


def verify_semisymplectic(group: FiniteSymmetryGroup, omega: SymplecticForm) -> SemisymplecticReport:
    """Certify that every element is w-symplectic or w-antisymplectic as sigma1 says."""
    if group.dim != omega.dim:
        raise DimensionMismatch(f"group acts on R^{group.dim}, form lives on R^{omega.dim}")
    classes = tuple(classify_matrix(m, omega) for m in group.elements)
    bad = [group.names[i] for i, c in enumerate(classes) if c is MatrixClass.NEITHER]
    if bad:
        raise NotSemisymplectic(f"elements neither symplectic nor antisymplectic: {', '.join(bad)}")
    wrong = [group.names[i] for i, c in enumerate(classes) if c.sign != group.sigma1[i]]
    if wrong:
        raise SigmaMismatch(f"sigma1 disagrees with the matrix class of: {', '.join(wrong)}")
    return SemisymplecticReport(classes)


class SymmetryType(enum.Enum):
    SE = "SE"
    SR = "SR"
    AE = "AE"
    AR = "AR"

    @classmethod
    def from_signs(cls, s1: int, s2: int) -> "SymmetryType":
        return {(1, 1): cls.SE, (1, -1): cls.SR, (-1, 1): cls.AE, (-1, -1): cls.AR}[(s1, s2)]


def classify_symmetry_types(group: FiniteSymmetryGroup) -> tuple[dict[int, SymmetryType], set[SymmetryType]]:
    tags = {i: SymmetryType.from_signs(group.sigma1[i], group.sigma2[i]) for i in range(group.order)}
    return tags, set(tags.values())


@dataclass(frozen=True)
class CosetStructure:
    gamma_pp: tuple[int, ...]
    delta1: int | None
    delta2: int | None
    delta3: int | None

    @property
    def index(self) -> int:
        return 1 + sum(d is not None for d in (self.delta1, self.delta2, self.delta3))

    def deltas(self) -> dict[int, int | None]:
        return {1: self.delta1, 2: self.delta2, 3: self.delta3}


_DELTA_SIGNS = {1: (1, -1), 2: (-1, 1), 3: (-1, -1)}


def coset_structure(group: FiniteSymmetryGroup) -> CosetStructure:
    gpp = tuple(i for i in range(group.order) if group.sigma1[i] == 1 and group.sigma2[i] == 1)
    deltas = {}
    for which, signs in _DELTA_SIGNS.items():
        deltas[which] = next(
            (i for i in range(group.order) if (group.sigma1[i], group.sigma2[i]) == signs), None
        )
    out = CosetStructure(gpp, deltas[1], deltas[2], deltas[3])
    if out.index * len(gpp) != group.order:
        raise ValidationError("coset structure does not partition the group")
    return out


def cosets(group: FiniteSymmetryGroup, cs: CosetStructure | None = None) -> dict[int, tuple[int, ...]]:
    """Left cosets ``delta_i Gamma_{++}`` keyed by i (0 is Gamma_{++} itself)."""
    cs = cs or coset_structure(group)
    out = {0: cs.gamma_pp}
    for which, d in cs.deltas().items():
        if d is not None:
            out[which] = tuple(group.mul(d, t) for t in cs.gamma_pp)
    return out


def action_images(g: linalg.Matrix) -> tuple[SparsePoly, ...]:
    """Coordinates of ``g x`` as linear polynomials in x."""
    n = len(g)
    xs = variables(n)
    zero = SparsePoly.zero(n)
    return tuple(sum((xs[j].scale(row[j]) for j in range(n) if row[j]), zero) for row in g)


def pullback(f: SparsePoly, g: linalg.Matrix) -> SparsePoly:
    """``(g^* F)(x) = F(g x)``."""
    if f.num_vars != len(g):
        raise DimensionMismatch("polynomial and group element dimensions differ")
    return substitute(f, action_images(g))


@lru_cache(maxsize=4096)
def pullback_matrix(g: linalg.Matrix, degree: int) -> linalg.Matrix:
    """Matrix of ``F -> g^* F`` on the degree-``degree`` monomial basis (columns = images)."""
    n = len(g)
    basis = monomial_basis(n, degree)
    idx = monomial_index(n, degree)
    images = action_images(g)
    cols = []
    for m in basis:
        col = [Fraction(0)] * len(basis)
        for mono, c in substitute(SparsePoly({m: 1}, n), images).items():
            col[idx[mono]] = c
        cols.append(col)
    return linalg.transpose(cols)


def _as_character(group: FiniteSymmetryGroup, character) -> tuple[int, ...]:
    if isinstance(character, str):
        character = group.character(character)
    if isinstance(character, Mapping):
        vals = tuple(int(character[i]) for i in range(group.order))
    else:
        vals = tuple(int(v) for v in character)
    if len(vals) != group.order:
        raise DimensionMismatch("character needs one value per group element")
    if any(v not in (1, -1) for v in vals):
        raise ValidationError("character values must be +1 or -1")
    return vals


def reynolds_projection(group: FiniteSymmetryGroup, character, k: int) -> linalg.Matrix:
    """Matrix of ``F -> (1/|G|) sum_g chi(g) g^* F`` on the degree-k monomial basis."""
    chi = _as_character(group, character)
    check_multiplicative(chi, group.mul_table)
    size = len(monomial_basis(group.dim, k))
    acc = [[Fraction(0)] * size for _ in range(size)]
    for g, c in zip(group.elements, chi):
        pm = pullback_matrix(g, k)
        for i in range(size):
            row, src = acc[i], pm[i]
            for j in range(size):
                if src[j]:
                    row[j] += c * src[j]
    inv = Fraction(1, group.order)
    return tuple(tuple(x * inv for x in row) for row in acc)


def coset_projection(group: FiniteSymmetryGroup, kind: str, k: int) -> linalg.Matrix:
    """The projections pi-bar (``kind="sigma1"``) and pi (``kind="sigma1sigma2"``)
    assembled coset by coset: an average over Gamma_{++} for each coset
    representative, combined with the fixed sign pattern and divided by the index.
    """
    patterns = {"sigma1": {0: 1, 1: 1, 2: -1, 3: -1}, "sigma1sigma2": {0: 1, 1: -1, 2: -1, 3: 1}}
    signs = patterns[kind]
    cs = coset_structure(group)
    size = len(monomial_basis(group.dim, k))
    total = linalg.zeros(size, size)
    for which, members in cosets(group, cs).items():
        part = linalg.zeros(size, size)
        for i in members:
            part = linalg.add(part, pullback_matrix(group.elements[i], k))
        total = linalg.add(total, linalg.scale(Fraction(signs[which], len(members)), part))
    return linalg.scale(Fraction(1, cs.index), total)


def check_invariance(f: SparsePoly, group: FiniteSymmetryGroup, character) -> bool:
    """True iff ``F(g x) = chi(g) F(x)`` for every element."""
    if f.num_vars != group.dim:
        raise DimensionMismatch("polynomial and group dimensions differ")
    chi = _as_character(group, character)
    return all(pullback(f, g) == f.scale(c) for g, c in zip(group.elements, chi))


def check_equivariance(x: PolyVectorField, group: FiniteSymmetryGroup, character) -> bool:
    """True iff ``X(g x) = chi(g) g X(x)`` for every element."""
    if x.dim != group.dim:
        raise DimensionMismatch("vector field and group dimensions differ")
    chi = _as_character(group, character)
    zero = SparsePoly.zero(x.dim)
    for g, c in zip(group.elements, chi):
        lhs = x.compose(action_images(g))
        rhs = tuple(
            sum((comp.scale(c * a) for a, comp in zip(row, x) if a), zero) for row in g
        )
        if lhs.components != rhs:
            return False
    return True
