"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from ..errors import DimensionMismatch, NonHomogeneous
from .linalg import as_fraction

Monomial = tuple[int, ...]


def grlex_key(m: Monomial) -> tuple:
    """Sort key for graded-lex order with x1 > x2 > ... > xn.

    Within one degree the key increases as the monomial decreases in lex, so
    ``sorted(..., key=grlex_key)`` lists x1^d first.
    """
    return (sum(m), tuple(-e for e in m))


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent vectors of total degree ``degree``, ordered by :func:`grlex_key`."""
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    if degree < 0:
        raise ValueError("degree must be non-negative")

    def rec(n: int, d: int):
        if n == 1:
            yield (d,)
            return
        for e in range(d, -1, -1):
            for rest in rec(n - 1, d - e):
                yield (e,) + rest

    out = tuple(rec(num_vars, degree))
    assert len(out) == comb(num_vars + degree - 1, degree)
    return out


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(num_vars, degree))}


def _mono_str(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class SparsePoly:
    """Immutable polynomial ``{exponent tuple: Fraction}`` in ``num_vars`` variables."""

    __slots__ = ("_terms", "num_vars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, num_vars: int | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if num_vars is None:
                num_vars = len(mono)
            if len(mono) != num_vars:
                raise DimensionMismatch(f"monomial {mono} does not have {num_vars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = as_fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        if num_vars is None or num_vars < 1:
            raise ValueError("num_vars must be given and positive")
        self._terms = clean
        self.num_vars = num_vars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction], num_vars: int) -> "SparsePoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p._terms = terms
        p.num_vars = num_vars
        p._hash = None
        return p

    @classmethod
    def zero(cls, num_vars: int) -> "SparsePoly":
        return cls._raw({}, num_vars)

    @classmethod
    def constant(cls, c, num_vars: int) -> "SparsePoly":
        return cls({(0,) * num_vars: c}, num_vars)

    @classmethod
    def variable(cls, i: int, num_vars: int) -> "SparsePoly":
        """The coordinate function x_{i+1} (0-based ``i``)."""
        e = [0] * num_vars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, num_vars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "SparsePoly":
        return cls({tuple(exps): c}, len(exps))

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def homogeneous_part(self, k: int) -> "SparsePoly":
        return SparsePoly._raw({m: c for m, c in self._terms.items() if sum(m) == k}, self.num_vars)

    def truncate(self, order: int) -> "SparsePoly":
        return SparsePoly._raw({m: c for m, c in self._terms.items() if sum(m) <= order}, self.num_vars)

    def graded_parts(self) -> dict[int, "SparsePoly"]:
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {k: SparsePoly._raw(t, self.num_vars) for k, t in sorted(parts.items())}

    def _check(self, other: "SparsePoly") -> None:
        if self.num_vars != other.num_vars:
            raise DimensionMismatch(f"{self.num_vars} vs {other.num_vars} variables")

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        return SparsePoly.constant(other, self.num_vars)

    def __add__(self, other) -> "SparsePoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePoly._raw(out, self.num_vars)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw({m: -c for m, c in self._terms.items()}, self.num_vars)

    def __sub__(self, other) -> "SparsePoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def scale(self, c) -> "SparsePoly":
        c = as_fraction(c)
        if not c:
            return SparsePoly.zero(self.num_vars)
        return SparsePoly._raw({m: c * v for m, v in self._terms.items()}, self.num_vars)

    def mul(self, other: "SparsePoly", max_degree: int | None = None) -> "SparsePoly":
        """Product, optionally discarding terms above ``max_degree``."""
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            d1 = sum(m1)
            for m2, c2 in other._terms.items():
                if max_degree is not None and d1 + sum(m2) > max_degree:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly._raw({m: c for m, c in out.items() if c}, self.num_vars)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return self.mul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> "SparsePoly":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(1, self.num_vars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def diff(self, i: int) -> "SparsePoly":
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[dm] = c * m[i]
        return SparsePoly._raw(out, self.num_vars)

    def __call__(self, *point):
        """Evaluate at a point of scalars (or substitute polynomials)."""
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        if len(point) != self.num_vars:
            raise DimensionMismatch(f"expected {self.num_vars} arguments, got {len(point)}")
        if point and all(isinstance(p, SparsePoly) for p in point):
            return substitute(self, point)
        vals = [as_fraction(p) for p in point]
        return sum((c * prod(v ** e for v, e in zip(vals, m)) for m, c in self._terms.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.constant(other, self.num_vars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.num_vars)]
        out = []
        for m, c in sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
            mono = _mono_str(m, names)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_str()})"


@dataclass(frozen=True)
class Jet:
    """A polynomial known only up to total degree ``order``."""

    poly: SparsePoly
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("jet order must be positive")
        if self.poly.degree() > self.order:
            raise ValueError(f"jet of order {self.order} has a term of degree {self.poly.degree()}")

    @classmethod
    def truncated(cls, poly: SparsePoly, order: int) -> "Jet":
        return cls(poly.truncate(order), order)

    @property
    def num_vars(self) -> int:
        return self.poly.num_vars

    def part(self, k: int) -> SparsePoly:
        return self.poly.homogeneous_part(k)

    def __add__(self, other: "Jet") -> "Jet":
        order = min(self.order, other.order)
        return Jet.truncated(self.poly + other.poly, order)


def variables(num_vars: int) -> tuple[SparsePoly, ...]:
    return tuple(SparsePoly.variable(i, num_vars) for i in range(num_vars))


def poly_from_terms(terms: Iterable[tuple[Sequence[int], object]], num_vars: int) -> SparsePoly:
    acc: dict = {}
    for exps, c in terms:
        exps = tuple(exps)
        acc[exps] = acc.get(exps, Fraction(0)) + as_fraction(c)
    return SparsePoly(acc, num_vars)


def gradient(p: SparsePoly) -> tuple[SparsePoly, ...]:
    return tuple(p.diff(i) for i in range(p.num_vars))


def substitute(p: SparsePoly, images: Sequence[SparsePoly], max_degree: int | None = None) -> SparsePoly:
    """``p(images[0], ..., images[n-1])`` with optional truncation above ``max_degree``."""
    if len(images) != p.num_vars:
        raise DimensionMismatch(f"need {p.num_vars} substitutions, got {len(images)}")
    target = images[0].num_vars if images else p.num_vars
    one = SparsePoly.constant(1, target)
    powers: list[list[SparsePoly]] = [[one] for _ in images]

    def power(i: int, e: int) -> SparsePoly:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1].mul(images[i], max_degree))
        return cache[e]

    out: dict[Monomial, Fraction] = {}
    for m, c in p.items():
        term = one.scale(c)
        for i, e in enumerate(m):
            if e:
                term = term.mul(power(i, e), max_degree)
                if term.is_zero():
                    break
        for tm, tc in term.items():
            s = out.get(tm, 0) + tc
            if s:
                out[tm] = s
            else:
                out.pop(tm, None)
    return SparsePoly._raw(out, target)


def compose_jet(p: SparsePoly, phi: Sequence[Jet], order: int) -> Jet:
    """Truncated composition ``p(phi_1, ..., phi_n)`` through degree ``order``."""
    if len(phi) != p.num_vars:
        raise DimensionMismatch(f"need {p.num_vars} component jets, got {len(phi)}")
    if len({j.num_vars for j in phi}) > 1:
        raise DimensionMismatch("component jets disagree on num_vars")
    for j in phi:
        if j.order < order:
            raise ValueError(f"component jet of order {j.order} cannot support order {order}")
    return Jet(substitute(p, [j.poly for j in phi], max_degree=order), order)


def fischer_ip(f: SparsePoly, g: SparsePoly, degree: int) -> Fraction:
    """Fischer (Bombieri) pairing: sum over alpha of alpha! * f_alpha * g_alpha."""
    f._check(g)
    for p in (f, g):
        if not p.is_homogeneous(degree):
            raise NonHomogeneous(f"{p} is not homogeneous of degree {degree}")
    total = Fraction(0)
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    for m, c in small.items():
        d = big.coeff(m)
        if d:
            total += c * d * prod(factorial(e) for e in m)
    return total


def fischer_weight(m: Monomial) -> int:
    return prod(factorial(e) for e in m)


def to_vector(p: SparsePoly, degree: int) -> tuple[Fraction, ...]:
    """Coordinates of a homogeneous polynomial in :func:`monomial_basis`."""
    if not p.is_homogeneous(degree):
        raise NonHomogeneous(f"{p} is not homogeneous of degree {degree}")
    idx = monomial_index(p.num_vars, degree)
    v = [Fraction(0)] * len(idx)
    for m, c in p.items():
        v[idx[m]] = c
    return tuple(v)


def from_vector(vec: Sequence, num_vars: int, degree: int) -> SparsePoly:
    basis = monomial_basis(num_vars, degree)
    if len(vec) != len(basis):
        raise DimensionMismatch(f"vector of length {len(vec)} for basis of size {len(basis)}")
    return SparsePoly._raw({m: as_fraction(c) for m, c in zip(basis, vec) if c}, num_vars)
