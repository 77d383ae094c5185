"""Problem files: TOML documents with exact rationals written as strings.

Example::

    task = "normal-form"
    dimension = 2
    order = 7
    omega = [["0", "1"], ["-1", "0"]]
    hamiltonian = [
        { exponents = [2, 0], coefficient = "1/2" },
        { exponents = [0, 2], coefficient = "1/2" },
    ]

    [[group.generators]]
    name = "R"
    matrix = [["0", "-1"], ["1", "0"]]
    s1 = 1
    s2 = 1

A ``linear_part`` matrix may replace the quadratic terms; the quadratic
Hamiltonian is then recovered from it.
"""
from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import InputError, NotHamiltonianMatrix, ParseError, ValidationError
from ..groups import FiniteSymmetryGroup, Generator, generate_group
from ..polycore import linalg
from ..polycore.poly import SparsePoly
from ..symplectic import SymplecticForm, quadratic_from_matrix

TASKS = ("classify", "verify", "normal-form")


@dataclass(frozen=True)
class ProblemSpec:
    task: str
    dimension: int
    omega: SymplecticForm
    hamiltonian: SparsePoly | None
    linear_part: linalg.Matrix | None
    generators: tuple[Generator, ...]
    group: FiniteSymmetryGroup | None
    order: int | None
    equivariant: bool = False
    name: str = ""


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: expected an exact rational (integer or \"p/q\" string), got {value!r}")
    try:
        return linalg.as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse {value!r} as an exact rational") from None


def _matrix(value: Any, where: str, size: int | None = None) -> linalg.Matrix:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"{where}: expected a list of rows")
    rows = tuple(tuple(_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)) for i, r in enumerate(value))
    if size is not None and (len(rows) != size or any(len(r) != size for r in rows)):
        raise ValidationError(f"{where}: expected a {size}x{size} matrix")
    return rows


def _int(doc: dict, key: str, default=None) -> int | None:
    v = doc.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{key}: expected an integer, got {v!r}")
    return v


def _hamiltonian(terms: Any, n: int) -> SparsePoly:
    if not isinstance(terms, list):
        raise ParseError("hamiltonian: expected a list of {exponents, coefficient} tables")
    acc: dict[tuple[int, ...], Fraction] = {}
    for i, t in enumerate(terms):
        where = f"hamiltonian[{i}]"
        if not isinstance(t, dict) or "exponents" not in t or "coefficient" not in t:
            raise ParseError(f"{where}: needs 'exponents' and 'coefficient'")
        exps = t["exponents"]
        if not isinstance(exps, list) or len(exps) != n or any(
            isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps
        ):
            raise ValidationError(f"{where}.exponents: expected {n} non-negative integers")
        key = tuple(exps)
        acc[key] = acc.get(key, Fraction(0)) + _rational(t["coefficient"], f"{where}.coefficient")
    return SparsePoly(acc, n)


def parse_problem(source: str | os.PathLike) -> ProblemSpec:
    """Read a problem from a path, or from TOML text if ``source`` is not a file."""
    name = ""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        path = Path(source)
        name = path.stem
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None
    else:
        text = str(source)
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"invalid problem document: {exc}") from None
    return problem_from_dict(doc, name=doc.get("name", name))


def problem_from_dict(doc: dict, name: str = "") -> ProblemSpec:
    task = doc.get("task", "normal-form")
    if task not in TASKS:
        raise ParseError(f"task: expected one of {', '.join(TASKS)}, got {task!r}")
    if "omega" not in doc:
        raise ParseError("omega: missing")
    omega_rows = _matrix(doc["omega"], "omega")
    n = _int(doc, "dimension", len(omega_rows))
    if n != len(omega_rows):
        raise ValidationError(f"dimension: {n} does not match the {len(omega_rows)}-row omega")
    try:
        omega = SymplecticForm(_matrix(doc["omega"], "omega", n))
    except ValidationError as exc:
        raise ValidationError(f"omega: {exc}") from None

    linear = _matrix(doc["linear_part"], "linear_part", n) if "linear_part" in doc else None
    ham = _hamiltonian(doc["hamiltonian"], n) if "hamiltonian" in doc else None
    if linear is not None:
        if ham is not None and not ham.homogeneous_part(2).is_zero():
            raise ValidationError("hamiltonian: quadratic terms conflict with linear_part")
        try:
            h2 = quadratic_from_matrix(linear, omega)
        except NotHamiltonianMatrix:
            h2 = None
        if h2 is not None:
            ham = h2 if ham is None else h2 + ham

    gens = []
    group_doc = doc.get("group")
    group = None
    if group_doc is not None:
        if not isinstance(group_doc, dict) or not isinstance(group_doc.get("generators"), list):
            raise ParseError("group.generators: expected an array of tables")
        for i, g in enumerate(group_doc["generators"]):
            where = f"group.generators[{i}]"
            if not isinstance(g, dict) or "matrix" not in g:
                raise ParseError(f"{where}: needs 'matrix', 's1' and 's2'")
            s1, s2 = g.get("s1"), g.get("s2")
            if s1 not in (1, -1) or s2 not in (1, -1) or isinstance(s1, bool) or isinstance(s2, bool):
                raise ValidationError(f"{where}: s1 and s2 must be +1 or -1")
            gens.append(Generator(_matrix(g["matrix"], f"{where}.matrix", n), s1, s2, str(g.get("name", f"g{i + 1}"))))
        max_size = _int(group_doc, "max_size", 1024)
        try:
            group = generate_group(gens, max_size=max_size)
        except InputError as exc:
            raise type(exc)(f"group: {exc}") from None

    order = _int(doc, "order")
    equivariant = doc.get("equivariant", False)
    if not isinstance(equivariant, bool):
        raise ParseError("equivariant: expected true or false")
    if task == "normal-form" and order is None:
        raise ParseError("order: required for the normal-form task")
    if task == "normal-form" and ham is None:
        raise ParseError("hamiltonian: required for the normal-form task (or give linear_part)")
    if task == "classify" and group is None:
        raise ParseError("group: required for the classify task")
    return ProblemSpec(task, n, omega, ham, linear, tuple(gens), group, order, equivariant, name)
