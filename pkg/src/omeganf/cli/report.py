"""Report documents: canonical JSON plus a plain-text rendering.

Rationals are written as ``"p/q"`` (or ``"p"``) strings and polynomials as
lists of ``[exponents, coefficient]`` pairs in graded-lex order, so a report
is byte-identical for identical inputs and decodes back to the exact values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..engine import Certificate, NormalFormReport
from ..groups import FiniteSymmetryGroup, SymmetryType, classify_symmetry_types, coset_structure
from ..polycore.poly import SparsePoly
from ..symplectic import MatrixClass, PolyVectorField, SymplecticForm, classify_matrix

SCHEMA = "omeganf-report/1"


def enc_rational(q: Fraction) -> str:
    return str(Fraction(q))


def dec_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected a rational string, got {s!r}")
    return Fraction(s)


def enc_matrix(m) -> list[list[str]]:
    return [[enc_rational(x) for x in row] for row in m]


def dec_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(dec_rational(x) for x in row) for row in rows)


def enc_poly(p: SparsePoly) -> list:
    return [[list(e), enc_rational(c)] for e, c in p.sorted_terms()]


def dec_poly(terms, num_vars: int) -> SparsePoly:
    return SparsePoly({tuple(e): dec_rational(c) for e, c in terms}, num_vars)


def _enc_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return enc_rational(v)
    if isinstance(v, SparsePoly):
        return enc_poly(v)
    if isinstance(v, dict):
        return {str(k): _enc_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_enc_value(x) for x in v]
    return str(v)


def enc_certificate(c: Certificate) -> dict:
    return {"kind": c.kind, "degree": c.degree, "passed": c.passed, "detail": _enc_value(c.detail)}


def group_section(group: FiniteSymmetryGroup, omega: SymplecticForm | None) -> dict:
    tags, present = classify_symmetry_types(group)
    rows = []
    for i in range(group.order):
        row = {
            "name": group.names[i],
            "matrix": enc_matrix(group.elements[i]),
            "s1": group.sigma1[i],
            "s2": group.sigma2[i],
            "type": tags[i].value,
        }
        if omega is not None:
            row["class"] = classify_matrix(group.elements[i], omega).value
        rows.append(row)
    cs = coset_structure(group)
    return {
        "order": group.order,
        "elements": rows,
        "types_present": sorted(t.value for t in present),
        "gamma_pp": [group.names[i] for i in cs.gamma_pp],
        "deltas": {str(k): (group.names[d] if d is not None else None) for k, d in cs.deltas().items()},
    }


def normal_form_section(rep: NormalFormReport) -> dict:
    n = rep.omega.dim
    degrees = []
    splits = {s.degree: s for s in rep.splits}
    for k in sorted(rep.complements):
        comp = rep.complements[k]
        s = splits[k]
        degrees.append({
            "degree": k,
            "complement_dim": comp.dim,
            "complement_basis": [enc_poly(b) for b in comp.basis()],
            "resonant": enc_poly(s.resonant),
            "generator": enc_poly(s.generator),
            "removed": enc_poly(s.removed),
        })
    return {
        "order": rep.order,
        "num_vars": n,
        "truncation": f"terms of degree > {rep.order} discarded; X_K kept through degree {rep.order - 1}",
        "projection": "Fischer-orthogonal projection onto the complement",
        "linear_part": enc_matrix(rep.linear_part),
        "input": enc_poly(rep.hamiltonian.poly),
        "degrees": degrees,
        "normal_form": enc_poly(rep.normal_form.poly),
        "vector_field": [enc_poly(c) for c in rep.vector_field],
        "flags": list(rep.flags),
    }


@dataclass(frozen=True)
class ReportDocument:
    machine: dict
    human: str
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(self.machine, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt: str = "both") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "text":
            return self.human
        return self.human + "\n" + self.to_json()

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        machine = json.loads(text)
        return cls(machine, "", machine.get("exit_code", 0))


def decode_normal_form(machine: dict) -> dict:
    """Exact values of a normal-form section: K, X_K and the per-degree data."""
    sec = machine["normal_form"]
    n = sec["num_vars"]
    return {
        "normal_form": dec_poly(sec["normal_form"], n),
        "vector_field": PolyVectorField(tuple(dec_poly(c, n) for c in sec["vector_field"])),
        "linear_part": dec_matrix(sec["linear_part"]),
        "degrees": {
            d["degree"]: {
                "complement_dim": d["complement_dim"],
                "complement_basis": [dec_poly(b, n) for b in d["complement_basis"]],
                "resonant": dec_poly(d["resonant"], n),
                "generator": dec_poly(d["generator"], n),
                "removed": dec_poly(d["removed"], n),
            }
            for d in sec["degrees"]
        },
    }


# plain-text rendering

def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def _sign(s: int) -> str:
    return "+1" if s > 0 else "-1"


def render_group(sec: dict) -> str:
    has_class = bool(sec["elements"]) and "class" in sec["elements"][0]
    headers = ["element", "sigma1", "sigma2", "type"] + (["omega-class"] if has_class else [])
    rows = []
    for e in sec["elements"]:
        row = [e["name"], _sign(e["s1"]), _sign(e["s2"]), e["type"]]
        if has_class:
            row.append(e["class"])
        rows.append(row)
    by_type = []
    for t in SymmetryType:
        names = [e["name"] for e in sec["elements"] if e["type"] == t.value]
        by_type.append(f"  {t.value}: {', '.join(names) if names else '-'}")
    deltas = ", ".join(f"delta{k}={v or '-'}" for k, v in sorted(sec["deltas"].items()))
    return "\n".join([
        f"Group of order {sec['order']}",
        _table(headers, rows),
        "Types of symmetry:",
        *by_type,
        f"Gamma++ = {{{', '.join(sec['gamma_pp'])}}}; {deltas}",
    ])


def render_normal_form(rep: NormalFormReport) -> str:
    lines = [f"Normal form to order {rep.order} (terms above degree {rep.order} dropped)"]
    lines.append(_table(
        ["degree", "dim complement", "K^k"],
        [[str(k), str(rep.complements[k].dim), s.resonant.to_str()] for k, s in
         ((s.degree, s) for s in rep.splits)],
    ))
    lines.append(f"K = {rep.normal_form.poly.to_str()}")
    for i, c in enumerate(rep.vector_field):
        lines.append(f"X_K[{i + 1}] = {c.to_str()}")
    if rep.flags:
        lines.append(f"flags: {', '.join(rep.flags)}")
    return "\n".join(lines)


def render_certificates(certs: list[Certificate]) -> str:
    rows = [[c.kind, "-" if c.degree is None else str(c.degree), "pass" if c.passed else "FAIL"] for c in certs]
    return "Certificates\n" + _table(["certificate", "degree", "status"], rows)
