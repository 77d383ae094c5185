"""Command-line entry point and task dispatch."""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from ..engine import Certificate, equivariant_normal_form, normal_form
from ..errors import (
    CertificateError,
    HypothesisError,
    InputError,
    NotHamiltonianMatrix,
    OmegaNFError,
    ParseError,
    SNotSymplectic,
    SymmetryHypothesisFailed,
)
from ..groups import check_equivariance, check_invariance, verify_semisymplectic
from ..polycore import linalg
from ..polycore.poly import Jet
from ..symplectic import PolyVectorField, is_hamiltonian_matrix, linearization
from .problem import ProblemSpec, parse_problem
from .report import (
    SCHEMA,
    ReportDocument,
    enc_certificate,
    enc_matrix,
    group_section,
    normal_form_section,
    render_certificates,
    render_group,
    render_normal_form,
)

log = logging.getLogger("omeganf")

FAMILIES = {2: "input", 3: "hypothesis", 4: "certificate"}


class TaskFailed(OmegaNFError):
    """A hypothesis check failed; carries the partial report."""

    def __init__(self, cause: OmegaNFError, report: ReportDocument):
        super().__init__(str(cause))
        self.cause = cause
        self.report = report
        self.exit_code = cause.exit_code


def _header(spec: ProblemSpec) -> dict:
    return {
        "schema": SCHEMA,
        "name": spec.name,
        "task": spec.task,
        "dimension": spec.dimension,
        "omega": enc_matrix(spec.omega.matrix),
    }


def _linear_part(spec: ProblemSpec) -> linalg.Matrix:
    if spec.linear_part is not None:
        return spec.linear_part
    if spec.hamiltonian is None:
        raise ParseError("verify needs a linear_part or a hamiltonian with quadratic terms")
    return linearization(spec.hamiltonian.homogeneous_part(2), spec.omega)


def _classify(spec: ProblemSpec) -> ReportDocument:
    verify_semisymplectic(spec.group, spec.omega)
    sec = group_section(spec.group, spec.omega)
    machine = {**_header(spec), "group": sec, "certificates": [], "status": "ok", "exit_code": 0}
    return ReportDocument(machine, render_group(sec) + "\n")


def _verify(spec: ProblemSpec) -> ReportDocument:
    l_mat = _linear_part(spec)
    checks: list[tuple[Certificate, OmegaNFError | None]] = []

    def record(kind, fn):
        try:
            fn()
            checks.append((Certificate(kind, None, True), None))
        except HypothesisError as exc:
            checks.append((Certificate(kind, None, False, {"message": str(exc)}), exc))

    def l_hamiltonian():
        if not is_hamiltonian_matrix(l_mat, spec.omega):
            raise NotHamiltonianMatrix("linear part L is not omega-Hamiltonian: L^T[omega] + [omega]L != 0")

    def lt_hamiltonian():
        if not is_hamiltonian_matrix(linalg.transpose(l_mat), spec.omega):
            raise SNotSymplectic(
                "S not symplectic: L^T is not omega-Hamiltonian, so the closure of exp(s L^T) "
                "is not a subgroup of Sp_omega"
            )

    if spec.group is not None:
        record("semisymplectic-action", lambda: verify_semisymplectic(spec.group, spec.omega))
    record("L-omega-hamiltonian", l_hamiltonian)
    record("LT-omega-hamiltonian", lt_hamiltonian)
    if spec.group is not None:
        def l_equivariant():
            if not check_equivariance(PolyVectorField.linear(l_mat), spec.group, spec.group.sigma2):
                raise SymmetryHypothesisFailed("linear part L is not Gamma_sigma2-equivariant")

        record("L-sigma2-equivariant", l_equivariant)
        if spec.hamiltonian is not None:
            def h_invariant():
                if not check_invariance(spec.hamiltonian, spec.group, spec.group.sigma1sigma2):
                    raise SymmetryHypothesisFailed("Hamiltonian is not Gamma_{sigma1 sigma2}-invariant")

            record("H-sigma1sigma2-invariant", h_invariant)

    certs = [c for c, _ in checks]
    first = next((e for _, e in checks if e is not None), None)
    machine = {**_header(spec), "linear_part": enc_matrix(l_mat), "certificates": [enc_certificate(c) for c in certs]}
    human = [render_certificates(certs)]
    if spec.group is not None:
        try:
            sec = group_section(spec.group, spec.omega)
            machine["group"] = sec
            human.insert(0, render_group(sec))
        except InputError:
            pass
    if first is not None:
        doc = _error_document(first, machine, "\n".join(human))
        raise TaskFailed(first, doc)
    machine.update(status="ok", exit_code=0)
    return ReportDocument(machine, "\n\n".join(human) + "\n")


def _normal_form(spec: ProblemSpec) -> ReportDocument:
    h = spec.hamiltonian
    r = spec.order
    jet = Jet(h, max(r, h.degree()))
    if spec.equivariant:
        if spec.group is None:
            raise ParseError("equivariant: a group block is required")
        rep = equivariant_normal_form(jet, spec.omega, spec.group, r)
    else:
        rep = normal_form(jet, spec.omega, r)
    machine = {
        **_header(spec),
        "equivariant": spec.equivariant,
        "normal_form": normal_form_section(rep),
        "certificates": [enc_certificate(c) for c in rep.certificates],
    }
    human = [render_normal_form(rep)]
    if rep.group is not None:
        sec = group_section(rep.group, spec.omega)
        machine["group"] = sec
        human.insert(0, render_group(sec))
    human.append(render_certificates(rep.certificates))
    if not rep.passed:  # _finish raises first; kept as a guard on the exit status
        raise CertificateError("report carries failed certificates")
    machine.update(status="ok", exit_code=0)
    return ReportDocument(machine, "\n\n".join(human) + "\n")


TASK_RUNNERS = {"classify": _classify, "verify": _verify, "normal-form": _normal_form}


def run_task(spec: ProblemSpec) -> ReportDocument:
    """Run the task named in ``spec``; raises an ``OmegaNFError`` on failure."""
    return TASK_RUNNERS[spec.task](spec)


def _error_document(exc: OmegaNFError, machine: dict | None = None, human: str = "") -> ReportDocument:
    code = getattr(exc, "exit_code", 1)
    family = FAMILIES.get(code, "internal")
    machine = dict(machine or {"schema": SCHEMA})
    machine.update(
        status="error",
        exit_code=code,
        error={"family": family, "type": type(exc).__name__, "message": str(exc)},
    )
    text = f"error ({family}, exit {code}): {type(exc).__name__}: {exc}\n"
    if human:
        text = human + "\n\n" + text
    return ReportDocument(machine, text, code)


def execute(source, *, task=None, order=None, equivariant=None) -> ReportDocument:
    """Parse, apply overrides and run; failures become error reports."""
    try:
        spec = parse_problem(source)
        changes = {}
        if task is not None:
            changes["task"] = task
        if order is not None:
            changes["order"] = order
        if equivariant:
            changes["equivariant"] = True
        if changes:
            spec = dataclasses.replace(spec, **changes)
        if spec.task == "normal-form" and spec.order is None:
            raise ParseError("order: required for the normal-form task (use --order)")
        if spec.task == "normal-form" and spec.hamiltonian is None:
            raise ParseError("hamiltonian: required for the normal-form task")
        if spec.task == "classify" and spec.group is None:
            raise ParseError("group: required for the classify task")
        return run_task(spec)
    except TaskFailed as exc:
        return exc.report
    except OmegaNFError as exc:
        return _error_document(exc)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omeganf", description="Exact normal forms of omega-Hamiltonian fields.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("classify", "verify", "normal-form", "run"):
        sp = sub.add_parser(verb)
        sp.add_argument("problem", help="UTF-8 problem file (TOML)")
        sp.add_argument("--output", "-o", type=Path)
        sp.add_argument("--format", choices=("json", "text", "both"), default="both")
        if verb in ("normal-form", "run"):
            sp.add_argument("--order", type=int)
            sp.add_argument("--equivariant", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    doc = execute(
        args.problem,
        task=None if args.verb == "run" else args.verb,
        order=getattr(args, "order", None),
        equivariant=getattr(args, "equivariant", False),
    )
    text = doc.render(args.format)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if doc.exit_code:
        sys.stderr.write(f"omeganf: {doc.machine['error']['message']}\n")
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
