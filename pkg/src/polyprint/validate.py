"""Printability and mesh sanity checks.

Checks never raise on a bad mesh; problems come back as findings in a
:class:`ValidationReport`.  Only :func:`signed_volume`, which needs a closed
surface to mean anything, raises.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from .core import AREA_TOL, Mesh, Vec3, undirected_edges
from .errors import NotClosedMesh

ERROR = "error"
WARNING = "warning"

DEFAULT_PLATE_TOL = 1e-6


@dataclass(frozen=True)
class Finding:
    code: str
    severity: str
    message: str
    indices: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not any(f.severity == ERROR for f in self.findings)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == ERROR]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == WARNING]

    def __add__(self, other: ValidationReport) -> ValidationReport:
        return ValidationReport(self.findings + other.findings)

    def demoted(self) -> ValidationReport:
        """Copy with every error turned into a warning."""
        return ValidationReport(tuple(replace(f, severity=WARNING) for f in self.findings))

    def format(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}: {len(self.errors)} error(s), "
                 f"{len(self.warnings)} warning(s)"]
        for f in self.findings:
            idx = f" {list(f.indices)}" if f.indices else ""
            lines.append(f"  {f.severity:7s} {f.code}{idx}: {f.message}")
        return "\n".join(lines)


def merge(reports: Sequence[ValidationReport]) -> ValidationReport:
    out = ValidationReport()
    for r in reports:
        out = out + r
    return out


def check_watertight(mesh: Mesh) -> ValidationReport:
    findings = []
    for (a, b), uses in undirected_edges(mesh).items():
        if len(uses) == 1:
            findings.append(Finding("boundary-edge", ERROR, "edge bounds only one face", (a, b)))
        elif len(uses) > 2:
            findings.append(Finding(
                "non-manifold-edge", ERROR, f"edge bounds {len(uses)} faces", (a, b)))
    return ValidationReport(tuple(findings))


def check_winding_consistent(mesh: Mesh) -> ValidationReport:
    """Every shared edge must be traversed once in each direction.

    Boundary edges are exempt, so an open but coherently wound patch passes.
    """
    findings = []
    for (a, b), uses in undirected_edges(mesh).items():
        if len(uses) < 2:
            continue
        if len(set(uses)) != len(uses) or len(uses) > 2:
            findings.append(Finding(
                "inconsistent-winding", ERROR,
                "faces sharing this edge traverse it in the same direction", (a, b)))
    return ValidationReport(tuple(findings))


def signed_volume(mesh: Mesh) -> float:
    """Enclosed volume, positive when faces wind outward for the mesh's convention."""
    if not (check_watertight(mesh).passed and check_winding_consistent(mesh).passed):
        raise NotClosedMesh("signed volume is only defined for closed, consistently wound meshes")
    v = mesh.vertices
    return math.fsum(
        v[a].dot(v[b].cross(v[c])) for a, b, c in mesh.ccw_faces()
    ) / 6.0


def check_orientation(mesh: Mesh) -> ValidationReport:
    if not (check_watertight(mesh).passed and check_winding_consistent(mesh).passed):
        return ValidationReport((Finding(
            "orientation-undefined", WARNING, "mesh is not closed; outward direction unknown"),))
    vol = signed_volume(mesh)
    if vol <= 0:
        return ValidationReport((Finding(
            "inward-orientation", ERROR, f"signed volume {vol:.6g} is not positive"),))
    return ValidationReport()


def _non_collinear_triple(points: Sequence[Vec3]) -> bool:
    return any(
        (b - a).cross(c - a).norm() >= AREA_TOL
        for a, b, c in itertools.combinations(points, 3)
    )


def check_on_build_plate(mesh: Mesh, tol: float = DEFAULT_PLATE_TOL) -> ValidationReport:
    """Everything at z >= -tol and a flat (area) contact with z = 0.

    A point or an edge resting on the plate is rejected: at least three
    non-collinear vertices must lie within ``tol`` of z = 0.
    """
    findings = []
    for i, v in enumerate(mesh.vertices):
        if v.z < -tol:
            findings.append(Finding("below-plate", ERROR, f"z = {v.z:.6g} < 0", (i,)))
    contact = contact_vertices(mesh, tol)
    if not _non_collinear_triple([mesh.vertices[i] for i in contact]):
        if not contact:
            what = "no vertex touches"
        elif len(contact) == 1:
            what = "a single point touches"
        else:
            what = "only a line touches"
        findings.append(Finding(
            "no-flat-base", ERROR, f"{what} the plate; need a flat base", tuple(contact)))
    return ValidationReport(tuple(findings))


def contact_vertices(mesh: Mesh, tol: float = DEFAULT_PLATE_TOL) -> list[int]:
    return [i for i, v in enumerate(mesh.vertices) if abs(v.z) <= tol]


def check_regular(mesh: Mesh, s: float, tol: float) -> ValidationReport:
    findings = []
    v = mesh.vertices
    for a, b in undirected_edges(mesh):
        length = (v[a] - v[b]).norm()
        if abs(length - s) > tol:
            findings.append(Finding(
                "irregular-edge", ERROR, f"length {length:.12g} differs from {s:.12g}", (a, b)))
    return ValidationReport(tuple(findings))


def euler_characteristic(mesh: Mesh) -> int:
    return mesh.n_vertices - len(undirected_edges(mesh)) + mesh.n_faces


def check_closed_solid(mesh: Mesh) -> ValidationReport:
    """Watertight, consistently wound, outward facing."""
    report = check_watertight(mesh) + check_winding_consistent(mesh)
    if report.passed:
        report = report + check_orientation(mesh)
    return report
