"""Rigid re-orientation onto the build plate and uniform scaling."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Mat3,
    Mesh,
    RigidTransform,
    Vec3,
    apply_transform,
    face_normal,
)
from .errors import (
    FaceIndexOutOfRange,
    InvertedMesh,
    NonPositiveFactor,
    NotClosedMesh,
    OnAxisPoint,
)
from .validate import check_watertight, check_winding_consistent, signed_volume

DOWN = Vec3(0.0, 0.0, -1.0)
# Below this |n x down| the face normal is treated as (anti)parallel to -z.
_PARALLEL_TOL = 1e-12


def rotation_about_x(alpha: float) -> Mat3:
    return _x_rotation(math.sin(alpha), math.cos(alpha))


def _x_rotation(sin_a: float, cos_a: float) -> Mat3:
    return Mat3(
        (
            (1.0, 0.0, 0.0),
            (0.0, cos_a, -sin_a),
            (0.0, sin_a, cos_a),
        )
    )


@dataclass(frozen=True)
class FlattenSolution:
    alpha: float
    sin_alpha: float
    cos_alpha: float
    rotation: Mat3

    @property
    def degrees(self) -> float:
        return math.degrees(self.alpha)


def solve_flatten_angle(p) -> FlattenSolution:
    """Angle of the x-axis rotation that brings ``p`` into the plane z = 0.

    Solves ``p.y sin(a) + p.z cos(a) = 0``.  Of the two roots (they differ by
    pi) the one sending ``p`` to y <= 0 is returned; for a body lying at
    y >= 0 that is the root which swings it up above the plate.
    """
    _, y, z = (float(c) for c in p)
    r = math.hypot(y, z)
    if r == 0.0:
        raise OnAxisPoint("point lies on the x axis; every rotation angle keeps it in place")
    sin_a, cos_a = z / r, -y / r
    return FlattenSolution(
        alpha=math.atan2(sin_a, cos_a),
        sin_alpha=sin_a,
        cos_alpha=cos_a,
        rotation=_x_rotation(sin_a, cos_a),
    )


def _align_to_down(n: Vec3) -> Mat3:
    # Rodrigues rotation taking unit vector n onto (0, 0, -1).
    axis = n.cross(DOWN)
    s = axis.norm()
    c = n.dot(DOWN)
    if s < _PARALLEL_TOL:
        if c > 0:
            return Mat3.identity()
        # half turn about +x
        return Mat3(((1.0, 0.0, 0.0), (0.0, -1.0, 0.0), (0.0, 0.0, -1.0)))
    ux, uy, uz = axis.scaled(1.0 / s)
    t = 1.0 - c
    return Mat3(
        (
            (c + t * ux * ux, t * ux * uy - s * uz, t * ux * uz + s * uy),
            (t * uy * ux + s * uz, c + t * uy * uy, t * uy * uz - s * ux),
            (t * uz * ux - s * uy, t * uz * uy + s * ux, c + t * uz * uz),
        )
    )


def lay_flat(mesh: Mesh, face_index: int) -> RigidTransform:
    """Rigid motion that puts face ``face_index`` on z = 0 with the body above it.

    The face's outward normal is turned to point straight down, then the
    whole mesh is lifted so the face plane sits at z = 0.  No in-plane motion
    is added.

    Raises:
        FaceIndexOutOfRange: bad face index.
        NotClosedMesh: mesh is not watertight and consistently wound.
        InvertedMesh: faces point inward for the declared convention.
    """
    if not 0 <= face_index < mesh.n_faces:
        raise FaceIndexOutOfRange(
            f"face index {face_index} out of range for mesh with {mesh.n_faces} faces"
        )
    if not (check_watertight(mesh).passed and check_winding_consistent(mesh).passed):
        raise NotClosedMesh("lay_flat needs a watertight, consistently wound mesh")
    if signed_volume(mesh) <= 0:
        raise InvertedMesh(
            f"faces wind inward for declared convention {mesh.convention.name}"
        )

    rot = _align_to_down(face_normal(mesh, face_index))
    face_z = [(rot @ v).z for v in mesh.face_vertices(face_index)]
    lift = -math.fsum(face_z) / 3.0
    return RigidTransform(rot, Vec3(0.0, 0.0, lift))


def scale_uniform(mesh: Mesh, k: float) -> Mesh:
    if not (k > 0 and math.isfinite(k)):
        raise NonPositiveFactor(f"scale factor must be positive and finite, got {k}")
    return mesh.with_vertices([v.scaled(k) for v in mesh.vertices])


def flatten(mesh: Mesh, face_index: int) -> Mesh:
    """Shorthand for applying :func:`lay_flat`'s transform."""
    return apply_transform(mesh, lay_flat(mesh, face_index))
