"""Value types for indexed triangle meshes and rigid transforms.

Everything here is immutable.  Vertex and face order are significant and are
never changed by any operation, so index ``i`` always names the same
geometric vertex as a mesh moves through the pipeline.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DegenerateFace,
    DuplicateIndexInFace,
    IndexOutOfRange,
    NonFiniteCoordinate,
    NotARotation,
)

# Faces whose (doubled) cross product is shorter than this are degenerate.
AREA_TOL = 1e-12
ROTATION_TOL = 1e-12


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def __add__(self, other):  # type: ignore[override]
        return Vec3(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other):
        return Vec3(self.x - other[0], self.y - other[1], self.z - other[2])

    def __neg__(self):
        return Vec3(-self.x, -self.y, -self.z)

    def scaled(self, k: float) -> Vec3:
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1] + self.z * other[2]

    def cross(self, other) -> Vec3:
        ox, oy, oz = other
        return Vec3(
            self.y * oz - self.z * oy,
            self.z * ox - self.x * oz,
            self.x * oy - self.y * ox,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self) -> Vec3:
        n = self.norm()
        return Vec3(self.x / n, self.y / n, self.z / n)


def vec3(p: Iterable[float]) -> Vec3:
    """Coerce a 3-sequence to a finite :class:`Vec3`."""
    x, y, z = (float(c) for c in p)
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise NonFiniteCoordinate(f"non-finite coordinate in {(x, y, z)!r}")
    return Vec3(x, y, z)


class TriFace(NamedTuple):
    i0: int
    i1: int
    i2: int

    def reversed(self) -> TriFace:
        """Opposite winding, keeping the first corner in place."""
        return TriFace(self.i0, self.i2, self.i1)


class Winding(enum.Enum):
    """Per-face vertex order convention, as seen from outside the solid."""

    CW_FROM_OUTSIDE = "cw"
    CCW_FROM_OUTSIDE = "ccw"

    def opposite(self) -> Winding:
        if self is Winding.CW_FROM_OUTSIDE:
            return Winding.CCW_FROM_OUTSIDE
        return Winding.CW_FROM_OUTSIDE


@dataclass(frozen=True)
class Mat3:
    """3x3 matrix stored as three row tuples."""

    rows: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        rows = tuple(tuple(float(v) for v in r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> Mat3:
        return cls(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))

    def __getitem__(self, ij: tuple[int, int]) -> float:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> Mat3:
        return Mat3(tuple(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            cols = list(zip(*other.rows))
            return Mat3(
                tuple(
                    tuple(math.fsum(a * b for a, b in zip(r, c)) for c in cols)
                    for r in self.rows
                )
            )
        x, y, z = other
        return Vec3(*(r[0] * x + r[1] * y + r[2] * z for r in self.rows))

    def det(self) -> float:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def orthogonality_error(self) -> float:
        """Largest entry of ``|M^T M - I|``."""
        mtm = self.transpose() @ self
        return max(
            abs(mtm[i, j] - (1.0 if i == j else 0.0))
            for i in range(3)
            for j in range(3)
        )

    def is_rotation(self, tol: float = ROTATION_TOL) -> bool:
        return self.orthogonality_error() < tol and abs(self.det() - 1.0) < tol

    def max_abs_diff(self, other: Mat3) -> float:
        return max(
            abs(self[i, j] - other[i, j]) for i in range(3) for j in range(3)
        )


@dataclass(frozen=True)
class RigidTransform:
    """Rotation followed by translation: ``p -> rotation @ p + translation``."""

    rotation: Mat3 = field(default_factory=Mat3.identity)
    translation: Vec3 = Vec3(0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.rotation.is_rotation():
            raise NotARotation(
                "rotation part is not orthonormal with det +1 "
                f"(orthogonality error {self.rotation.orthogonality_error():.3g}, "
                f"det {self.rotation.det():.17g})"
            )
        object.__setattr__(self, "translation", vec3(self.translation))

    @classmethod
    def identity(cls) -> RigidTransform:
        return cls()

    def apply(self, p) -> Vec3:
        return (self.rotation @ p) + self.translation


def compose(outer: RigidTransform, inner: RigidTransform) -> RigidTransform:
    """Transform equivalent to applying ``inner`` first, then ``outer``."""
    return RigidTransform(
        outer.rotation @ inner.rotation,
        (outer.rotation @ inner.translation) + outer.translation,
    )


def _cross_of(a: Vec3, b: Vec3, c: Vec3) -> Vec3:
    return (b - a).cross(c - a)


@dataclass(frozen=True)
class Mesh:
    """Indexed triangle mesh with an explicit winding convention.

    Construction validates every face: indices in range, pairwise distinct,
    and not collinear.
    """

    vertices: tuple[Vec3, ...]
    faces: tuple[TriFace, ...]
    convention: Winding = Winding.CCW_FROM_OUTSIDE

    def __post_init__(self):
        verts = tuple(vec3(v) for v in self.vertices)
        faces = tuple(TriFace(*(int(i) for i in f)) for f in self.faces)
        if not verts or not faces:
            raise ValueError("a mesh needs at least one vertex and one face")
        n = len(verts)
        for fi, face in enumerate(faces):
            for idx in face:
                if idx < 0 or idx >= n:
                    raise IndexOutOfRange(
                        f"face {fi} {tuple(face)} references vertex {idx}; "
                        f"mesh has {n} vertices"
                    )
            if len(set(face)) != 3:
                raise DuplicateIndexInFace(f"face {fi} {tuple(face)} repeats an index")
            cross = _cross_of(verts[face.i0], verts[face.i1], verts[face.i2])
            if cross.norm() < AREA_TOL:
                raise DegenerateFace(f"face {fi} {tuple(face)} has (near) zero area")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "convention", Winding(self.convention))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def ccw_faces(self) -> tuple[TriFace, ...]:
        """Faces re-expressed counter-clockwise from outside."""
        if self.convention is Winding.CCW_FROM_OUTSIDE:
            return self.faces
        return tuple(f.reversed() for f in self.faces)

    def cw_faces(self) -> tuple[TriFace, ...]:
        if self.convention is Winding.CW_FROM_OUTSIDE:
            return self.faces
        return tuple(f.reversed() for f in self.faces)

    def with_vertices(self, vertices: Sequence) -> Mesh:
        return Mesh(tuple(vertices), self.faces, self.convention)

    def flipped(self) -> Mesh:
        """Same convention label, every face wound the other way."""
        return Mesh(self.vertices, tuple(f.reversed() for f in self.faces), self.convention)

    def with_convention(self, convention: Winding) -> Mesh:
        """Same solid, faces re-stored under ``convention``."""
        if convention is self.convention:
            return self
        return Mesh(self.vertices, tuple(f.reversed() for f in self.faces), convention)

    def face_vertices(self, face_index: int) -> tuple[Vec3, Vec3, Vec3]:
        f = self.faces[face_index]
        return self.vertices[f.i0], self.vertices[f.i1], self.vertices[f.i2]


def mesh_new(
    vertices: Sequence[Sequence[float]],
    faces: Sequence[Sequence[int]],
    convention: Winding = Winding.CCW_FROM_OUTSIDE,
) -> Mesh:
    return Mesh(tuple(vertices), tuple(faces), convention)


def face_normal(mesh: Mesh, face_index: int) -> Vec3:
    """Unit outward normal of a face, honouring the mesh's winding convention."""
    a, b, c = mesh.face_vertices(face_index)
    cross = _cross_of(a, b, c)
    length = cross.norm()
    if length < AREA_TOL:
        raise DegenerateFace(f"face {face_index} has no well-defined normal")
    if mesh.convention is Winding.CW_FROM_OUTSIDE:
        cross = -cross
    return cross.scaled(1.0 / length)


def apply_transform(mesh: Mesh, t: RigidTransform) -> Mesh:
    return mesh.with_vertices([t.apply(v) for v in mesh.vertices])


def edge_multiset(mesh: Mesh) -> list[tuple[int, int]]:
    """Directed edges in face order, three per face: (i0,i1), (i1,i2), (i2,i0)."""
    edges = []
    for a, b, c in mesh.faces:
        edges.extend(((a, b), (b, c), (c, a)))
    return edges


def undirected_edges(mesh: Mesh) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Map each undirected edge (lo, hi) to its directed occurrences, in first-seen order."""
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, b in edge_multiset(mesh):
        groups.setdefault((min(a, b), max(a, b)), []).append((a, b))
    return groups
