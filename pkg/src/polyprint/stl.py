"""STL reading and writing (ASCII and binary) plus vertex welding.

Facets are always written counter-clockwise seen from outside with the
normal recomputed from the geometry.  Reading gives a :class:`TriangleSoup`;
:func:`weld_vertices` turns that back into an indexed :class:`Mesh`.
"""

from __future__ import annotations

import logging
import math
import re
import struct
from dataclasses import dataclass
from typing import NamedTuple

from .core import AREA_TOL, Mesh, TriFace, Vec3, Winding, face_normal, vec3
from .errors import MalformedStl, NotClosedMesh, TooManyFacets
from .validate import (
    WARNING,
    Finding,
    ValidationReport,
    check_watertight,
    check_winding_consistent,
)

log = logging.getLogger(__name__)

# Fixed 80-byte header for binary output.  Must not start with b"solid".
BINARY_HEADER = b"polyprint binary STL".ljust(80, b" ")
_FACET = struct.Struct("<12fH")
_COUNT = struct.Struct("<I")
MAX_FACETS = 2**32 - 1

DEFAULT_WELD_TOL = 1e-6
NORMAL_MISMATCH_TOL = 1e-3


class Facet(NamedTuple):
    normal: Vec3
    v0: Vec3
    v1: Vec3
    v2: Vec3


@dataclass(frozen=True)
class TriangleSoup:
    facets: tuple[Facet, ...]

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    @classmethod
    def from_mesh(cls, mesh: Mesh) -> TriangleSoup:
        return cls(tuple(_facets(mesh)))


def _require_closed(mesh: Mesh):
    if not (check_watertight(mesh).passed and check_winding_consistent(mesh).passed):
        raise NotClosedMesh("STL output needs a watertight, consistently wound mesh")


def _facets(mesh: Mesh):
    v = mesh.vertices
    for fi, (a, b, c) in enumerate(mesh.ccw_faces()):
        yield Facet(face_normal(mesh, fi), v[a], v[b], v[c])


def emit_stl_ascii(mesh: Mesh, solid_name: str = "polyprint") -> str:
    _require_closed(mesh)
    name = solid_name.strip()
    out = [f"solid {name}"]
    for facet in _facets(mesh):
        out.append("  facet normal " + " ".join(repr(c) for c in facet.normal))
        out.append("    outer loop")
        for p in facet[1:]:
            out.append("      vertex " + " ".join(repr(c) for c in p))
        out.append("    endloop")
        out.append("  endfacet")
    out.append(f"endsolid {name}")
    return "\n".join(out) + "\n"


def emit_stl_binary(mesh: Mesh) -> bytes:
    _require_closed(mesh)
    if mesh.n_faces > MAX_FACETS:
        raise TooManyFacets(f"{mesh.n_faces} facets exceed the binary STL limit of {MAX_FACETS}")
    chunks = [BINARY_HEADER, _COUNT.pack(mesh.n_faces)]
    for facet in _facets(mesh):
        chunks.append(_FACET.pack(*facet.normal, *facet.v0, *facet.v1, *facet.v2, 0))
    return b"".join(chunks)


def _parse_binary(data: bytes) -> TriangleSoup:
    if len(data) < 84:
        raise MalformedStl(f"binary STL needs at least 84 bytes, got {len(data)}")
    (count,) = _COUNT.unpack_from(data, 80)
    expected = 84 + 50 * count
    if len(data) != expected:
        raise MalformedStl(
            f"binary STL declares {count} facets: expected {expected} bytes, got {len(data)}"
        )
    facets = []
    for k, vals in enumerate(_FACET.iter_unpack(data[84:])):
        try:
            n, a, b, c = (vec3(vals[i:i + 3]) for i in (0, 3, 6, 9))
        except ValueError as exc:
            raise MalformedStl(f"facet {k} at byte {84 + 50 * k}: {exc}") from None
        facets.append(Facet(n, a, b, c))
    return TriangleSoup(tuple(facets))


_TOKEN = re.compile(r"\S+")


def _parse_ascii(text: str) -> TriangleSoup:
    # tokens paired with their 1-based line numbers
    tokens = [
        (m.group(0), lineno)
        for lineno, line in enumerate(text.splitlines(), 1)
        for m in _TOKEN.finditer(line)
    ]
    pos = 0

    def fail(msg):
        line = tokens[pos][1] if pos < len(tokens) else (tokens[-1][1] if tokens else 1)
        raise MalformedStl(f"line {line}: {msg}")

    def expect(word):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0].lower() != word:
            got = tokens[pos][0] if pos < len(tokens) else "end of file"
            fail(f"expected {word!r}, got {got!r}")
        pos += 1

    def number_triple():
        nonlocal pos
        vals = []
        for _ in range(3):
            if pos >= len(tokens):
                fail("unexpected end of file in coordinate triple")
            try:
                vals.append(float(tokens[pos][0]))
            except ValueError:
                fail(f"bad number {tokens[pos][0]!r}")
            if not math.isfinite(vals[-1]):
                fail(f"non-finite number {tokens[pos][0]!r}")
            pos += 1
        return Vec3(*vals)

    expect("solid")
    # solid name runs to the end of its line
    first_line = tokens[pos - 1][1]
    while pos < len(tokens) and tokens[pos][1] == first_line:
        pos += 1

    facets = []
    while True:
        if pos >= len(tokens):
            fail("missing 'endsolid'")
        word = tokens[pos][0].lower()
        if word == "endsolid":
            pos += 1
            end_line = tokens[pos - 1][1]
            while pos < len(tokens) and tokens[pos][1] == end_line:
                pos += 1
            if pos != len(tokens):
                fail("content after 'endsolid'")
            break
        expect("facet")
        expect("normal")
        normal = number_triple()
        expect("outer")
        expect("loop")
        corners = []
        for _ in range(3):
            expect("vertex")
            corners.append(number_triple())
        expect("endloop")
        expect("endfacet")
        facets.append(Facet(normal, *corners))
    return TriangleSoup(tuple(facets))


def parse_stl(data: bytes | str) -> TriangleSoup:
    """Read ASCII or binary STL.

    Text input is parsed as ASCII.  Bytes that start with ``solid`` are tried
    as ASCII first; if that fails and the length is consistent with the
    binary facet count, they are read as binary (some exporters put
    ``solid`` in the binary header).  Anything else is binary.
    """
    if isinstance(data, str):
        if not data.strip():
            raise MalformedStl("empty STL input")
        return _parse_ascii(data)
    if not data:
        raise MalformedStl("empty STL input")
    if data.lstrip()[:5].lower() != b"solid":
        return _parse_binary(data)
    try:
        return _parse_ascii(data.decode("ascii"))
    except (UnicodeDecodeError, MalformedStl) as ascii_err:
        if len(data) >= 84:
            (count,) = _COUNT.unpack_from(data, 80)
            if len(data) == 84 + 50 * count:
                return _parse_binary(data)
        if isinstance(ascii_err, UnicodeDecodeError):
            raise MalformedStl(
                f"starts with 'solid' but is neither ASCII STL (non-ASCII byte at "
                f"{ascii_err.start}) nor length-consistent binary STL ({len(data)} bytes)"
            ) from None
        raise


def check_stored_normals(soup: TriangleSoup, tol: float = NORMAL_MISMATCH_TOL) -> ValidationReport:
    """Warn about facets whose stored normal disagrees with their CCW geometry.

    All-zero stored normals are allowed by the format and are skipped, as are
    facets with no area.
    """
    findings = []
    for k, f in enumerate(soup):
        if f.normal == (0.0, 0.0, 0.0):
            continue
        cross = (f.v1 - f.v0).cross(f.v2 - f.v0)
        if cross.norm() < AREA_TOL:
            continue
        err = (cross.normalized() - f.normal.normalized()).norm()
        if err > tol:
            findings.append(Finding(
                "normal-mismatch", WARNING,
                f"stored normal is off from the computed one by {err:.3g}", (k,)))
    return ValidationReport(tuple(findings))


def weld_vertices(soup: TriangleSoup, tol: float = DEFAULT_WELD_TOL, *, return_dropped: bool = False):
    """Merge near-duplicate corners into an indexed, CCW-from-outside mesh.

    Corners within ``tol`` of an existing vertex (max-norm) reuse it; when
    several qualify the earliest wins, so the result depends only on facet
    order.  Facets that collapse or have no area after merging are dropped.

    Args:
        soup: facets as read from an STL file.
        tol: weld distance, same units as the coordinates.
        return_dropped: also return how many facets were discarded.

    Returns:
        The mesh, or ``(mesh, dropped)`` if ``return_dropped``.
    """
    if not tol > 0:
        raise ValueError(f"weld tolerance must be positive, got {tol}")
    vertices: list[Vec3] = []
    grid: dict[tuple[int, int, int], list[int]] = {}

    def index_of(p: Vec3) -> int:
        cell = tuple(math.floor(c / tol) for c in p)
        best = None
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for i in grid.get((cell[0] + dx, cell[1] + dy, cell[2] + dz), ()):
                        q = vertices[i]
                        if max(abs(p.x - q.x), abs(p.y - q.y), abs(p.z - q.z)) <= tol:
                            if best is None or i < best:
                                best = i
        if best is not None:
            return best
        vertices.append(p)
        grid.setdefault(cell, []).append(len(vertices) - 1)
        return len(vertices) - 1

    faces = []
    dropped = 0
    for f in soup:
        tri = TriFace(index_of(f.v0), index_of(f.v1), index_of(f.v2))
        if len(set(tri)) < 3:
            dropped += 1
            continue
        a, b, c = (vertices[i] for i in tri)
        if (b - a).cross(c - a).norm() < AREA_TOL:
            dropped += 1
            continue
        faces.append(tri)
    if dropped:
        log.warning("dropped %d degenerate facet(s) while welding", dropped)
    if not faces:
        raise MalformedStl("no non-degenerate facets left after welding")
    if dropped:
        # renumber so corners used only by dropped facets disappear
        keep: dict[int, int] = {}
        for tri in faces:
            for i in tri:
                keep.setdefault(i, len(keep))
        vertices = [vertices[i] for i in sorted(keep, key=keep.get)]
        faces = [TriFace(*(keep[i] for i in tri)) for tri in faces]
    mesh = Mesh(tuple(vertices), tuple(faces), Winding.CCW_FROM_OUTSIDE)
    return (mesh, dropped) if return_dropped else mesh
