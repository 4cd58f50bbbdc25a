"""Analytic construction of equilateral bipyramids (the octahedron is n = 4)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Mesh, TriFace, Vec3, Winding
from .errors import NonPositiveSide, UnsupportedBaseCount

# (apex height / side)^2 = 1 - 1 / (4 sin^2(pi/n)), kept in closed form so the
# n = 4 case is exactly sqrt(0.5) rather than an evaluation of sin(pi/4).
_HEIGHT_RATIO_SQ = {
    3: 2.0 / 3.0,
    4: 0.5,
    5: (5.0 - math.sqrt(5.0)) / 10.0,
}


@dataclass(frozen=True)
class BipyramidSpec:
    n: int
    s: float

    def __post_init__(self):
        _check(self.n, self.s)


def _check(n, s):
    if n not in _HEIGHT_RATIO_SQ:
        raise UnsupportedBaseCount(
            f"equilateral bipyramids exist only for 3, 4 or 5 base sides, got {n}"
        )
    if not (s > 0 and math.isfinite(s)):
        raise NonPositiveSide(f"side length must be positive and finite, got {s}")


def apex_height(n: int, s: float) -> float:
    """Height of an apex above the base plane so that every apex edge has length ``s``.

    Equals ``sqrt(s**2 - r**2)`` with ``r = s / (2 sin(pi/n))`` the base
    circumradius.
    """
    _check(n, s)
    return s * math.sqrt(_HEIGHT_RATIO_SQ[n])


def _turn(k: int, n: int) -> tuple[float, float]:
    # cos/sin of 2*pi*k/n, exact on quarter turns so the square base has exact corners
    quarter, rem = divmod(4 * k, n)
    if rem == 0:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[quarter % 4]
    angle = 2.0 * math.pi * k / n
    return math.cos(angle), math.sin(angle)


def equilateral_bipyramid(spec: BipyramidSpec) -> Mesh:
    """Bipyramid on a regular n-gon whose edges all have length ``spec.s``.

    The base starts at the origin and walks counter-clockwise (seen from +z)
    with its first edge along +x; for n = 4 this is the square
    (0,0,0), (s,0,0), (s,s,0), (0,s,0).  Vertex n is the upper apex, n + 1 the
    lower.  Faces are fanned apex-first, upper ring then lower ring, and are
    stored clockwise from outside (OpenSCAD order).
    """
    n, s = spec.n, float(spec.s)
    base = [Vec3(0.0, 0.0, 0.0)]
    for k in range(n - 1):
        c, si = _turn(k, n)
        p = base[-1]
        base.append(Vec3(p.x + s * c, p.y + s * si, 0.0))

    cx = math.fsum(p.x for p in base) / n
    cy = math.fsum(p.y for p in base) / n
    h = apex_height(n, s)
    top, bottom = n, n + 1
    vertices = base + [Vec3(cx, cy, h), Vec3(cx, cy, -h)]

    faces = [TriFace(top, (k + 1) % n, k) for k in range(n)]
    faces += [TriFace(bottom, k, (k + 1) % n) for k in range(n)]
    return Mesh(tuple(vertices), tuple(faces), Winding.CW_FROM_OUTSIDE)


def regular_octahedron(s: float) -> Mesh:
    """Square bipyramid with side ``s``; vertex and face order as in the classic listing.

    >>> m = regular_octahedron(1.0)
    >>> m.vertices[4]
    Vec3(x=0.5, y=0.5, z=0.7071067811865476)
    >>> [tuple(f) for f in m.faces[:2]]
    [(4, 1, 0), (4, 2, 1)]
    """
    return equilateral_bipyramid(BipyramidSpec(4, s))
