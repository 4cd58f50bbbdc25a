"""OpenSCAD ``polyhedron`` source generation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import Mesh


class ScadKeyword(enum.Enum):
    TRIANGLES = "triangles"
    FACES = "faces"


@dataclass(frozen=True)
class ScadOptions:
    """Formatting for :func:`emit_openscad`.

    ``triangles`` is the keyword older OpenSCAD releases use; current ones
    prefer ``faces``.  Coordinates are rounded to ``decimals`` places.  With
    ``fixed`` false, trailing zeros are trimmed down to one fractional digit
    (``0.500`` prints as ``0.5``, ``1.000`` as ``1.0``); with ``fixed`` true
    every coordinate keeps exactly ``decimals`` digits.
    """

    keyword: ScadKeyword = ScadKeyword.FACES
    decimals: int = 3
    fixed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "keyword", ScadKeyword(self.keyword))
        if not 1 <= self.decimals <= 17:
            raise ValueError(f"decimals must be in [1, 17], got {self.decimals}")


def format_coord(x: float, decimals: int = 3, fixed: bool = False) -> str:
    """Positional (never exponent) decimal rendering of ``x``.

    >>> format_coord(0.7071067811865476)
    '0.707'
    >>> format_coord(-1e-17)
    '0.0'
    >>> format_coord(20.0, 2, fixed=True)
    '20.00'
    """
    text = f"{x:.{decimals}f}"
    if not fixed:
        text = text.rstrip("0")
        if text.endswith("."):
            text += "0"
    if text.lstrip("-").strip("0.") == "":
        # any rounding of zero, including "-0.000"
        text = text.lstrip("-")
    return text


def _point(p, opts: ScadOptions) -> str:
    return "[" + ", ".join(format_coord(c, opts.decimals, opts.fixed) for c in p) + "]"


def emit_openscad(mesh: Mesh, opts: ScadOptions | None = None) -> str:
    """Render ``mesh`` as a single OpenSCAD ``polyhedron`` statement.

    OpenSCAD wants faces clockwise seen from outside; meshes stored the other
    way are reversed here.  No trailing commas are written.
    """
    opts = opts or ScadOptions()
    points = ", ".join(_point(v, opts) for v in mesh.vertices)
    faces = ", ".join(f"[{a}, {b}, {c}]" for a, b, c in mesh.cw_faces())
    return f"polyhedron(points = [{points}], {opts.keyword.value} = [{faces}]);\n"
