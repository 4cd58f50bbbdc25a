"""Equilateral polyhedra for 3D printing: build, lay flat, validate, emit."""

__version__ = "0.1.0"

from .builders import BipyramidSpec, apex_height, equilateral_bipyramid, regular_octahedron
from .core import (
    Mat3,
    Mesh,
    RigidTransform,
    TriFace,
    Vec3,
    Winding,
    apply_transform,
    compose,
    edge_multiset,
    face_normal,
    mesh_new,
)
from .orient import (
    FlattenSolution,
    lay_flat,
    rotation_about_x,
    scale_uniform,
    solve_flatten_angle,
)
from .scad import ScadKeyword, ScadOptions, emit_openscad
from .stl import TriangleSoup, emit_stl_ascii, emit_stl_binary, parse_stl, weld_vertices
from .validate import (
    ValidationReport,
    check_on_build_plate,
    check_regular,
    check_watertight,
    check_winding_consistent,
    euler_characteristic,
    signed_volume,
)
