"""Exit criteria for the build.  Each test prints a PASS/FAIL line in the
terminal summary under "acceptance criteria"."""

import io
import math
import time

from polyprint.builders import BipyramidSpec, apex_height, equilateral_bipyramid, regular_octahedron
from polyprint.cli import run
from polyprint.core import apply_transform, undirected_edges
from polyprint.orient import flatten, lay_flat, scale_uniform, solve_flatten_angle
from polyprint.scad import format_coord
from polyprint.stl import emit_stl_ascii, emit_stl_binary, parse_stl, weld_vertices
from polyprint.validate import (
    check_on_build_plate,
    check_watertight,
    check_winding_consistent,
    contact_vertices,
    euler_characteristic,
    signed_volume,
)

from oracles import (
    REFERENCE_FACES,
    REFERENCE_RAW,
    REFERENCE_ROTATED,
    REFERENCE_SCALED,
    exact_scaled,
    pairwise_edge_lengths,
    tetra_volume_about_centroid,
)
from test_scad import parse_polyhedron


def pipeline_octahedron():
    """Build, lay flat on face 0 ([4,1,0]), scale by 20."""
    m = regular_octahedron(1.0)
    return scale_uniform(apply_transform(m, lay_flat(m, 0)), 20.0)


def test_c1_apex_height(criterion):
    """Criterion 1: apex height sqrt(0.5) within 1e-12, displayed as 0.707"""
    h = apex_height(4, 1.0)
    assert abs(h - math.sqrt(0.5)) <= 1e-12
    assert format_coord(h, 3) == "0.707"


def test_c2_flatten_angle(criterion):
    """Criterion 2: tan(alpha) = -sqrt2, sin = sqrt6/3, cos = -sqrt3/3 within 1e-12"""
    sol = solve_flatten_angle((0.5, 0.5, math.sqrt(0.5)))
    assert abs(math.tan(sol.alpha) + math.sqrt(2)) <= 1e-12
    assert abs(sol.sin_alpha - math.sqrt(6) / 3) <= 1e-12
    assert abs(sol.cos_alpha + math.sqrt(3) / 3) <= 1e-12
    assert abs(math.sin(sol.alpha) - math.sqrt(6) / 3) <= 1e-12
    assert abs(math.cos(sol.alpha) + math.sqrt(3) / 3) <= 1e-12
    # -54.74 degrees is the other root and must not be returned
    assert abs(sol.degrees + 54.7356) > 1.0


def test_c3_rotated_table(criterion):
    """Criterion 3: 18 rotated coordinates within 2e-3 of the printed table"""
    m = regular_octahedron(1.0)
    rot = solve_flatten_angle(m.vertices[4]).rotation
    via_x_rotation = [rot @ v for v in m.vertices]
    via_lay_flat = flatten(m, 0).vertices
    for pts in (via_x_rotation, via_lay_flat):
        errs = [abs(a - b) for p, ref in zip(pts, REFERENCE_ROTATED) for a, b in zip(p, ref)]
        assert len(errs) == 18 and max(errs) <= 2e-3


def test_c4_scaled_table(criterion):
    """Criterion 4: 18 scaled coordinates within 4e-2 of the printed table, 1e-9 of exact"""
    pts = pipeline_octahedron().vertices
    printed = [abs(a - b) for p, ref in zip(pts, REFERENCE_SCALED) for a, b in zip(p, ref)]
    exact = [abs(a - b) for p, ref in zip(pts, exact_scaled()) for a, b in zip(p, ref)]
    assert len(printed) == len(exact) == 18
    assert max(printed) <= 4e-2
    assert max(exact) <= 1e-9


def test_c5_openscad_golden(criterion):
    """Criterion 5: gen ... --emit scad --scad-keyword triangles reproduces the listing"""
    out, err = io.StringIO(), io.StringIO()
    code = run(["gen", "octahedron", "--side", "1", "--emit", "scad",
                "--scad-keyword", "triangles", "--decimals", "3"], out, err)
    assert code == 0, err.getvalue()
    keyword, points, faces = parse_polyhedron(out.getvalue())
    assert keyword == "triangles"
    assert points == REFERENCE_RAW
    assert faces == REFERENCE_FACES


def test_c6_mesh_invariants(criterion):
    """Criterion 6: builders over s in {0.5, 1, 20}, n in {3, 4, 5} are closed, regular solids"""
    for n in (3, 4, 5):
        for s in (0.5, 1.0, 20.0):
            m = equilateral_bipyramid(BipyramidSpec(n, s))
            assert check_watertight(m).passed
            assert check_winding_consistent(m).passed
            assert euler_characteristic(m) == 2
            lengths = pairwise_edge_lengths(m.vertices, m.faces)
            assert max(abs(l - s) for l in lengths.values()) <= 1e-9 * s
            vol = signed_volume(m)
            assert vol > 0
            if n == 4:
                oracle = tetra_volume_about_centroid(m.vertices, m.ccw_faces())
                assert abs(vol - math.sqrt(2) / 3 * s**3) <= 1e-9 * vol
                assert abs(vol - oracle) <= 1e-9 * vol


def test_c7_lay_flat_every_face(criterion):
    """Criterion 7: every octahedron face lays flat, exactly 3 contacts at tol 1e-6, < 1 s"""
    start = time.perf_counter()
    m = regular_octahedron(1.0)
    for face in range(8):
        out = apply_transform(m, lay_flat(m, face))
        assert check_on_build_plate(out, 1e-6).passed
        assert len(contact_vertices(out, 1e-6)) == 3
    assert time.perf_counter() - start < 1.0


def test_c8_stl_round_trip(criterion):
    """Criterion 8: ASCII/binary STL round trip keeps V,E,F = 6,12,8 and volume; binary is 484 bytes"""
    m = pipeline_octahedron()
    vol = signed_volume(m)
    binary = emit_stl_binary(m)
    assert len(binary) == 484
    for payload, rel in ((emit_stl_ascii(m), 1e-9), (binary, 1e-5)):
        back = weld_vertices(parse_stl(payload), 1e-6)
        counts = (back.n_vertices, len(undirected_edges(back)), back.n_faces)
        assert counts == (6, 12, 8)
        assert check_watertight(back).passed and check_winding_consistent(back).passed
        assert abs(signed_volume(back) - vol) <= rel * vol


def test_c9_plate_ready_stl(criterion, tmp_path):
    """Criterion 9: the generated STL validates as watertight and plate-ready"""
    path = tmp_path / "octahedron.stl"
    err = io.StringIO()
    assert run(["gen", "octahedron", "--side", "1", "--lay-flat-face", "0", "--scale", "20",
                "--emit", "stl-binary", "-o", str(path)], io.StringIO(), err) == 0, err.getvalue()
    assert path.stat().st_size == 484
    out = io.StringIO()
    assert run(["validate", str(path)], out, io.StringIO()) == 0, out.getvalue()
    assert "PASS" in out.getvalue()
