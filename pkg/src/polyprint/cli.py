"""Command-line front end.

Pipeline order for ``gen`` is fixed: build, lay flat, scale, validate, emit.
Exit status: 0 success, 1 validation failure, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .builders import BipyramidSpec, equilateral_bipyramid
from .core import Mesh, apply_transform, undirected_edges
from .errors import PolyprintError
from .orient import lay_flat, scale_uniform
from .scad import ScadKeyword, ScadOptions, emit_openscad, format_coord
from .stl import (
    DEFAULT_WELD_TOL,
    check_stored_normals,
    emit_stl_ascii,
    emit_stl_binary,
    parse_stl,
    weld_vertices,
)
from .validate import (
    DEFAULT_PLATE_TOL,
    ValidationReport,
    check_closed_solid,
    check_on_build_plate,
    check_regular,
    euler_characteristic,
    signed_volume,
)

EMIT_CHOICES = ("scad", "stl-ascii", "stl-binary")


class UsageError(Exception):
    pass


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return value


def _shape_flags(p):
    p.add_argument("--side", type=_positive, default=1.0, help="edge length (default 1)")
    p.add_argument("--base-sides", type=int, choices=(3, 4, 5), default=None,
                   help="sides of the bipyramid base (octahedron: 4)")
    p.add_argument("--lay-flat-face", type=int, default=None, metavar="IDX",
                   help="face to put on the build plate, in builder face order")
    p.add_argument("--scale", type=_positive, default=None, metavar="K",
                   help="uniform scale applied after lay-flat")


def _emit_flags(p, default_emit):
    p.add_argument("--emit", choices=EMIT_CHOICES, default=default_emit)
    p.add_argument("--scad-keyword", choices=[k.value for k in ScadKeyword], default="faces")
    p.add_argument("--decimals", type=int, default=3)
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
    p.add_argument("--force", action="store_true",
                   help="emit even if validation fails (errors become warnings)")


def _tol_flags(p, weld=False):
    p.add_argument("--tol", type=_positive, default=DEFAULT_PLATE_TOL,
                   help=f"build plate tolerance (default {DEFAULT_PLATE_TOL:g})")
    if weld:
        p.add_argument("--weld-tol", type=_positive, default=DEFAULT_WELD_TOL,
                       help=f"vertex weld tolerance (default {DEFAULT_WELD_TOL:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyprint",
        description="Build equilateral polyhedra, lay them flat for printing, "
                    "and write OpenSCAD or STL.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build a solid and emit it")
    gen.add_argument("shape", choices=("octahedron", "bipyramid"))
    _shape_flags(gen)
    _emit_flags(gen, "scad")
    _tol_flags(gen)

    info = sub.add_parser("info", help="print vertex tables for each pipeline stage")
    _shape_flags(info)
    info.add_argument("--decimals", type=int, default=3)

    val = sub.add_parser("validate", help="check an STL file for printability")
    val.add_argument("file")
    _tol_flags(val, weld=True)

    conv = sub.add_parser("convert", help="convert between STL flavours and OpenSCAD")
    conv.add_argument("input")
    conv.add_argument("output")
    conv.add_argument("--emit", choices=EMIT_CHOICES, default=None,
                      help="output format (default: from extension, .scad or binary STL)")
    conv.add_argument("--scad-keyword", choices=[k.value for k in ScadKeyword], default="faces")
    conv.add_argument("--decimals", type=int, default=3)
    conv.add_argument("--force", action="store_true")
    _tol_flags(conv, weld=True)
    return parser


def _base_sides(args) -> int:
    n = args.base_sides if args.base_sides is not None else 4
    if getattr(args, "shape", None) == "octahedron" and n != 4:
        raise UsageError("an octahedron has 4 base sides; use 'gen bipyramid' for others")
    return n


def _stages(args) -> list[tuple[str, Mesh]]:
    """Meshes after each requested step: raw, then flattened, then scaled."""
    mesh = equilateral_bipyramid(BipyramidSpec(_base_sides(args), args.side))
    stages = [("raw", mesh)]
    if args.lay_flat_face is not None:
        mesh = apply_transform(mesh, lay_flat(mesh, args.lay_flat_face))
        stages.append((f"flattened on face {args.lay_flat_face}", mesh))
    if args.scale is not None:
        mesh = scale_uniform(mesh, args.scale)
        stages.append((f"scaled by {args.scale:g}", mesh))
    return stages


def _render(mesh: Mesh, args, emit: str) -> str | bytes:
    if emit == "scad":
        opts = ScadOptions(ScadKeyword(args.scad_keyword), args.decimals)
        return emit_openscad(mesh, opts)
    if emit == "stl-ascii":
        return emit_stl_ascii(mesh)
    return emit_stl_binary(mesh)


def _write(path: str, payload: str | bytes, out):
    if path == "-":
        if isinstance(payload, bytes):
            buf = getattr(out, "buffer", None)
            if buf is None:
                raise UsageError("refusing to write binary STL to a text stream; use -o")
            buf.write(payload)
            buf.flush()
        else:
            out.write(payload)
        return
    target = Path(path)
    if isinstance(payload, bytes):
        target.write_bytes(payload)
    else:
        target.write_text(payload, encoding="ascii", newline="\n")


def _gate(report: ValidationReport, force: bool, err) -> bool:
    """Print a failing report; return True if emission may go ahead."""
    if report.passed:
        return True
    if force:
        print(report.demoted().format(), file=err)
        return True
    print(report.format(), file=err)
    return False


def _cmd_gen(args, out, err) -> int:
    if not 1 <= args.decimals <= 17:
        raise UsageError("--decimals must be between 1 and 17")
    stages = _stages(args)
    mesh = stages[-1][1]
    side = args.side * (args.scale or 1.0)
    report = check_closed_solid(mesh) + check_regular(mesh, side, max(args.tol, 1e-9 * side))
    if args.lay_flat_face is not None:
        report = report + check_on_build_plate(mesh, args.tol)
    if not _gate(report, args.force, err):
        return 1
    _write(args.output, _render(mesh, args, args.emit), out)
    return 0


def format_stage(title: str, mesh: Mesh, decimals: int) -> str:
    lines = [f"[{title}]"]
    for i, v in enumerate(mesh.vertices):
        coords = ", ".join(format_coord(c, decimals) for c in v)
        lines.append(f"p{i} = ({coords})")
    return "\n".join(lines)


def _cmd_info(args, out, err) -> int:
    if not 1 <= args.decimals <= 17:
        raise UsageError("--decimals must be between 1 and 17")
    blocks = [format_stage(title, m, args.decimals) for title, m in _stages(args)]
    out.write("\n\n".join(blocks) + "\n")
    return 0


def _load(path: str, weld_tol: float):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        soup = parse_stl(data)
    except PolyprintError as exc:
        raise UsageError(f"{path}: {exc}") from None
    mesh, dropped = weld_vertices(soup, weld_tol, return_dropped=True)
    return soup, mesh, dropped


def _cmd_validate(args, out, err) -> int:
    soup, mesh, dropped = _load(args.file, args.weld_tol)
    report = check_closed_solid(mesh) + check_on_build_plate(mesh, args.tol)
    report = report + check_stored_normals(soup)
    closed = check_closed_solid(mesh).passed
    print(f"file: {args.file}", file=out)
    print(f"facets: {len(soup)} (dropped as degenerate: {dropped})", file=out)
    print(f"vertices: {mesh.n_vertices}  edges: {len(undirected_edges(mesh))}  "
          f"faces: {mesh.n_faces}  euler: {euler_characteristic(mesh)}", file=out)
    if closed:
        print(f"volume: {signed_volume(mesh)!r}", file=out)
    print(report.format(), file=out)
    return 0 if report.passed else 1


def _cmd_convert(args, out, err) -> int:
    if not 1 <= args.decimals <= 17:
        raise UsageError("--decimals must be between 1 and 17")
    _, mesh, _ = _load(args.input, args.weld_tol)
    emit = args.emit or ("scad" if args.output.lower().endswith(".scad") else "stl-binary")
    if not _gate(check_closed_solid(mesh), args.force, err):
        return 1
    _write(args.output, _render(mesh, args, emit), out)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "info": _cmd_info,
    "validate": _cmd_validate,
    "convert": _cmd_convert,
}


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out, err)
    except (UsageError, PolyprintError) as exc:
        print(f"polyprint: error: {exc}", file=err)
        return 2


def main():
    sys.exit(run())
