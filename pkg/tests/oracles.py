"""Independent reference computations used to check the library.

Nothing here imports polyprint; each helper takes plain coordinate arrays.
"""

import itertools
import math

import numpy as np
from scipy.spatial import ConvexHull

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)

# Three-decimal reference tables for the square-base octahedron, as printed
# in the original write-up (raw, rotated onto face [4,1,0], scaled by 20).
REFERENCE_RAW = [
    (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, 0.0),
    (0.0, 1.0, 0.0), (0.5, 0.5, 0.707), (0.5, 0.5, -0.707),
]
REFERENCE_FACES = [
    (4, 1, 0), (4, 2, 1), (4, 3, 2), (4, 0, 3),
    (5, 0, 1), (5, 1, 2), (5, 2, 3), (5, 3, 0),
]
REFERENCE_ROTATED = [
    (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, -0.577, 0.816),
    (0.0, -0.577, 0.816), (0.5, -0.865, 0.0), (0.5, 0.288, 0.816),
]
REFERENCE_SCALED = [
    (0.0, 0.0, 0.0), (20.0, 0.0, 0.0), (20.0, -11.54, 16.32),
    (0.0, -11.54, 16.32), (10.0, -17.3, 0.0), (10.0, 5.76, 16.32),
]


def exact_rotated():
    """Closed-form rotated vertices: x-rotation with sin = sqrt6/3, cos = -sqrt3/3."""
    c, s = -SQRT3 / 3, SQRT6 / 3
    h = math.sqrt(0.5)
    raw = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0.5, 0.5, h), (0.5, 0.5, -h)]
    return [(x, c * y - s * z, s * y + c * z) for x, y, z in raw]


def exact_scaled(k=20.0):
    # written out by hand rather than derived from exact_rotated()
    return [
        (0.0, 0.0, 0.0),
        (k, 0.0, 0.0),
        (k, -k / SQRT3, k * SQRT6 / 3),
        (0.0, -k / SQRT3, k * SQRT6 / 3),
        (k / 2, -k * SQRT3 / 2, 0.0),
        (k / 2, k / (2 * SQRT3), k * SQRT6 / 3),
    ]


def tetra_volume_about_centroid(vertices, ccw_faces):
    """Sum of signed tetrahedra (centroid, face) via 4x4 determinants."""
    v = np.asarray(vertices, dtype=float)
    apex = v.mean(axis=0)
    total = 0.0
    for a, b, c in ccw_faces:
        m = np.ones((4, 4))
        m[0, :3], m[1, :3], m[2, :3], m[3, :3] = apex, v[a], v[b], v[c]
        total += np.linalg.det(m)
    # det of [[p,1]...] equals -6 * signed volume for this row order
    return -total / 6.0


def convex_hull_volume(vertices):
    return float(ConvexHull(np.asarray(vertices, dtype=float)).volume)


def pairwise_edge_lengths(vertices, faces):
    edges = set()
    for f in faces:
        for a, b in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
            edges.add((min(a, b), max(a, b)))
    v = np.asarray(vertices, dtype=float)
    return {e: float(np.linalg.norm(v[e[0]] - v[e[1]])) for e in edges}


def brute_force_components(faces):
    """Count vertices, undirected edges, faces by enumeration."""
    verts = {i for f in faces for i in f}
    edges = {frozenset(p) for f in faces for p in itertools.combinations(f, 2)}
    return len(verts), len(edges), len(faces)
