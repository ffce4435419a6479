"""Canonical input meshes: platonic solids, books, strips, two-sided polygons."""

from __future__ import annotations

import math

import numpy as np

from .mesh import LabeledMesh, build_mesh


def tetrahedron() -> LabeledMesh:
    verts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    faces = [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)]
    return build_mesh(verts, faces)


def cube() -> LabeledMesh:
    verts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    faces = [
        (0, 1, 3, 2), (4, 6, 7, 5),   # x = 0, x = 1
        (0, 4, 5, 1), (2, 3, 7, 6),   # y = 0, y = 1
        (0, 2, 6, 4), (1, 5, 7, 3),   # z = 0, z = 1
    ]
    return build_mesh(verts, faces)


def octahedron() -> LabeledMesh:
    verts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    faces = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
             (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return build_mesh(verts, faces)


def icosahedron() -> LabeledMesh:
    phi = (1 + math.sqrt(5)) / 2
    verts = [(-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
             (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
             (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1)]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
             (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
             (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
             (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    return build_mesh(verts, faces)


def book(k: int, twist: int | None = None) -> LabeledMesh:
    """K quads sharing one spine edge, fanned at equal angles.

    Face i traverses the spine min->max and sits at angle 2*pi*i/K, so the
    radial order equals the face order.  ``twist`` labels the spine.
    """
    if k < 1:
        raise ValueError("book needs at least one page")
    verts = [(0.0, 0.0, 0.0), (0.0, 0.0, 1.0)]
    faces = []
    for i in range(k):
        ang = 2 * math.pi * i / k
        x, y = math.cos(ang), math.sin(ang)
        top = len(verts)
        verts.append((x, y, 1.0))
        verts.append((x, y, 0.0))
        faces.append((0, 1, top, top + 1))
    twists = {(0, 1): twist} if twist is not None else None
    return build_mesh(verts, faces, twists=twists)


def strip(twist: int | None = None) -> LabeledMesh:
    """Two quads sharing one edge (the K=2 parity fixture)."""
    verts = [(0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 0, 0),
             (-1, 0.2, 1), (-1, 0.2, 0)]
    faces = [(0, 1, 2, 3), (1, 0, 5, 4)]
    twists = {(0, 1): twist} if twist is not None else None
    return build_mesh(verts, faces, twists=twists)


def two_sided_polygon(n: int) -> LabeledMesh:
    """Two coincident n-gon faces with opposite cycles (a squashed pillow)."""
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    verts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n), 0.0)
             for i in range(n)]
    front = tuple(range(n))
    back = (0,) + tuple(range(n - 1, 0, -1))
    return build_mesh(verts, [front, back])


def vertex_hinged_tetrahedra() -> LabeledMesh:
    """Two tetrahedra sharing exactly one vertex."""
    verts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1),
             (3, 1, 1), (3, -1, -1), (1.6, 0, 0.4)]
    faces = [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3),
             (0, 4, 5), (0, 5, 6), (0, 6, 4), (4, 6, 5)]
    return build_mesh(verts, faces)


def edge_hinged_tetrahedra() -> LabeledMesh:
    """Two tetrahedra sharing exactly one edge (a piano hinge)."""
    verts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1),
             (2.5, 0.5, 0.5), (2.5, -0.5, -0.5)]
    faces = [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3),
             (0, 1, 4), (1, 0, 5), (0, 4, 5), (1, 5, 4)]
    return build_mesh(verts, faces)


def torus(n: int = 8, m: int = 4, major: float = 2.0,
          minor: float = 0.8) -> LabeledMesh:
    """Quad-faced torus grid (n around the tube axis, m around the tube)."""
    if n < 3 or m < 3:
        raise ValueError("torus grid needs n, m >= 3")
    verts = []
    for i in range(n):
        for j in range(m):
            u = 2 * math.pi * i / n
            v = 2 * math.pi * j / m
            verts.append(((major + minor * math.cos(v)) * math.cos(u),
                          (major + minor * math.cos(v)) * math.sin(u),
                          minor * math.sin(v)))
    def vid(i, j):
        return (i % n) * m + (j % m)
    faces = [(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
             for i in range(n) for j in range(m)]
    return build_mesh(verts, faces)


def random_sphere(seed: int, n_points: int = 20) -> LabeledMesh:
    """Random triangulated sphere (convex hull of random unit vectors)."""
    from scipy.spatial import ConvexHull

    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n_points, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    hull = ConvexHull(pts)
    center = pts[hull.vertices].mean(axis=0)
    faces = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        a, b, c = (int(v) for v in simplex)
        n = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        if np.dot(n, pts[a] - center) < 0:
            a, b = b, a
        faces.append((a, b, c))
    return build_mesh(pts, faces)


NAMED = {
    "tetrahedron": tetrahedron,
    "cube": cube,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
}
