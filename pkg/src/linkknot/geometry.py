"""Geometric realization: inset strand curves with helical edge passages,
tube sweeps with rotation-minimizing frames, Gauss linking numbers, OBJ export.

Strand topology is fixed upstream; realization only embeds it.  Within a face
the strand hugs the inset corners (lifted slightly along the face normal so
coincident two-sided faces separate); through each edge it follows a helical
arc whose continuous turning is 2*pi*t/K, positive counterclockwise about the
edge's min->max axis (right-handed).
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from .mesh import LabeledMesh, _perp_frame
from .strands import StrandSet, trace, transfer

log = logging.getLogger("lk.geometry")


class GeometryError(ValueError):
    """Degenerate input to a geometric operation."""


@dataclass(frozen=True)
class RealizationParams:
    inset: float = 0.25                 # fraction toward the face centroid
    helix_samples: int = 8              # samples per quarter turn
    tube_radius: float | None = None    # default 0.03 x mean edge length
    tube_sides: int = 12
    edge_blend_length: float = 0.3      # twisting band, fraction of edge
    face_lift: float = 0.02             # normal offset, fraction of mean edge

    def __post_init__(self):
        if not 0 < self.inset < 1:
            raise GeometryError("inset must lie in (0, 1)")
        if self.helix_samples < 1:
            raise GeometryError("helix_samples must be >= 1")
        if self.tube_radius is not None and self.tube_radius <= 0:
            raise GeometryError("tube_radius must be positive")
        if self.tube_sides < 3:
            raise GeometryError("tube_sides must be >= 3")
        if not 0 < self.edge_blend_length < 0.5:
            raise GeometryError("edge_blend_length must lie in (0, 0.5)")


@dataclass(frozen=True)
class StrandCurve:
    component_id: int
    closed: bool
    points: np.ndarray        # (N, 3); closed curves do not repeat the start

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if self.closed and len(pts) < 4:
            raise GeometryError("closed strand needs at least 4 points")
        if len(pts) >= 2:
            steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
            if steps.min() <= 0:
                raise GeometryError("strand has coincident consecutive points")
        object.__setattr__(self, "points", pts)

    def segments(self) -> np.ndarray:
        """(M, 2, 3) segment array, including the closing segment if closed."""
        pts = self.points
        if self.closed:
            nxt = np.roll(pts, -1, axis=0)
        else:
            nxt = pts[1:]
            pts = pts[:-1]
        return np.stack([pts, nxt], axis=1)


@dataclass(frozen=True)
class StrandGeometry:
    curves: tuple[StrandCurve, ...]

    @property
    def component_count(self) -> int:
        return len(self.curves)

    def closed_curves(self) -> tuple[StrandCurve, ...]:
        return tuple(c for c in self.curves if c.closed)

    def to_document(self) -> dict:
        return {"components": [
            {"id": c.component_id, "closed": bool(c.closed),
             "points": [[round(float(x), 6) for x in p] for p in c.points]}
            for c in self.curves]}


def _face_normals(mesh: LabeledMesh) -> np.ndarray:
    normals = np.zeros((mesh.face_count, 3))
    for fi, cyc in enumerate(mesh.faces):
        n = np.zeros(3)
        for k in range(len(cyc)):
            p = mesh.vertices[cyc[k]]
            q = mesh.vertices[cyc[(k + 1) % len(cyc)]]
            n += np.cross(p, q)
        norm = np.linalg.norm(n)
        normals[fi] = n / norm if norm > 1e-12 else 0.0
    return normals


def realize(mesh: LabeledMesh, strands: StrandSet | None = None,
            params: RealizationParams | None = None) -> StrandGeometry:
    """Embed every traced strand as a 3D polyline."""
    params = params or RealizationParams()
    strands = strands if strands is not None else trace(mesh)
    normals = _face_normals(mesh)
    scale = mesh.mean_edge_length()
    lift = params.face_lift * scale

    centroids = np.array([mesh.face_centroid(f) for f in range(mesh.face_count)])

    def corner_point(face: int, vertex: int) -> np.ndarray:
        base = mesh.vertices[vertex]
        return (base + params.inset * (centroids[face] - base)
                + lift * normals[face])

    frames = {}
    for key, rec in mesh.edges.items():
        a, b = key
        axis = mesh.vertices[b] - mesh.vertices[a]
        length = float(np.linalg.norm(axis))
        axis = axis / length
        e1, e2 = _perp_frame(axis)
        s0 = mesh.slots[rec.radial_order[0]]
        anchor = corner_point(s0.face, a) - mesh.vertices[a]
        r = anchor - np.dot(anchor, axis) * axis
        ref = math.atan2(np.dot(r, e2), np.dot(r, e1)) if np.linalg.norm(r) > 1e-12 else 0.0
        # base pipe radius strictly inside every attachment's corner radius
        rho_min = math.inf
        for sid in rec.radial_order:
            sl = mesh.slots[sid]
            for v in key:
                d = corner_point(sl.face, v) - mesh.vertices[a]
                rho_min = min(rho_min, float(np.linalg.norm(
                    d - np.dot(d, axis) * axis)))
        r_base = 0.5 * rho_min if rho_min > 1e-12 else 0.1 * length
        frames[key] = (axis, length, e1, e2, ref, r_base)

    curves = []
    for cid, (kind, slots_seq, motions) in enumerate(strands.components()):
        pts: list[np.ndarray] = []
        visits = list(zip(slots_seq, motions))
        for sid, m in visits:
            s = mesh.slots[sid]
            dst = mesh.slots[transfer(mesh, sid)]
            a, b = s.edge
            if m > 0:
                entry = s
                p_in = corner_point(s.face, a)
                p_out = corner_point(dst.face, b)
            else:
                entry = dst
                p_in = corner_point(dst.face, b)
                p_out = corner_point(s.face, a)
            rec = mesh.edges[s.edge]
            ideal = m * 2.0 * math.pi * rec.twist / rec.degree
            axis, length, e1, e2, ref, r_base = frames[s.edge]
            k = rec.degree
            port_in = ref + 2.0 * math.pi * entry.radial_index / k
            # ribbon shells keyed by the ribbon's own station: concurrent
            # strands occupy strictly nested radii inside the pipe
            ribbon = mesh.slots[sid].radial_index
            r_shell = r_base * (1.0 - 0.4 * (ribbon + 1) / (k + 1))
            pts.extend(_edge_passage(mesh.vertices[a], axis, length, e1, e2,
                                     p_in, p_out, port_in, ideal, r_shell,
                                     params))
        closed = kind == "cycle"
        if not closed:
            # final exit corner of the last passage
            pts.append(_final_exit_point(mesh, visits[-1], corner_point))
        pts = _dedupe_polyline(pts, 1e-9 * max(scale, 1.0))
        if closed and len(pts) > 1 and np.linalg.norm(pts[0] - pts[-1]) <= 1e-9 * max(scale, 1.0):
            pts = pts[:-1]
        curves.append(StrandCurve(cid, closed, np.array(pts)))
    return StrandGeometry(tuple(curves))


def _final_exit_point(mesh, visit, corner_point):
    sid, m = visit
    s = mesh.slots[sid]
    dst = mesh.slots[transfer(mesh, sid)]
    a, b = s.edge
    if m > 0:
        return corner_point(dst.face, b)
    return corner_point(s.face, a)


def _edge_passage(pa, axis, length, e1, e2, p_in, p_out, port_in, ideal_turn,
                  r_shell, params) -> list[np.ndarray]:
    """Sample one pipe passage as zones that each vary one cylinder coordinate.

    Every passage of an edge shares the same axial windows: corner hold,
    radial zone (constant angle per strand), angular zone (constant radius per
    strand), the rigid twist band turning by exactly the signed 2*pi*t/K, and
    the mirrored exit zones.  Strands sharing a pipe sit on strictly nested
    shells below every corner radius, so within the windows any two passages
    differ in a held coordinate and cannot touch.
    """

    def station(p):
        d = p - pa
        u = float(np.dot(d, axis)) / length
        r = d - np.dot(d, axis) * axis
        rho = float(np.linalg.norm(r))
        phi = math.atan2(np.dot(r, e2), np.dot(r, e1)) if rho > 1e-12 else 0.0
        return u, rho, phi

    u_in, rho_in, phi_in = station(p_in)
    u_out, rho_out, phi_out = station(p_out)

    phi_port_in = phi_in + _wrap_pi(port_in - phi_in)
    phi_port_out = phi_port_in + ideal_turn
    phi_exit = phi_port_out + _wrap_pi(phi_out - phi_port_out)

    # global axial windows, shared by every passage of this edge
    band_lo = 0.5 - params.edge_blend_length / 2
    band_hi = 0.5 + params.edge_blend_length / 2
    hold_lo, rad_lo = 0.5 * band_lo, 0.8 * band_lo
    hold_hi, rad_hi = 1.0 - 0.5 * band_lo, 1.0 - 0.8 * band_lo

    forward = u_in <= u_out
    if forward:
        stations = [
            (u_in, rho_in, phi_in),
            (hold_lo, rho_in, phi_in),       # corner hold (face plane)
            (rad_lo, r_shell, phi_in),       # radial onto the shell
            (band_lo, r_shell, phi_port_in),  # angular onto the uniform port
            (band_hi, r_shell, phi_port_out),   # rigid twist band
            (rad_hi, r_shell, phi_exit),     # angular off the port
            (hold_hi, rho_out, phi_exit),    # radial off the shell
            (u_out, rho_out, phi_exit),      # exit corner hold
        ]
    else:
        stations = [
            (u_in, rho_in, phi_in),
            (hold_hi, rho_in, phi_in),
            (rad_hi, r_shell, phi_in),
            (band_hi, r_shell, phi_port_in),
            (band_lo, r_shell, phi_port_out),
            (rad_lo, r_shell, phi_exit),
            (hold_lo, rho_out, phi_exit),
            (u_out, rho_out, phi_exit),
        ]

    pts = []
    for i in range(len(stations) - 1):
        u0, rho0, a0 = stations[i]
        u1, rho1, a1 = stations[i + 1]
        sweep = a1 - a0
        n = max(1, int(math.ceil(abs(sweep) / (math.pi / 2))) * params.helix_samples) \
            if abs(sweep) > 1e-12 else 1
        start = 0 if i == 0 else 1
        for j in range(start, n + 1):
            tau = j / n
            u = u0 + tau * (u1 - u0)
            rho = rho0 + tau * (rho1 - rho0)
            phi = a0 + tau * sweep
            pts.append(pa + u * length * axis
                       + rho * (math.cos(phi) * e1 + math.sin(phi) * e2))
    return pts


def _wrap_pi(angle: float) -> float:
    return (angle + math.pi) % (2 * math.pi) - math.pi


def _dedupe_polyline(pts, tol):
    out = [np.asarray(pts[0], dtype=float)]
    for p in pts[1:]:
        if np.linalg.norm(p - out[-1]) > tol:
            out.append(np.asarray(p, dtype=float))
    return out


@dataclass(frozen=True)
class TriMesh:
    vertices: np.ndarray      # (V, 3)
    triangles: np.ndarray     # (F, 3) int

    def euler_characteristic(self) -> int:
        edges = set()
        for tri in self.triangles:
            for i in range(3):
                a, b = int(tri[i]), int(tri[(i + 1) % 3])
                edges.add((a, b) if a < b else (b, a))
        return len(self.vertices) - len(edges) + len(self.triangles)


def _rm_frames(points: np.ndarray, closed: bool):
    """Rotation-minimizing frames via double reflection: (normals, tangents)."""
    pts = points
    n = len(pts)
    if closed:
        tangents = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    else:
        tangents = np.gradient(pts, axis=0)
    tangents /= np.linalg.norm(tangents, axis=1, keepdims=True)
    normals = np.zeros_like(pts)
    normals[0] = _perp_frame(tangents[0])[0]
    for i in range(n - 1):
        v1 = pts[i + 1] - pts[i]
        c1 = np.dot(v1, v1)
        rl = normals[i] - (2 / c1) * np.dot(v1, normals[i]) * v1
        tl = tangents[i] - (2 / c1) * np.dot(v1, tangents[i]) * v1
        v2 = tangents[i + 1] - tl
        c2 = np.dot(v2, v2)
        if c2 > 1e-16:
            normals[i + 1] = rl - (2 / c2) * np.dot(v2, rl) * v2
        else:
            normals[i + 1] = rl
        normals[i + 1] -= np.dot(normals[i + 1], tangents[i + 1]) * tangents[i + 1]
        normals[i + 1] /= np.linalg.norm(normals[i + 1])
    if closed:
        # distribute the seam mismatch so ring 0 and ring n glue smoothly
        v1 = pts[0] - pts[-1]
        c1 = np.dot(v1, v1)
        rl = normals[-1] - (2 / c1) * np.dot(v1, normals[-1]) * v1
        tl = tangents[-1] - (2 / c1) * np.dot(v1, tangents[-1]) * v1
        v2 = tangents[0] - tl
        c2 = np.dot(v2, v2)
        wrapped = rl - (2 / c2) * np.dot(v2, rl) * v2 if c2 > 1e-16 else rl
        wrapped -= np.dot(wrapped, tangents[0]) * tangents[0]
        wrapped /= np.linalg.norm(wrapped)
        binorm = np.cross(tangents[0], normals[0])
        mismatch = math.atan2(np.dot(wrapped, binorm), np.dot(wrapped, normals[0]))
        for i in range(1, n):
            theta = -mismatch * i / n
            b = np.cross(tangents[i], normals[i])
            normals[i] = math.cos(theta) * normals[i] + math.sin(theta) * b
    return normals, tangents


def tube(geometry: StrandGeometry | StrandCurve,
         params: RealizationParams | None = None,
         scale_hint: float | None = None) -> list[TriMesh]:
    """Sweep a circular cross-section along each strand.

    Closed strands become watertight torus-like tubes (Euler characteristic
    0); open strands get two cap disks.
    """
    params = params or RealizationParams()
    curves = geometry.curves if isinstance(geometry, StrandGeometry) else (geometry,)
    if params.tube_radius is not None:
        radius = params.tube_radius
    else:
        if scale_hint is None:
            total = sum(
                float(np.linalg.norm(np.diff(c.points, axis=0), axis=1).sum())
                for c in curves)
            count = sum(max(1, len(c.points) - 1) for c in curves)
            scale_hint = total / count * 4
        radius = 0.03 * scale_hint
    if isinstance(geometry, StrandGeometry) and geometry.component_count > 1:
        gap = min_separation(geometry)
        if radius > 0.45 * gap:
            log.warning("tube radius %.6g exceeds component separation; "
                        "shrinking to %.6g", radius, 0.45 * gap)
            radius = 0.45 * gap

    out = []
    m = params.tube_sides
    for curve in curves:
        pts = curve.points
        normals, tangents = _rm_frames(pts, curve.closed)
        n = len(pts)
        verts = np.zeros((n * m + (2 if not curve.closed else 0), 3))
        for i in range(n):
            b = np.cross(tangents[i], normals[i])
            for j in range(m):
                ang = 2 * math.pi * j / m
                verts[i * m + j] = (pts[i] + radius * (math.cos(ang) * normals[i]
                                                       + math.sin(ang) * b))
        tris = []
        ring_count = n if curve.closed else n - 1
        for i in range(ring_count):
            i2 = (i + 1) % n
            for j in range(m):
                j2 = (j + 1) % m
                a = i * m + j
                b_ = i * m + j2
                c = i2 * m + j
                d = i2 * m + j2
                tris.append((a, b_, d))
                tris.append((a, d, c))
        if not curve.closed:
            c0 = n * m
            c1 = n * m + 1
            verts[c0] = pts[0]
            verts[c1] = pts[-1]
            for j in range(m):
                j2 = (j + 1) % m
                tris.append((c0, j2, j))
                tris.append((c1, (n - 1) * m + j, (n - 1) * m + j2))
        out.append(TriMesh(verts, np.array(tris, dtype=int)))
    return out


def _gauss_sum(a_pts: np.ndarray, b_pts: np.ndarray) -> float:
    """Signed Gauss-map integral (in units of full turns) between two closed
    polylines given as vertex arrays (implicit closure)."""
    p1 = a_pts
    p2 = np.roll(a_pts, -1, axis=0)
    q1 = b_pts
    q2 = np.roll(b_pts, -1, axis=0)

    total = 0.0
    chunk = 256
    for start in range(0, len(p1), chunk):
        sl = slice(start, start + chunk)
        a = p1[sl, None, :] - q1[None, :, :]
        b = p1[sl, None, :] - q2[None, :, :]
        c = p2[sl, None, :] - q2[None, :, :]
        d = p2[sl, None, :] - q1[None, :, :]
        an = np.linalg.norm(a, axis=2)
        bn = np.linalg.norm(b, axis=2)
        cn = np.linalg.norm(c, axis=2)
        dn = np.linalg.norm(d, axis=2)
        num = np.einsum("ijk,ijk->ij", a, np.cross(b, c))
        d1 = (an * bn * cn + np.einsum("ijk,ijk->ij", a, b) * cn
              + np.einsum("ijk,ijk->ij", b, c) * an
              + np.einsum("ijk,ijk->ij", c, a) * bn)
        d2 = (an * dn * cn + np.einsum("ijk,ijk->ij", a, d) * cn
              + np.einsum("ijk,ijk->ij", d, c) * an
              + np.einsum("ijk,ijk->ij", c, a) * dn)
        total += float(np.arctan2(num, d1).sum() + np.arctan2(num, d2).sum())
    return total / (2 * math.pi)


def linking_number(curve_a, curve_b, tol: float = 1e-6) -> int:
    """Exact Gauss-map degree of two disjoint closed polylines.

    Positive values follow the right-handed convention.  Raises if the curves
    approach within ``tol`` x their joint diameter or the Gauss sum strays
    more than ``tol`` from an integer.
    """
    a = curve_a.points if isinstance(curve_a, StrandCurve) else np.asarray(curve_a, float)
    b = curve_b.points if isinstance(curve_b, StrandCurve) else np.asarray(curve_b, float)
    allpts = np.vstack([a, b])
    diameter = float(np.linalg.norm(allpts.max(0) - allpts.min(0)))
    if _min_segment_distance(a, True, b, True) <= tol * diameter:
        raise GeometryError("curves touch or intersect within tolerance")
    value = _gauss_sum(a, b)
    nearest = round(value)
    if abs(value - nearest) >= tol:
        raise GeometryError(f"Gauss sum {value} is not close to an integer")
    return int(nearest)


def linking_matrix(geometry: StrandGeometry, tol: float = 1e-6):
    """Pairwise linking numbers of all closed components (diagonal 0).

    Open components are skipped with a warning list returned alongside.
    """
    closed = geometry.closed_curves()
    warnings = []
    skipped = geometry.component_count - len(closed)
    if skipped:
        warnings.append(f"{skipped} open component(s) skipped in linking matrix")
    n = len(closed)
    matrix = [[0] * n for _ in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def compute(pair):
        i, j = pair
        return i, j, linking_number(closed[i], closed[j], tol)

    threads = int(os.environ.get("LK_THREADS", "1"))
    if threads > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(compute, pairs))
    else:
        results = [compute(p) for p in pairs]
    for i, j, lk in results:
        matrix[i][j] = matrix[j][i] = lk
    return matrix, warnings


def _segment_pair_distance(p1, p2, q1, q2) -> float:
    """Minimum distance between two segments (clamped closest points)."""
    d1 = p2 - p1
    d2 = q2 - q1
    r = p1 - q1
    a = np.dot(d1, d1)
    e = np.dot(d2, d2)
    f = np.dot(d2, r)
    if a <= 1e-18 and e <= 1e-18:
        return float(np.linalg.norm(r))
    if a <= 1e-18:
        s, t = 0.0, min(1.0, max(0.0, f / e))
    else:
        c = np.dot(d1, r)
        if e <= 1e-18:
            t, s = 0.0, min(1.0, max(0.0, -c / a))
        else:
            b = np.dot(d1, d2)
            denom = a * e - b * b
            s = min(1.0, max(0.0, (b * f - c * e) / denom)) if denom > 1e-18 else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t = 0.0
                s = min(1.0, max(0.0, -c / a))
            elif t > 1.0:
                t = 1.0
                s = min(1.0, max(0.0, (b - c) / a))
    return float(np.linalg.norm((p1 + s * d1) - (q1 + t * d2)))


def _min_segment_distance(a_pts, a_closed, b_pts, b_closed) -> float:
    def segs(pts, closed):
        nxt = np.roll(pts, -1, axis=0) if closed else pts[1:]
        cur = pts if closed else pts[:-1]
        return cur, nxt

    a1, a2 = segs(a_pts, a_closed)
    b1, b2 = segs(b_pts, b_closed)
    eps = 1e-18
    best = math.inf
    chunk = max(1, 10 ** 6 // max(1, len(b1)))
    for start in range(0, len(a1), chunk):
        sl = slice(start, start + chunk)
        d1 = (a2[sl] - a1[sl])[:, None, :]
        d2 = (b2 - b1)[None, :, :]
        r = a1[sl][:, None, :] - b1[None, :, :]
        a = np.einsum("ijk,ijk->ij", d1, d1)
        e = np.einsum("ijk,ijk->ij", d2, d2)
        f = np.einsum("ijk,ijk->ij", d2, r)
        c = np.einsum("ijk,ijk->ij", d1, r)
        b = np.einsum("ijk,ijk->ij", d1, d2)
        denom = a * e - b * b
        s = np.where(denom > eps,
                     np.clip((b * f - c * e) / np.where(denom > eps, denom, 1.0),
                             0.0, 1.0),
                     0.0)
        e_safe = np.where(e > eps, e, 1.0)
        t_raw = (b * s + f) / e_safe
        t = np.clip(np.where(e > eps, t_raw, 0.0), 0.0, 1.0)
        a_safe = np.where(a > eps, a, 1.0)
        s = np.where(t_raw < 0, np.clip(-c / a_safe, 0.0, 1.0), s)
        s = np.where(t_raw > 1, np.clip((b - c) / a_safe, 0.0, 1.0), s)
        s = np.where(a > eps, s, 0.0)
        diff = (a1[sl][:, None, :] + s[..., None] * d1
                - (b1[None, :, :] + t[..., None] * d2))
        dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        best = min(best, float(dist.min()))
    return best


def min_separation(geometry: StrandGeometry) -> float:
    """Minimal distance between points of distinct components."""
    if geometry.component_count < 2:
        raise GeometryError("min_separation needs at least 2 components")
    best = math.inf
    curves = geometry.curves
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            d = _min_segment_distance(curves[i].points, curves[i].closed,
                                      curves[j].points, curves[j].closed)
            best = min(best, d)
    return best


def component_color(index: int) -> tuple[float, float, float]:
    """Deterministic palette: golden-angle hue walk, fixed s/v."""
    hue = (index * 0.381966011250105) % 1.0
    h = hue * 6.0
    i = int(h) % 6
    f = h - int(h)
    v, s = 0.95, 0.65
    p, q, t = v * (1 - s), v * (1 - s * f), v * (1 - s * (1 - f))
    rgb = [(v, t, p), (q, v, p), (p, v, t), (p, q, v), (t, p, v), (v, p, q)][i]
    return tuple(round(c, 4) for c in rgb)


def export_obj(path, tubes: list[TriMesh] | None = None,
               polylines: StrandGeometry | None = None) -> None:
    """OBJ with v/f records for tubes, l records for polylines, one group and
    one material per component; floats fixed to 6 decimals."""
    lines = []
    mtl_lines = []
    path = str(path)
    mtl_path = path[:-4] + ".mtl" if path.endswith(".obj") else path + ".mtl"
    mtl_name = mtl_path.rsplit("/", 1)[-1]
    lines.append(f"mtllib {mtl_name}")
    offset = 1

    def emit_material(cid):
        r, g, b = component_color(cid)
        mtl_lines.append(f"newmtl comp_{cid}")
        mtl_lines.append(f"Kd {r:.6f} {g:.6f} {b:.6f}")

    cid = 0
    if tubes:
        for mesh in tubes:
            emit_material(cid)
            lines.append(f"g component_{cid}")
            lines.append(f"usemtl comp_{cid}")
            for v in mesh.vertices:
                lines.append("v %.6f %.6f %.6f" % (v[0], v[1], v[2]))
            for t in mesh.triangles:
                lines.append("f %d %d %d" % (t[0] + offset, t[1] + offset,
                                             t[2] + offset))
            offset += len(mesh.vertices)
            cid += 1
    if polylines:
        for curve in polylines.curves:
            emit_material(cid)
            lines.append(f"g component_{cid}")
            lines.append(f"usemtl comp_{cid}")
            for p in curve.points:
                lines.append("v %.6f %.6f %.6f" % (p[0], p[1], p[2]))
            ids = list(range(offset, offset + len(curve.points)))
            if curve.closed:
                ids.append(offset)
            lines.append("l " + " ".join(str(i) for i in ids))
            offset += len(curve.points)
            cid += 1
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(mtl_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(mtl_lines) + "\n")
