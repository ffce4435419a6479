"""Periodic scaffolds: Bravais lattices, Wigner-Seitz / periodic Voronoi
honeycombs, translation edge classes, quotient strand tracing, finite tiling.

A PeriodicMesh stores one fundamental domain: vertex classes with positions,
faces as cycles of (vertex class, integer lattice shift), and quotient edges.
Each face side is reduced to a canonical edge representative; the reduction
shift ("anchor") lets the quotient trace accumulate lattice offsets, so each
traced component reports a closure offset (zero for closed loops, nonzero for
infinite threads) and the bounding box of cells visited over one period.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .mesh import LabeledMesh, MeshError, build_mesh, _perp_frame

_TOL = 1e-7


@dataclass(frozen=True)
class Lattice:
    basis: np.ndarray            # (N, N); rows are basis vectors

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] not in (2, 3):
            raise MeshError("lattice basis must be a square 2x2 or 3x3 matrix")
        det = np.linalg.det(b)
        if abs(det) < 1e-9 * max(1.0, float(np.abs(b).max()) ** b.shape[0]):
            raise MeshError("lattice basis is degenerate")
        object.__setattr__(self, "basis", b)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def point(self, shift) -> np.ndarray:
        return np.asarray(shift, dtype=float) @ self.basis

    def fractional(self, pos) -> np.ndarray:
        return np.asarray(pos, dtype=float) @ np.linalg.inv(self.basis)


PRESETS = {
    "sq": [[1.0, 0.0], [0.0, 1.0]],
    "hex": [[1.0, 0.0], [0.5, math.sqrt(3) / 2]],
    "cP": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    "cI": [[-0.5, 0.5, 0.5], [0.5, -0.5, 0.5], [0.5, 0.5, -0.5]],
    "cF": [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]],
    "hP": [[1.0, 0.0, 0.0], [0.5, math.sqrt(3) / 2, 0.0], [0.0, 0.0, 1.0]],
    # face-centered orthorhombic, fixed default aspect 1 : 1.2 : 1.5
    "oF": [[0.0, 0.6, 0.75], [0.5, 0.0, 0.75], [0.5, 0.6, 0.0]],
}


def lattice_preset(name: str) -> Lattice:
    if name not in PRESETS:
        raise MeshError(f"unknown lattice preset {name!r}; "
                        f"known: {', '.join(sorted(PRESETS))}")
    return Lattice(np.array(PRESETS[name], dtype=float))


@dataclass(frozen=True)
class GeneratorSet:
    points: np.ndarray           # (M, N), reduced into the fundamental domain

    @classmethod
    def reduce(cls, lattice: Lattice, points) -> "GeneratorSet":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != lattice.dimension:
            raise MeshError("generator dimension does not match the lattice")
        frac = np.mod(pts @ np.linalg.inv(lattice.basis), 1.0)
        frac[frac > 1.0 - 1e-9] = 0.0
        reduced = frac @ lattice.basis
        for i in range(len(reduced)):
            for j in range(i + 1, len(reduced)):
                if np.linalg.norm(reduced[i] - reduced[j]) < _TOL:
                    raise MeshError(f"generators {i} and {j} coincide after reduction")
        return cls(reduced)


def _dedupe_points(points: np.ndarray, tol: float) -> tuple[np.ndarray, list[int]]:
    """Merge near-coincident points; returns unique points + index map."""
    unique: list[np.ndarray] = []
    mapping = []
    for p in points:
        for i, q in enumerate(unique):
            if np.linalg.norm(p - q) < tol:
                mapping.append(i)
                break
        else:
            mapping.append(len(unique))
            unique.append(p)
    return np.array(unique), mapping


def _voronoi_cell(center: np.ndarray, neighbors: np.ndarray):
    """Voronoi cell of ``center`` against ``neighbors``.

    Returns (vertices in centered coordinates, facets) where each facet is
    (neighbor index, ordered vertex index cycle).  2D facets are vertex pairs.
    """
    from scipy.spatial import HalfspaceIntersection, QhullError

    n_dim = len(center)
    d = neighbors - center
    offsets = -0.5 * np.einsum("ij,ij->i", d, d)
    halfspaces = np.column_stack([d, offsets])
    try:
        hs = HalfspaceIntersection(halfspaces, np.zeros(n_dim))
    except QhullError as exc:
        raise MeshError(f"degenerate Voronoi configuration: {exc}") from exc
    verts, _ = _dedupe_points(hs.intersections, _TOL)
    order = sorted(range(len(verts)), key=lambda i: tuple(np.round(verts[i], 7)))
    rank = {old: new for new, old in enumerate(order)}
    verts = verts[order]

    facets = []
    for i in range(len(d)):
        on_plane = [j for j in range(len(verts))
                    if abs(np.dot(d[i], verts[j]) + offsets[i]) < _TOL * 10]
        if len(on_plane) < n_dim:
            continue
        if n_dim == 2:
            facets.append((i, tuple(sorted(on_plane))))
            continue
        normal = d[i] / np.linalg.norm(d[i])
        e1, e2 = _perp_frame(normal)
        centroid = verts[on_plane].mean(axis=0)
        def angle(j):
            r = verts[j] - centroid
            return math.atan2(np.dot(r, e2), np.dot(r, e1))
        ordered = tuple(sorted(on_plane, key=angle))
        facets.append((i, ordered))
    _ = rank
    return verts, facets


def _cell_polygon_2d(verts: np.ndarray) -> tuple[int, ...]:
    centroid = verts.mean(axis=0)
    def angle(i):
        r = verts[i] - centroid
        return math.atan2(r[1], r[0])
    return tuple(sorted(range(len(verts)), key=angle))


def wigner_seitz(lattice: Lattice) -> LabeledMesh:
    """Voronoi cell of the origin against two shells of lattice points.

    3D cells come back as closed polyhedral surfaces (outward-oriented
    facets); 2D cells as a single polygon face in the z=0 plane.
    """
    n_dim = lattice.dimension
    shifts = [s for s in itertools.product(range(-2, 3), repeat=n_dim)
              if any(s)]
    neighbors = np.array([lattice.point(s) for s in shifts])
    verts, facets = _voronoi_cell(np.zeros(n_dim), neighbors)
    if n_dim == 2:
        cycle = _cell_polygon_2d(verts)
        return build_mesh(np.column_stack([verts, np.zeros(len(verts))]),
                          [cycle])
    faces = [cycle for _, cycle in facets]
    return build_mesh(verts, faces)


PEdgeKey = tuple[int, int, tuple[int, ...]]   # (u, v, delta): (u,0) -> (v,delta)


@dataclass(frozen=True)
class PSlot:
    slot_id: int
    face: int
    index: int
    edge: PEdgeKey
    direction: int               # +1: side runs canonical a -> b
    anchor: tuple[int, ...]      # lattice copy of the canonical edge this side lies on
    radial_index: int


@dataclass(frozen=True)
class PEdgeRecord:
    key: PEdgeKey
    radial_order: tuple[int, ...]
    class_id: int
    twist: int = 0

    @property
    def degree(self) -> int:
        return len(self.radial_order)


@dataclass(frozen=True, eq=False)
class PeriodicMesh:
    lattice: Lattice
    vertices: np.ndarray                       # (V, N) class representatives
    faces: tuple[tuple[int, ...], ...]
    face_shifts: tuple[tuple[tuple[int, ...], ...], ...]
    edges: dict[PEdgeKey, PEdgeRecord]
    slots: tuple[PSlot, ...]
    face_offsets: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(self.edges)

    def class_twists(self) -> list[int]:
        return [rec.twist for rec in self.edges.values()]

    def corner_position(self, face: int, k: int) -> np.ndarray:
        return (self.vertices[self.faces[face][k]]
                + self.lattice.point(self.face_shifts[face][k]))

    def with_class_twists(self, vector) -> "PeriodicMesh":
        vector = [int(t) for t in vector]
        if len(vector) != self.class_count:
            raise MeshError(f"class twist vector has length {len(vector)}; "
                            f"mesh has {self.class_count} edge classes")
        edges = {key: PEdgeRecord(key, rec.radial_order, rec.class_id,
                                  vector[rec.class_id])
                 for key, rec in self.edges.items()}
        return PeriodicMesh(self.lattice, self.vertices, self.faces,
                            self.face_shifts, edges, self.slots,
                            self.face_offsets)


def assign_class_twists(pmesh: PeriodicMesh, vector) -> PeriodicMesh:
    """Every edge receives its translation class's twist."""
    return pmesh.with_class_twists(vector)


def edge_classes(pmesh: PeriodicMesh) -> tuple[dict[PEdgeKey, int], int]:
    """Translation classes of edges (the quotient edges themselves), with
    deterministic ids by lexicographic minimal representative."""
    return ({key: rec.class_id for key, rec in pmesh.edges.items()},
            pmesh.class_count)


def _canonical_side(u: int, p: tuple[int, ...], v: int, q: tuple[int, ...]):
    """Canonical edge key for the side (u,p)->(v,q), with direction and anchor."""
    d1 = tuple(int(b - a) for a, b in zip(p, q))
    d2 = tuple(int(-x) for x in d1)
    cand1 = (u, v, d1)
    cand2 = (v, u, d2)
    if cand1 <= cand2:
        return cand1, 1, p
    return cand2, -1, q


def periodic_mesh_from_data(lattice: Lattice, vertices, faces_with_shifts,
                            class_twists=None) -> PeriodicMesh:
    """Assemble a PeriodicMesh from explicit fundamental-domain data.

    ``faces_with_shifts``: per face, a cycle of (vertex class, shift vector).
    """
    verts = np.asarray(vertices, dtype=float)
    n_dim = lattice.dimension
    if verts.ndim != 2 or verts.shape[1] != n_dim:
        raise MeshError("periodic vertices must match the lattice dimension")

    cycles = []
    shifts = []
    for fi, cyc in enumerate(faces_with_shifts):
        cyc = list(cyc)
        if len(cyc) < 3:
            raise MeshError(f"periodic face {fi} has fewer than 3 sides")
        cycles.append(tuple(int(v) for v, _ in cyc))
        shifts.append(tuple(tuple(int(c) for c in s) for _, s in cyc))
        for v in cycles[-1]:
            if not 0 <= v < len(verts):
                raise MeshError(f"periodic face {fi} references unknown vertex {v}")

    raw_slots = []        # (face, k, key, direction, anchor)
    per_edge: dict[PEdgeKey, list[int]] = {}
    face_offsets = []
    for fi, (cyc, shf) in enumerate(zip(cycles, shifts)):
        face_offsets.append(len(raw_slots))
        n = len(cyc)
        for k in range(n):
            u, p = cyc[k], shf[k]
            v, q = cyc[(k + 1) % n], shf[(k + 1) % n]
            if u == v and p == q:
                raise MeshError(f"periodic face {fi} repeats a corner")
            key, direction, anchor = _canonical_side(u, p, v, q)
            sid = len(raw_slots)
            raw_slots.append((fi, k, key, direction, anchor))
            per_edge.setdefault(key, []).append(sid)

    centroids = []
    for fi in range(len(cycles)):
        pts = [verts[cycles[fi][k]] + lattice.point(shifts[fi][k])
               for k in range(len(cycles[fi]))]
        centroids.append(np.mean(pts, axis=0))

    radial_index = [0] * len(raw_slots)
    radial_orders: dict[PEdgeKey, tuple[int, ...]] = {}
    for key in sorted(per_edge):
        u, v, delta = key
        pa = _embed3(verts[u], n_dim)
        pb = _embed3(verts[v] + lattice.point(delta), n_dim)
        axis = pb - pa
        length = float(np.linalg.norm(axis))
        if length < 1e-12:
            raise MeshError(f"periodic edge {key} has coincident endpoints")
        axis /= length
        e1, e2 = _perp_frame(axis)
        mid = 0.5 * (pa + pb)
        sids = per_edge[key]
        if len(sids) == 1:
            radial_orders[key] = (sids[0],)
            continue
        entries = []
        for sid in sids:
            fi, k, _, _, anchor = raw_slots[sid]
            rep = _embed3(centroids[fi] - lattice.point(anchor), n_dim)
            d = rep - mid
            r = d - np.dot(d, axis) * axis
            if np.linalg.norm(r) <= 1e-9 * max(length, 1.0):
                raise MeshError(f"periodic face {fi} is degenerate about edge {key}")
            entries.append((math.atan2(np.dot(r, e2), np.dot(r, e1)), fi, k, sid))
        entries.sort(key=lambda e: e[:3])
        order = [e[3] for e in entries]
        start = order.index(min(order))
        order = tuple(order[start:] + order[:start])
        for i, sid in enumerate(order):
            radial_index[sid] = i
        radial_orders[key] = order

    slots = tuple(PSlot(sid, fi, k, key, direction, anchor, radial_index[sid])
                  for sid, (fi, k, key, direction, anchor) in enumerate(raw_slots))
    edges = {key: PEdgeRecord(key, radial_orders[key], class_id)
             for class_id, key in enumerate(sorted(radial_orders))}
    pmesh = PeriodicMesh(lattice, verts, tuple(cycles), tuple(shifts),
                         edges, slots, tuple(face_offsets))
    if class_twists is not None:
        pmesh = pmesh.with_class_twists(class_twists)
    return pmesh


def _embed3(p: np.ndarray, n_dim: int) -> np.ndarray:
    if n_dim == 3:
        return np.asarray(p, dtype=float)
    return np.array([p[0], p[1], 0.0])


def periodic_scaffold(lattice: Lattice, generators: GeneratorSet | None = None
                      ) -> PeriodicMesh:
    """Fundamental-domain cell complex of the periodic Voronoi honeycomb.

    For 3D lattices the faces are the Voronoi facets (each shared facet kept
    once); every interior edge then has K >= 3 incident facets.  For 2D, each
    generator's tile is one face and every edge has K = 2.
    """
    n_dim = lattice.dimension
    if generators is None:
        generators = GeneratorSet.reduce(lattice, np.zeros((1, n_dim)))
    pts = generators.points
    m = len(pts)
    shifts = list(itertools.product(range(-2, 3), repeat=n_dim))

    images = []           # (generator index, shift, position)
    for j in range(m):
        for s in shifts:
            images.append((j, s, pts[j] + lattice.point(s)))

    zero = (0,) * n_dim
    face_corners: list[list[np.ndarray]] = []
    for j in range(m):
        neighbors = []
        identities = []
        for k, s, pos in images:
            if k == j and s == zero:
                continue
            neighbors.append(pos)
            identities.append((k, s))
        verts, facets = _voronoi_cell(pts[j], np.array(neighbors))
        if n_dim == 2:
            cycle = _cell_polygon_2d(verts)
            face_corners.append([verts[i] + pts[j] for i in cycle])
            continue
        for ni, cycle in facets:
            k, s = identities[ni]
            if not (j, zero) < (k, s):
                continue
            face_corners.append([verts[i] + pts[j] for i in cycle])

    # vertex classes under lattice translation
    reps: list[np.ndarray] = []
    inv = np.linalg.inv(lattice.basis)
    classed_faces = []
    for corners in face_corners:
        cyc = []
        for pos in corners:
            hit = None
            for ci, r in enumerate(reps):
                s = np.round((pos - r) @ inv).astype(int)
                if np.linalg.norm(pos - (r + lattice.point(s))) < _TOL * 10:
                    hit = (ci, tuple(int(x) for x in s))
                    break
            if hit is None:
                frac = pos @ inv
                base = np.floor(frac + 1e-7).astype(int)
                reps.append(pos - lattice.point(base))
                hit = (len(reps) - 1, tuple(int(x) for x in base))
            cyc.append(hit)
        classed_faces.append(cyc)

    pmesh = periodic_mesh_from_data(lattice, np.array(reps), classed_faces)
    if n_dim == 3:
        thin = [k for k, rec in pmesh.edges.items() if rec.degree < 3]
        if thin:
            raise MeshError(
                f"scaffold identification failed: 3D honeycomb edges {thin[:3]} "
                "have fewer than 3 incident facets")
    return pmesh


# Inset used when measuring a component's repeat box from its curve; matches
# the default realization inset so the reported box describes the rendered strand.
_BOX_INSET = 0.25


@dataclass(frozen=True)
class PeriodicComponent:
    slots: tuple[int, ...]
    motions: tuple[int, ...]
    closure_offset: tuple[int, ...]
    repeat_box: tuple[int, ...]

    @property
    def kind(self) -> str:
        return "loop" if not any(self.closure_offset) else "thread"

    def direction(self) -> tuple[int, ...] | None:
        """Primitive direction of an infinite thread (None for loops)."""
        w = self.closure_offset
        if not any(w):
            return None
        g = 0
        for x in w:
            g = math.gcd(g, abs(x))
        d = tuple(x // g for x in w)
        for x in d:
            if x > 0:
                return d
            if x < 0:
                return tuple(-y for y in d)
        return d


@dataclass(frozen=True)
class PeriodicStrandSet:
    components: tuple[PeriodicComponent, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    def direction_classes(self) -> set[tuple[int, ...]]:
        return {c.direction() for c in self.components if c.kind == "thread"}

    def all_closed(self) -> bool:
        return all(c.kind == "loop" for c in self.components)


_END_A, _END_B = 0, 1


def trace_periodic(pmesh: PeriodicMesh) -> PeriodicStrandSet:
    """Quotient strand tracing with accumulated lattice offsets.

    Components are quotient successor-cycles; a component's closure offset is
    the net lattice translation after one period, and its repeat box is the
    per-axis extent, in cells, of the inset strand curve over one period
    (rounded fractional-coordinate span, at least 1 per axis).
    """
    n_dim = pmesh.lattice.dimension
    inv = np.linalg.inv(pmesh.lattice.basis)
    centroids = [np.mean([pmesh.corner_position(fi, k)
                          for k in range(len(pmesh.faces[fi]))], axis=0)
                 for fi in range(len(pmesh.faces))]

    corners: dict[tuple[int, int], tuple[int, int]] = {}
    for fi, cyc in enumerate(pmesh.faces):
        n = len(cyc)
        off = pmesh.face_offsets[fi]
        for k in range(n):
            s = pmesh.slots[off + k]
            s2 = pmesh.slots[off + (k + 1) % n]
            a = (s.slot_id, _END_B if s.direction > 0 else _END_A)
            b = (s2.slot_id, _END_A if s2.direction > 0 else _END_B)
            corners[a] = b
            corners[b] = a

    def attach_frac(sid: int, end: int, cell) -> np.ndarray:
        """Fractional coords of the inset attachment corner at a face copy."""
        s = pmesh.slots[sid]
        u, v, delta = s.edge
        ecopy = np.asarray(cell, dtype=float) + np.asarray(s.anchor, dtype=float)
        if end == _END_A:
            p = pmesh.vertices[u] + ecopy @ pmesh.lattice.basis
        else:
            p = (pmesh.vertices[v]
                 + (np.asarray(delta, dtype=float) + ecopy) @ pmesh.lattice.basis)
        cent = centroids[s.face] + np.asarray(cell, dtype=float) @ pmesh.lattice.basis
        return (p + _BOX_INSET * (cent - p)) @ inv

    def pipe(node):
        """(visited slot, motion, landing node, cell delta)"""
        sid, end = node
        s = pmesh.slots[sid]
        rec = pmesh.edges[s.edge]
        k = rec.degree
        if end == _END_A:
            dst = rec.radial_order[(s.radial_index + rec.twist) % k]
            d = pmesh.slots[dst]
            delta = tuple(a - b for a, b in zip(s.anchor, d.anchor))
            return sid, 1, (dst, _END_B), delta
        src_id = rec.radial_order[(s.radial_index - rec.twist) % k]
        src = pmesh.slots[src_id]
        delta = tuple(a - b for a, b in zip(s.anchor, src.anchor))
        return src_id, -1, (src_id, _END_A), delta

    seen: set[int] = set()
    components = []
    for s in pmesh.slots:
        if s.slot_id in seen:
            continue
        node = (s.slot_id, _END_A)
        start = node
        cell = (0,) * n_dim
        slots_seq: list[int] = []
        motions: list[int] = []
        points: list[np.ndarray] = []
        while True:
            label, motion, landing, delta = pipe(node)
            if slots_seq and node == start:
                break
            points.append(attach_frac(node[0], node[1], cell))
            slots_seq.append(label)
            motions.append(motion)
            seen.add(label)
            cell = tuple(c + d for c, d in zip(cell, delta))
            points.append(attach_frac(landing[0], landing[1], cell))
            node = corners[landing]
        closure = cell
        span = np.max(points, axis=0) - np.min(points, axis=0)
        box = tuple(max(1, int(math.floor(x + 0.5))) for x in span)
        slots_t, motions_t, closure = _canonical_periodic(
            pmesh, slots_seq, motions, closure)
        components.append(PeriodicComponent(slots_t, motions_t, closure, box))

    components.sort(key=lambda c: c.slots[0])
    return PeriodicStrandSet(tuple(components))


def _canonical_periodic(pmesh, slots_seq, motions, closure):
    pos = slots_seq.index(min(slots_seq))
    s = pmesh.slots[slots_seq[pos]]
    if motions[pos] * s.direction < 0:
        slots_seq = slots_seq[::-1]
        motions = [-m for m in motions[::-1]]
        closure = tuple(-c for c in closure)
        pos = len(slots_seq) - 1 - pos
    slots_seq = slots_seq[pos:] + slots_seq[:pos]
    motions = motions[pos:] + motions[:pos]
    return tuple(slots_seq), tuple(motions), tuple(int(c) for c in closure)


def tile(pmesh: PeriodicMesh, extent) -> LabeledMesh:
    """Replicate the fundamental domain into a finite labeled mesh.

    Adjacencies crossing the outer boundary are severed (those edges lose
    incident faces and may become boundary edges); twists are copied per
    translation class.
    """
    n_dim = pmesh.lattice.dimension
    extent = tuple(int(e) for e in extent)
    if len(extent) != n_dim or any(e < 1 for e in extent):
        raise MeshError(f"extent must be {n_dim} positive integers")

    instances: dict[tuple[int, tuple[int, ...]], int] = {}
    positions: list[np.ndarray] = []

    def instance(vclass: int, total_shift: tuple[int, ...]) -> int:
        key = (vclass, total_shift)
        if key not in instances:
            instances[key] = len(positions)
            positions.append(_embed3(
                pmesh.vertices[vclass] + pmesh.lattice.point(total_shift), n_dim))
        return instances[key]

    faces = []
    finite_twists: dict[tuple[int, int], int] = {}
    for cell in itertools.product(*[range(e) for e in extent]):
        for fi, (cyc, shf) in enumerate(zip(pmesh.faces, pmesh.face_shifts)):
            n = len(cyc)
            ids = [instance(cyc[k], tuple(c + s for c, s in zip(cell, shf[k])))
                   for k in range(n)]
            faces.append(tuple(ids))
            off = pmesh.face_offsets[fi]
            for k in range(n):
                slot = pmesh.slots[off + k]
                twist = pmesh.edges[slot.edge].twist
                a, b = ids[k], ids[(k + 1) % n]
                key = (a, b) if a < b else (b, a)
                prior = finite_twists.get(key)
                if prior is not None and prior != twist:
                    raise AssertionError(
                        f"inconsistent class twists meet at finite edge {key}")
                finite_twists[key] = twist
    return build_mesh(np.array(positions), faces,
                      twists=sorted(finite_twists.items()))


def parse_periodic_document(document: dict) -> PeriodicMesh:
    """Periodic LKM documents: a preset/basis with generators, or an explicit
    fundamental-domain mesh whose face entries carry per-vertex shifts."""
    block = document.get("periodic")
    if not isinstance(block, dict):
        raise MeshError("periodic block must be an object")
    if "basis" not in block:
        raise MeshError("periodic block needs a 'basis'")
    lattice = Lattice(np.asarray(block["basis"], dtype=float))
    class_twists = block.get("class_twists")

    if document.get("faces"):
        verts = np.asarray(document["vertices"], dtype=float)
        faces_with_shifts = []
        zero = (0,) * lattice.dimension
        for cyc in document["faces"]:
            entry = []
            for item in cyc:
                if isinstance(item, dict):
                    entry.append((int(item["v"]), tuple(item.get("shift", zero))))
                else:
                    entry.append((int(item), zero))
            faces_with_shifts.append(entry)
        return periodic_mesh_from_data(lattice, verts, faces_with_shifts,
                                       class_twists)

    generators = None
    if "generators" in block:
        generators = GeneratorSet.reduce(lattice, block["generators"])
    pmesh = periodic_scaffold(lattice, generators)
    if class_twists is not None:
        pmesh = pmesh.with_class_twists(class_twists)
    return pmesh


def serialize_periodic(pmesh: PeriodicMesh) -> dict:
    faces = []
    for cyc, shf in zip(pmesh.faces, pmesh.face_shifts):
        faces.append([{"v": int(v), "shift": list(s)}
                      for v, s in zip(cyc, shf)])
    return {
        "vertices": [[float(c) for c in v] for v in pmesh.vertices],
        "faces": faces,
        "twists": [],
        "null_sides": [],
        "periodic": {
            "basis": [[float(c) for c in row] for row in pmesh.lattice.basis],
            "class_twists": pmesh.class_twists(),
        },
    }
