"""Labeled non-manifold surface meshes: edge tables, radial orderings, diagnostics.

A mesh is a set of vertices plus faces given as vertex cycles.  Edges are
derived: every face-boundary occurrence of an unordered vertex pair is a
*slot*, and the slots of an edge are ordered angularly around the edge axis
(the radial order).  Each edge carries an integer twist label; each slot can
be flagged null.  Meshes are immutable after construction; all label edits go
through ``with_twists`` / ``with_nulls`` which return new meshes sharing the
vertex array.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

GEOM_TOL = 1e-9

EdgeKey = tuple[int, int]


class MeshError(ValueError):
    """Structurally invalid mesh input or labeling."""


def edge_key(u: int, v: int) -> EdgeKey:
    """Canonical unordered edge key; the a->b axis points min->max id."""
    if u == v:
        raise MeshError(f"degenerate edge ({u},{v})")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Slot:
    """One directed occurrence of an edge on a face boundary."""

    slot_id: int
    face: int
    index: int              # position k in the face cycle: side v[k] -> v[k+1]
    edge: EdgeKey
    direction: int          # +1 if the face traverses the edge a->b (a < b)
    radial_index: int
    null: bool = False


@dataclass(frozen=True)
class EdgeRecord:
    key: EdgeKey
    radial_order: tuple[int, ...]   # slot ids sorted by angle about the a->b axis
    twist: int = 0

    @property
    def degree(self) -> int:
        return len(self.radial_order)


@dataclass(frozen=True, eq=False)
class LabeledMesh:
    vertices: np.ndarray                      # (V, 3) float
    faces: tuple[tuple[int, ...], ...]
    edges: dict[EdgeKey, EdgeRecord]          # insertion order = sorted keys
    slots: tuple[Slot, ...]
    face_offsets: tuple[int, ...]             # slot id of each face's side 0
    warnings: tuple[str, ...] = ()

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def slot_of(self, face: int, k: int) -> Slot:
        return self.slots[self.face_offsets[face] + k]

    def face_slots(self, face: int) -> tuple[Slot, ...]:
        off = self.face_offsets[face]
        return self.slots[off:off + len(self.faces[face])]

    def twist(self, key: EdgeKey) -> int:
        return self.edges[key].twist

    def twist_map(self) -> dict[EdgeKey, int]:
        return {k: e.twist for k, e in self.edges.items()}

    def null_slots(self) -> tuple[int, ...]:
        return tuple(s.slot_id for s in self.slots if s.null)

    def face_centroid(self, face: int) -> np.ndarray:
        return self.vertices[list(self.faces[face])].mean(axis=0)

    def mean_edge_length(self) -> float:
        total = 0.0
        for a, b in self.edges:
            total += float(np.linalg.norm(self.vertices[b] - self.vertices[a]))
        return total / max(1, len(self.edges))

    def with_twists(self, twists: dict[EdgeKey, int], replace: bool = False) -> "LabeledMesh":
        """New mesh with updated twist labels (merged unless ``replace``)."""
        for k in twists:
            if edge_key(*k) not in self.edges:
                raise MeshError(f"twist on nonexistent edge {k}")
        new_edges = {}
        for k, rec in self.edges.items():
            if k in twists:
                t = int(twists[k])
            else:
                t = 0 if replace else rec.twist
            new_edges[k] = EdgeRecord(k, rec.radial_order, t)
        return LabeledMesh(self.vertices, self.faces, new_edges, self.slots,
                           self.face_offsets, self.warnings)

    def with_nulls(self, slot_ids, value: bool = True) -> "LabeledMesh":
        """New mesh with the given slots' null flags set to ``value``."""
        ids = set(slot_ids)
        bad = [i for i in ids if not (0 <= i < len(self.slots))]
        if bad:
            raise MeshError(f"unknown slot ids {sorted(bad)}")
        new_slots = tuple(
            Slot(s.slot_id, s.face, s.index, s.edge, s.direction, s.radial_index, value)
            if s.slot_id in ids else s
            for s in self.slots
        )
        return LabeledMesh(self.vertices, self.faces, self.edges, new_slots,
                           self.face_offsets, self.warnings)

    def slot_for_occurrence(self, face: int, key: EdgeKey, occurrence: int = 0) -> Slot:
        """The occurrence-th slot of ``face`` lying on ``key``, in cycle order."""
        key = edge_key(*key)
        hits = [s for s in self.face_slots(face) if s.edge == key]
        if not hits:
            raise MeshError(f"face {face} has no side on edge {key}")
        if not 0 <= occurrence < len(hits):
            raise MeshError(
                f"face {face} has {len(hits)} side(s) on edge {key}; "
                f"occurrence {occurrence} out of range")
        return hits[occurrence]


def _perp_frame(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal frame perpendicular to unit vector u."""
    k = int(np.argmin(np.abs(u)))
    e = np.zeros(3)
    e[k] = 1.0
    e1 = e - np.dot(e, u) * u
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(u, e1)


def _representative_point(verts: np.ndarray, cycle: tuple[int, ...], k: int,
                          key: EdgeKey, occurrences: int) -> np.ndarray:
    """Point standing in for a face side when sorting slots radially.

    Normally the face centroid.  When the same edge appears several times in
    one face, each occurrence is positioned by the chain of boundary vertices
    that follows it up to the next occurrence, so the two slots get
    independent radial stations.
    """
    n = len(cycle)
    if occurrences == 1:
        return verts[list(cycle)].mean(axis=0)
    chain = []
    j = (k + 1) % n
    for _ in range(n):
        u, v = cycle[j], cycle[(j + 1) % n]
        if edge_key(u, v) == key:
            break
        chain.append(cycle[(j + 1) % n])
        j = (j + 1) % n
    interior = [c for c in chain if c not in key]
    if interior:
        return verts[interior].mean(axis=0)
    return verts[list(cycle)].mean(axis=0)


def build_mesh(vertices, faces, twists=None, null_sides=None) -> LabeledMesh:
    """Assemble a LabeledMesh: edge table, radial orderings, labels.

    ``twists``: mapping or iterable of ((a,b), t); ``null_sides``: iterable of
    (face, (a,b), occurrence) triples.
    """
    verts = np.asarray(vertices, dtype=float)
    if verts.ndim != 2 or verts.shape[1] not in (2, 3):
        raise MeshError("vertices must be an (V,2) or (V,3) array")
    if verts.shape[1] == 2:
        verts = np.column_stack([verts, np.zeros(len(verts))])
    if not np.all(np.isfinite(verts)):
        raise MeshError("vertex coordinates must be finite")
    nv = len(verts)

    cycles: list[tuple[int, ...]] = []
    for fi, cyc in enumerate(faces):
        cyc = tuple(int(v) for v in cyc)
        if len(cyc) < 3:
            raise MeshError(f"face {fi} has {len(cyc)} vertices; bigons and "
                            "shorter cycles are not supported")
        for v in cyc:
            if not 0 <= v < nv:
                raise MeshError(f"face {fi} references unknown vertex {v}")
        for j in range(len(cyc)):
            if cyc[j] == cyc[(j + 1) % len(cyc)]:
                raise MeshError(f"face {fi} repeats vertex {cyc[j]} consecutively")
        cycles.append(cyc)

    slots_raw: list[tuple[int, int, EdgeKey, int]] = []   # (face, k, key, dir)
    face_offsets: list[int] = []
    per_edge: dict[EdgeKey, list[int]] = {}
    for fi, cyc in enumerate(cycles):
        face_offsets.append(len(slots_raw))
        for k in range(len(cyc)):
            u, v = cyc[k], cyc[(k + 1) % len(cyc)]
            key = edge_key(u, v)
            sid = len(slots_raw)
            slots_raw.append((fi, k, key, 1 if u < v else -1))
            per_edge.setdefault(key, []).append(sid)

    occ_count: dict[tuple[int, EdgeKey], int] = Counter(
        (f, key) for f, _, key, _ in slots_raw)

    radial_index = [0] * len(slots_raw)
    radial_orders: dict[EdgeKey, tuple[int, ...]] = {}
    for key in sorted(per_edge):
        sids = per_edge[key]
        if len(sids) == 1:
            radial_orders[key] = (sids[0],)
            continue
        a, b = key
        axis = verts[b] - verts[a]
        length = float(np.linalg.norm(axis))
        if length < 1e-12:
            raise MeshError(f"edge {key} has coincident endpoints")
        u = axis / length
        e1, e2 = _perp_frame(u)
        mid = 0.5 * (verts[a] + verts[b])
        scale = max(length, 1.0)
        entries = []
        for sid in sids:
            fi, k, _, _ = slots_raw[sid]
            rep = _representative_point(verts, cycles[fi], k, key, occ_count[(fi, key)])
            d = rep - mid
            r = d - np.dot(d, u) * u
            if np.linalg.norm(r) <= GEOM_TOL * scale:
                raise MeshError(
                    f"face {fi} is degenerate about edge {key}: its "
                    "representative point lies on the edge axis")
            entries.append((math.atan2(np.dot(r, e2), np.dot(r, e1)), fi, k, sid))
        entries.sort(key=lambda e: e[:3])
        order = [e[3] for e in entries]
        # anchor the cyclic order at the minimal slot id so the linearized
        # indices are invariant under rigid motions of the whole mesh
        start = order.index(min(order))
        order = tuple(order[start:] + order[:start])
        for i, sid in enumerate(order):
            radial_index[sid] = i
        radial_orders[key] = order

    warnings: list[str] = []
    twist_map: dict[EdgeKey, int] = {}
    if twists:
        items = twists.items() if isinstance(twists, dict) else twists
        for key, t in items:
            key = edge_key(*key)
            if key not in radial_orders:
                raise MeshError(f"twist on nonexistent edge {key}")
            if key in twist_map:
                raise MeshError(f"duplicate twist entries for edge {key}")
            twist_map[key] = int(t)
            if len(radial_orders[key]) == 1 and int(t) != 0:
                warnings.append(
                    f"twist {t} on boundary edge {key} (K=1) acts as the identity")

    slots = [Slot(sid, f, k, key, d, radial_index[sid])
             for sid, (f, k, key, d) in enumerate(slots_raw)]

    if null_sides:
        for face, key, occurrence in null_sides:
            key = edge_key(*key)
            fi = int(face)
            if not 0 <= fi < len(cycles):
                raise MeshError(f"null side on unknown face {fi}")
            hits = [s for s in slots if s.face == fi and s.edge == key]
            if not hits:
                raise MeshError(f"null side: face {fi} has no side on edge {key}")
            if not 0 <= occurrence < len(hits):
                raise MeshError(f"null side occurrence {occurrence} out of range "
                                f"for face {fi}, edge {key}")
            s = hits[occurrence]
            slots[s.slot_id] = Slot(s.slot_id, s.face, s.index, s.edge,
                                    s.direction, s.radial_index, True)

    edges = {key: EdgeRecord(key, radial_orders[key], twist_map.get(key, 0))
             for key in sorted(radial_orders)}
    return LabeledMesh(verts, tuple(cycles), edges, tuple(slots),
                       tuple(face_offsets), tuple(warnings))


def radial_order(mesh: LabeledMesh, key: EdgeKey) -> tuple[int, ...]:
    """Slot ids of an edge in counterclockwise order about its a->b axis."""
    key = edge_key(*key)
    if key not in mesh.edges:
        raise MeshError(f"unknown edge {key}")
    return mesh.edges[key].radial_order


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    edge_degree_histogram: dict[int, int] = field(default_factory=dict)
    edge_connected_components: int = 0
    vertex_connected_components: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "errors": list(self.errors),
            "warnings": list(self.warnings),
            "edge_degree_histogram": {str(k): v for k, v in
                                      sorted(self.edge_degree_histogram.items())},
            "edge_connected_components": self.edge_connected_components,
            "vertex_connected_components": self.vertex_connected_components,
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True

    def component_count(self, members) -> int:
        return len({self.find(m) for m in members})


def connectivity_report(mesh: LabeledMesh) -> ValidationReport:
    """Connectivity diagnostics: edge- vs vertex-level component counts.

    A warning is emitted when faces split into more edge-connected components
    than vertex-connected ones: parts joined only through a vertex hinge can
    never yield a connected strand structure.
    """
    report = ValidationReport(warnings=list(mesh.warnings))
    report.edge_degree_histogram = dict(sorted(
        Counter(e.degree for e in mesh.edges.values()).items()))

    nf = mesh.face_count
    fuf = _UnionFind(nf)
    for rec in mesh.edges.values():
        faces = [mesh.slots[sid].face for sid in rec.radial_order]
        for other in faces[1:]:
            fuf.union(faces[0], other)
    report.edge_connected_components = fuf.component_count(range(nf)) if nf else 0

    used = sorted({v for cyc in mesh.faces for v in cyc})
    vuf = _UnionFind(mesh.vertex_count)
    for cyc in mesh.faces:
        for v in cyc[1:]:
            vuf.union(cyc[0], v)
    report.vertex_connected_components = vuf.component_count(used) if used else 0

    isolated = mesh.vertex_count - len(used)
    if isolated:
        report.warnings.append(f"{isolated} vertex(es) not referenced by any face")
    if report.edge_connected_components > report.vertex_connected_components:
        report.warnings.append(
            "vertex-hinged assembly: faces form "
            f"{report.edge_connected_components} edge-connected component(s) but "
            f"{report.vertex_connected_components} vertex-connected component(s); "
            "the resulting strand structure cannot be connected")
    return report


@dataclass(frozen=True)
class DualGraph:
    """Faces as nodes; one link per shared edge, parallel links allowed."""

    node_count: int
    links: tuple[tuple[int, int, EdgeKey], ...]

    def connected(self) -> bool:
        if self.node_count <= 1:
            return True
        uf = _UnionFind(self.node_count)
        for u, v, _ in self.links:
            uf.union(u, v)
        return uf.component_count(range(self.node_count)) == 1


def dual_graph(mesh: LabeledMesh) -> DualGraph:
    """Dual multigraph.  K=2 edges give one link; K>2 edges give one link per
    cyclically consecutive radial pair, so the dual sees the radial cycle."""
    links: list[tuple[int, int, EdgeKey]] = []
    for key, rec in mesh.edges.items():
        order = rec.radial_order
        if rec.degree == 2:
            links.append((mesh.slots[order[0]].face, mesh.slots[order[1]].face, key))
        elif rec.degree > 2:
            for i in range(rec.degree):
                u = mesh.slots[order[i]].face
                v = mesh.slots[order[(i + 1) % rec.degree]].face
                links.append((u, v, key))
    return DualGraph(mesh.face_count, tuple(links))
