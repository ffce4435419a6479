"""Strand tracing: per-edge cyclic shifts and global cycle decomposition.

An edge of degree K with twist t reconnects the K strand stations around it
by the shift i -> i+t (mod K).  Globally, every strand alternates between
*ribbon* passages (through an edge's tubular neighborhood, entering at one
endpoint and leaving at the other, shifted by the twist) and *corner* hops
(rounding a face corner between two adjacent sides).  This makes each strand
a cycle (or, after null cuts, a path) of a 2-regular graph whose nodes are
(slot, edge-endpoint) attachments.

Each ribbon is labeled by the slot at its min-endpoint station, so a strand
visits every non-null slot exactly once and the traced components partition
the non-null slots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mesh import LabeledMesh, Slot


class _Terminus:
    def __repr__(self):
        return "TERMINUS"


#: Returned by :func:`successor` past the end of an open strand.
TERMINUS = _Terminus()

_END_A = 0   # attachment at the edge's min-id endpoint
_END_B = 1


@dataclass(frozen=True)
class OrbitLaw:
    K: int
    t: int
    orbit_count: int
    orbit_length: int


def orbit_law(K: int, t: int) -> OrbitLaw:
    """Local law: a degree-K edge twisted by t yields gcd(K, t) strands of
    length K / gcd(K, t), with gcd(K, 0) = K."""
    if K < 1:
        raise ValueError(f"edge degree must be >= 1, got {K}")
    r = t % K
    count = K if r == 0 else math.gcd(K, r)
    return OrbitLaw(K, t, count, K // count)


def transfer(mesh: LabeledMesh, slot_id: int) -> int:
    """The slot at radial station (i + t) mod K on the same edge."""
    s = mesh.slots[slot_id]
    rec = mesh.edges[s.edge]
    return rec.radial_order[(s.radial_index + rec.twist) % rec.degree]


def _itransfer(mesh: LabeledMesh, slot_id: int) -> int:
    s = mesh.slots[slot_id]
    rec = mesh.edges[s.edge]
    return rec.radial_order[(s.radial_index - rec.twist) % rec.degree]


@dataclass(frozen=True)
class StrandSet:
    """Decomposition of the non-null slots into closed cycles and open paths.

    Parallel ``*_motions`` sequences record, per visited slot, whether the
    strand moves along the edge axis min->max (+1) or max->min (-1); the
    geometry module uses these to realize helical passages.
    """

    cycles: tuple[tuple[int, ...], ...]
    paths: tuple[tuple[int, ...], ...]
    cycle_motions: tuple[tuple[int, ...], ...]
    path_motions: tuple[tuple[int, ...], ...]

    @property
    def component_count(self) -> int:
        return len(self.cycles) + len(self.paths)

    def components(self):
        """(kind, slots, motions) triples in deterministic order."""
        for slots, motions in zip(self.cycles, self.cycle_motions):
            yield "cycle", slots, motions
        for slots, motions in zip(self.paths, self.path_motions):
            yield "path", slots, motions

    def slot_partition(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(slots) for _, slots, _ in self.components())


def _attachment_at(slot: Slot, head: bool) -> int:
    """Edge endpoint (_END_A/_END_B) at the side's head or tail vertex."""
    if head:
        return _END_B if slot.direction > 0 else _END_A
    return _END_A if slot.direction > 0 else _END_B


def _corner_map(mesh: LabeledMesh) -> dict[tuple[int, int], tuple[int, int]]:
    """Corner arcs: (slot, end) <-> (next slot, end) at each face corner."""
    corners: dict[tuple[int, int], tuple[int, int]] = {}
    for fi, cyc in enumerate(mesh.faces):
        n = len(cyc)
        off = mesh.face_offsets[fi]
        for k in range(n):
            s = mesh.slots[off + k]
            s2 = mesh.slots[off + (k + 1) % n]
            a = (s.slot_id, _attachment_at(s, head=True))
            b = (s2.slot_id, _attachment_at(s2, head=False))
            corners[a] = b
            corners[b] = a
    return corners


def _pipe_step(mesh: LabeledMesh, node: tuple[int, int]):
    """Cross the edge from an attachment node.

    Returns (visited slot id, motion, landing node) or None when the ribbon
    is cut (its labeling slot is null).
    """
    sid, end = node
    if end == _END_A:
        if mesh.slots[sid].null:
            return None
        return sid, 1, (transfer(mesh, sid), _END_B)
    src = _itransfer(mesh, sid)
    if mesh.slots[src].null:
        return None
    return src, -1, (src, _END_A)


def trace(mesh: LabeledMesh) -> StrandSet:
    """Decompose all non-null slots into strand cycles and null-cut paths.

    Components are ordered by their minimal slot id; each is oriented so its
    minimal slot is traversed moving with its face's cycle, and cycles are
    rotated to start there.
    """
    corners = _corner_map(mesh)
    visited: set[int] = set()          # ribbon labels consumed
    raw: list[tuple[bool, list[int], list[int]]] = []

    def walk(start: tuple[int, int]):
        """Follow pipe/corner alternation from an about-to-cross node."""
        slots_seq: list[int] = []
        motions: list[int] = []
        node = start
        while True:
            step = _pipe_step(mesh, node)
            if step is None:
                return slots_seq, motions, None
            label, motion, landing = step
            if slots_seq and label == slots_seq[0] and motion == motions[0]:
                return slots_seq, motions, node
            slots_seq.append(label)
            motions.append(motion)
            visited.add(label)
            node = corners[landing]

    # Open paths: start just past each cut.  A null slot n removes the ribbon
    # between (n, A) and (transfer(n), B); each freed attachment is a path
    # end, and the continuation resumes at its corner neighbor.  A path seen
    # from its far end already is skipped via the visited set.
    for s in mesh.slots:
        if not s.null:
            continue
        for end_node in ((transfer(mesh, s.slot_id), _END_B),
                         (s.slot_id, _END_A)):
            resume = corners[end_node]
            first = _pipe_step(mesh, resume)
            if first is None or first[0] in visited:
                continue
            slots_seq, motions, closed = walk(resume)
            if closed is not None:
                raise AssertionError("cut-adjacent walk closed unexpectedly")
            if slots_seq:
                raw.append((False, slots_seq, motions))

    for s in mesh.slots:
        if s.null or s.slot_id in visited:
            continue
        slots_seq, motions, closed = walk((s.slot_id, _END_A))
        if closed is None:
            # Reached a cut going forward; the remainder of this open strand
            # was not captured by the cut scan only if the cut scan has not
            # run over it, which cannot happen: every path was seeded above.
            raise AssertionError("open strand discovered outside the cut scan")
        raw.append((True, slots_seq, motions))

    cycles, cycle_motions, paths, path_motions = [], [], [], []
    for closed, slots_seq, motions in raw:
        seq, mot = _canonical_orientation(mesh, closed, slots_seq, motions)
        if closed:
            cycles.append(seq)
            cycle_motions.append(mot)
        else:
            paths.append(seq)
            path_motions.append(mot)

    order = sorted(range(len(cycles)), key=lambda i: cycles[i][0])
    cycles = tuple(cycles[i] for i in order)
    cycle_motions = tuple(cycle_motions[i] for i in order)
    order = sorted(range(len(paths)), key=lambda i: min(paths[i]))
    paths = tuple(paths[i] for i in order)
    path_motions = tuple(path_motions[i] for i in order)
    return StrandSet(cycles, paths, cycle_motions, path_motions)


def _canonical_orientation(mesh, closed, slots_seq, motions):
    """Orient so the minimal slot moves with its face cycle; start cycles there."""
    pos = slots_seq.index(min(slots_seq))
    s = mesh.slots[slots_seq[pos]]
    if motions[pos] * s.direction < 0:
        slots_seq = slots_seq[::-1]
        motions = [-m for m in motions[::-1]]
        pos = len(slots_seq) - 1 - pos
    if closed:
        slots_seq = slots_seq[pos:] + slots_seq[:pos]
        motions = motions[pos:] + motions[:pos]
    return tuple(slots_seq), tuple(motions)


def successor(mesh: LabeledMesh, slot_id: int):
    """Next slot along the canonically oriented strand through ``slot_id``;
    TERMINUS past the final slot of an open path."""
    s = mesh.slots[slot_id]
    if s.null:
        raise ValueError(f"slot {slot_id} is null")
    for kind, slots_seq, _ in trace(mesh).components():
        if slot_id in slots_seq:
            i = slots_seq.index(slot_id)
            if i + 1 < len(slots_seq):
                return slots_seq[i + 1]
            return slots_seq[0] if kind == "cycle" else TERMINUS
    raise AssertionError("slot missing from trace")


def component_count(mesh: LabeledMesh) -> int:
    return trace(mesh).component_count


def strand_report(mesh: LabeledMesh, strands: StrandSet | None = None) -> dict:
    """Strand report document: components with per-slot (face, index) pairs."""
    strands = strands if strands is not None else trace(mesh)
    components = []
    for kind, slots_seq, _ in strands.components():
        components.append({
            "kind": kind,
            "slots": [[mesh.slots[sid].face, mesh.slots[sid].index]
                      for sid in slots_seq],
            "length": len(slots_seq),
        })
    return {"components": components, "count": strands.component_count}
