"""High-level design operators: spanning-tree knots, chainmail labelings,
twist tightening, and symmetry-orbit enumeration."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .mesh import LabeledMesh, EdgeKey, edge_key, dual_graph, _UnionFind
from .strands import StrandSet, trace


class DesignError(ValueError):
    """Design operator preconditions violated."""


TwistAssignment = dict  # EdgeKey -> int


def spanning_tree_knot(mesh: LabeledMesh, seed: int,
                       odd_value: int = 1, even_value: int = 0) -> TwistAssignment:
    """Twist a random dual spanning tree into a single-cycle knot.

    Tree edges receive ``odd_value``, all other interior (K=2) edges
    ``even_value``; boundary edges stay untwisted.  Only 2-manifolds are
    accepted: the single-cycle guarantee is stated for them alone.
    """
    if odd_value % 2 == 0:
        raise DesignError(f"odd_value must be odd, got {odd_value}")
    if even_value % 2 != 0:
        raise DesignError(f"even_value must be even, got {even_value}")
    bad = [k for k, rec in mesh.edges.items() if rec.degree > 2]
    if bad:
        raise DesignError(
            f"mesh has non-manifold edges (K >= 3) at {bad[:4]}; the "
            "spanning-tree construction is only guaranteed on 2-manifolds")
    graph = dual_graph(mesh)
    if not graph.connected():
        raise DesignError("dual graph is disconnected")

    rng = random.Random(seed)
    weighted = sorted(
        ((rng.random(), u, v, key) for u, v, key in graph.links),
        key=lambda w: w[0])
    uf = _UnionFind(graph.node_count)
    tree: set[EdgeKey] = set()
    for _, u, v, key in weighted:
        if uf.union(u, v):
            tree.add(key)

    assignment = {}
    for key, rec in mesh.edges.items():
        if key in tree:
            assignment[key] = odd_value
        elif rec.degree == 2:
            assignment[key] = even_value
        else:
            assignment[key] = 0
    count = trace(mesh.with_twists(assignment, replace=True)).component_count
    if count != 1:
        raise AssertionError(
            f"spanning-tree labeling traced to {count} components, not 1")
    return assignment


def chainmail(mesh: LabeledMesh, signs: dict[EdgeKey, int] | None = None,
              magnitude_fn=None) -> TwistAssignment:
    """Face-preserving linked labeling: every interior edge gets a nonzero
    multiple of its degree (sign x magnitude); boundary (K=1) edges get 0.

    Defaults: all signs +1, magnitude K_e.
    """
    assignment = {}
    for key, rec in mesh.edges.items():
        if rec.degree == 1:
            assignment[key] = 0
            continue
        sign = 1 if signs is None else signs[key]
        if sign not in (1, -1):
            raise DesignError(f"sign for edge {key} must be +1 or -1")
        magnitude = rec.degree if magnitude_fn is None else int(magnitude_fn(key))
        if magnitude <= 0 or magnitude % rec.degree != 0:
            raise DesignError(
                f"magnitude {magnitude} for edge {key} is not a positive "
                f"multiple of its degree {rec.degree}")
        assignment[key] = sign * magnitude
    strands = trace(mesh.with_twists(assignment, replace=True))
    if strands.component_count != mesh.face_count:
        raise AssertionError("chainmail labeling did not preserve face cycles")
    return assignment


def tighten(mesh: LabeledMesh, assignment: TwistAssignment,
            key: EdgeKey, m: int) -> TwistAssignment:
    """t_e -> t_e + m*K_e; leaves the traced partition invariant exactly."""
    key = edge_key(*key)
    if key not in mesh.edges:
        raise DesignError(f"unknown edge {key}")
    out = dict(assignment)
    out[key] = out.get(key, 0) + m * mesh.edges[key].degree
    return out


@dataclass(frozen=True)
class Automorphism:
    vertex_map: tuple[int, ...]
    edge_map: dict[EdgeKey, EdgeKey]
    orientation: int   # +1 all face cycles preserved, -1 otherwise

    def apply_vertex(self, v: int) -> int:
        return self.vertex_map[v]


@dataclass(frozen=True)
class SymmetryGroup:
    elements: tuple[Automorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def rotations(self) -> tuple[Automorphism, ...]:
        return tuple(g for g in self.elements if g.orientation > 0)


def _face_canon(cycle: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    n = len(cycle)
    for seq in (cycle, cycle[::-1]):
        for r in range(n):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


def _face_match_orientation(image: tuple[int, ...], target: tuple[int, ...]) -> int | None:
    """+1 if image equals target up to rotation, -1 if up to reversal, else None."""
    n = len(target)
    if len(image) != n:
        return None
    for r in range(n):
        if image[r:] + image[:r] == target:
            return 1
    rev = image[::-1]
    for r in range(n):
        if rev[r:] + rev[:r] == target:
            return -1
    return None


def automorphisms(mesh: LabeledMesh, max_vertices: int = 12) -> SymmetryGroup:
    """All vertex permutations mapping the face multiset to itself.

    Brute-force backtracking over the vertex adjacency structure; bound by
    ``max_vertices`` (the search is exponential in principle).
    """
    nv = mesh.vertex_count
    if nv > max_vertices:
        raise DesignError(f"{nv} vertices exceeds the brute-force bound "
                          f"{max_vertices}")
    adjacency = [set() for _ in range(nv)]
    for a, b in mesh.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    degree = [len(a) for a in adjacency]
    canon_count: dict[tuple, int] = {}
    for cyc in mesh.faces:
        canon = _face_canon(cyc)
        canon_count[canon] = canon_count.get(canon, 0) + 1

    elements = []
    perm = [-1] * nv
    used = [False] * nv

    def face_check(perm_full: list[int]) -> int | None:
        """Validate the face multiset; return overall orientation or None."""
        remaining = dict(canon_count)
        orientations = []
        for cyc in mesh.faces:
            image = tuple(perm_full[v] for v in cyc)
            canon = _face_canon(image)
            if remaining.get(canon, 0) <= 0:
                return None
            remaining[canon] -= 1
            # orientation vs any stored face with the same canon
            sign = None
            for target in mesh.faces:
                if _face_canon(target) != canon:
                    continue
                sign = _face_match_orientation(image, target)
                if sign is not None:
                    break
            if sign is None:
                return None
            orientations.append(sign)
        if all(s > 0 for s in orientations):
            return 1
        return -1

    def backtrack(i: int):
        if i == nv:
            orientation = face_check(perm)
            if orientation is not None:
                emap = {key: edge_key(perm[key[0]], perm[key[1]])
                        for key in mesh.edges}
                if set(emap.values()) == set(mesh.edges):
                    elements.append(Automorphism(tuple(perm), emap, orientation))
            return
        for w in range(nv):
            if used[w] or degree[w] != degree[i]:
                continue
            ok = True
            for u in range(i):
                if (u in adjacency[i]) != (perm[u] in adjacency[w]):
                    ok = False
                    break
            if ok:
                perm[i] = w
                used[w] = True
                backtrack(i + 1)
                used[w] = False
                perm[i] = -1

    backtrack(0)
    return SymmetryGroup(tuple(elements))


GROUP_MODES = ("rotations", "full", "full_with_negation")


@dataclass(frozen=True)
class OrbitResult:
    mode: str
    orbit_count: int
    representatives: tuple[tuple[int, ...], ...]   # one assignment per orbit
    assignment_count: int                          # predicate survivors
    burnside_count: int                            # independent cross-check

    def as_assignments(self, edge_order) -> list[TwistAssignment]:
        return [dict(zip(edge_order, rep)) for rep in self.representatives]


def _edge_action(group: SymmetryGroup, edge_order: list[EdgeKey], mode: str):
    """Per group element: (index permutation over edge_order, label sign)."""
    index = {k: i for i, k in enumerate(edge_order)}
    actions = []
    for g in group.elements:
        if mode == "rotations" and g.orientation < 0:
            continue
        perm = tuple(index[g.edge_map[k]] for k in edge_order)
        sign = -1 if (mode == "full_with_negation" and g.orientation < 0) else 1
        actions.append((perm, sign))
    return actions


def enumerate_orbits(mesh: LabeledMesh, palette, predicate=None,
                     group_mode: str = "rotations",
                     bound: int = 10 ** 7) -> OrbitResult:
    """Exhaust palette^edges, filter by a predicate on the traced strands,
    and count orbits under the chosen symmetry action.

    The orbit count is computed twice: by explicit canonical representatives
    and by the Burnside average over the group; both are returned.
    """
    if group_mode not in GROUP_MODES:
        raise DesignError(f"unknown group mode {group_mode!r}")
    palette = sorted(set(int(v) for v in palette))
    edge_order = list(mesh.edges)
    total = len(palette) ** len(edge_order)
    if total > bound:
        raise DesignError(f"{total} assignments exceed the exhaustive bound {bound}")

    group = automorphisms(mesh)
    actions = _edge_action(group, edge_order, group_mode)
    degrees = [mesh.edges[k].degree for k in edge_order]

    trace_cache: dict[tuple[int, ...], StrandSet] = {}

    def survives(assignment: tuple[int, ...]) -> bool:
        if predicate is None:
            return True
        residues = tuple(t % k for t, k in zip(assignment, degrees))
        strands = trace_cache.get(residues)
        if strands is None:
            strands = trace(mesh.with_twists(dict(zip(edge_order, assignment)),
                                             replace=True))
            trace_cache[residues] = strands
        return bool(predicate(strands))

    survivors = [a for a in itertools.product(palette, repeat=len(edge_order))
                 if survives(a)]
    survivor_set = set(survivors)

    canon_reps = {}
    for a in survivors:
        orbit = {tuple(sign * a[p] for p in perm) for perm, sign in actions}
        if not orbit <= survivor_set:
            raise AssertionError("predicate is not invariant under the group action")
        rep = min(orbit)
        canon_reps.setdefault(rep, rep)
    representatives = tuple(sorted(canon_reps))

    fixed_total = 0
    for perm, sign in actions:
        fixed_total += sum(
            1 for a in survivors
            if all(sign * a[p] == a[i] for i, p in enumerate(perm)))
    if fixed_total % len(actions) != 0:
        raise AssertionError("Burnside sum is not divisible by the group order")
    burnside = fixed_total // len(actions)

    return OrbitResult(group_mode, len(representatives), representatives,
                       len(survivors), burnside)


def single_cycle(strands: StrandSet) -> bool:
    """Predicate: the labeling traces to exactly one closed cycle."""
    return strands.component_count == 1 and not strands.paths


def assignment_document(assignment: TwistAssignment) -> dict:
    """TwistAssignment document, mergeable into LKM files."""
    return {"twists": [{"edge": [a, b], "t": int(t)}
                       for (a, b), t in sorted(assignment.items()) if t != 0]}
