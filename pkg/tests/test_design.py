import pytest

from linkknot import primitives
from linkknot.design import (DesignError, automorphisms, chainmail,
                             enumerate_orbits, single_cycle,
                             spanning_tree_knot, tighten, assignment_document)
from linkknot.strands import component_count, trace


def apply(mesh, assignment):
    return mesh.with_twists(dict(assignment), replace=True)


def test_spanning_tree_knot_cube_single_cycle(cube):
    for seed in (0, 1, 7, 42):
        assignment = spanning_tree_knot(cube, seed, 1, 0)
        tree_edges = [k for k, t in assignment.items() if t == 1]
        assert len(tree_edges) == 5  # |faces| - 1
        assert component_count(apply(cube, assignment)) == 1


def test_spanning_tree_knot_even_replacement(cube, tetra):
    assert component_count(apply(cube, spanning_tree_knot(cube, 3, 1, 2))) == 1
    assert component_count(apply(tetra, spanning_tree_knot(tetra, 5, 3, 4))) == 1


def test_spanning_tree_rejects_non_manifold():
    with pytest.raises(DesignError):
        spanning_tree_knot(primitives.book(3), 0)


def test_spanning_tree_rejects_bad_parity(cube):
    with pytest.raises(DesignError):
        spanning_tree_knot(cube, 0, odd_value=2)
    with pytest.raises(DesignError):
        spanning_tree_knot(cube, 0, even_value=1)


def test_spanning_tree_boundary_edges_untouched():
    mesh = primitives.random_sphere(11, 14)
    assignment = spanning_tree_knot(mesh, 2, 1, 0)
    assert component_count(apply(mesh, assignment)) == 1


def test_spanning_tree_on_tori():
    for seed, (n, m) in enumerate(((4, 3), (6, 4), (8, 5))):
        mesh = primitives.torus(n, m)
        assert all(rec.degree == 2 for rec in mesh.edges.values())
        for offset in range(5):
            assignment = spanning_tree_knot(mesh, seed * 10 + offset, 1, 2)
            assert component_count(apply(mesh, assignment)) == 1


def test_chainmail_tetra(tetra):
    assignment = chainmail(tetra)
    assert sorted(assignment.values()) == [2] * 6
    strands = trace(apply(tetra, assignment))
    assert strands.component_count == 4
    for cyc in strands.cycles:
        assert len({tetra.slots[s].face for s in cyc}) == 1


def test_chainmail_cube_six_rings(cube):
    assert component_count(apply(cube, chainmail(cube))) == 6


def test_chainmail_book_spine_multiple():
    mesh = primitives.book(3)
    assignment = chainmail(mesh, signs={k: -1 if k == (0, 1) else 1
                                        for k in mesh.edges})
    assert assignment[(0, 1)] == -3
    assert all(assignment[k] == 0 for k in mesh.edges if k != (0, 1))
    assert component_count(apply(mesh, assignment)) == 3


def test_chainmail_rejects_bad_magnitude(cube):
    with pytest.raises(DesignError):
        chainmail(cube, magnitude_fn=lambda k: 3)


def test_tighten_partition_invariant(cube):
    base = chainmail(cube)
    key = next(iter(cube.edges))
    before = trace(apply(cube, base)).slot_partition()
    for m in (-2, -1, 0, 1, 3):
        tightened = tighten(cube, base, key, m)
        assert tightened[key] == base[key] + 2 * m
        assert trace(apply(cube, tightened)).slot_partition() == before


def test_tighten_identity(cube):
    base = {k: 1 for k in cube.edges}
    assert tighten(cube, base, next(iter(cube.edges)), 0) == base


def test_tighten_book_k3():
    mesh = primitives.book(3, twist=1)
    assignment = tighten(mesh, mesh.twist_map(), (0, 1), 1)
    assert assignment[(0, 1)] == 4
    assert component_count(apply(mesh, assignment)) == 1


def test_automorphisms_tetra(tetra):
    group = automorphisms(tetra)
    assert group.order == 24
    assert len(group.rotations()) == 12
    ids = [g for g in group.elements if g.vertex_map == (0, 1, 2, 3)]
    assert len(ids) == 1 and ids[0].orientation == 1


def test_automorphisms_cube(cube):
    group = automorphisms(cube)
    assert group.order == 48
    assert len(group.rotations()) == 24


def test_automorphisms_asymmetric():
    # a fan with one extra flap: combinatorially scalene
    from linkknot.mesh import build_mesh
    verts = [(0, 0, 0), (1, 0, 0), (0.8, 0.8, 0), (0, 1, 0),
             (-0.8, 0.8, 0), (-1, 0, 0), (1.5, 0.5, 0.3)]
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (1, 6, 2)]
    group = automorphisms(build_mesh(verts, faces))
    assert group.order == 1


def test_automorphisms_bound():
    with pytest.raises(DesignError):
        automorphisms(primitives.book(8))  # 18 vertices


def test_orbits_chainmail_twelve(tetra):
    res = enumerate_orbits(tetra, [2, -2], predicate=None,
                           group_mode="rotations")
    assert res.orbit_count == 12
    assert res.burnside_count == 12
    assert res.assignment_count == 64


def test_orbits_trivial_palette(tetra):
    res = enumerate_orbits(tetra, [0], predicate=None, group_mode="full")
    assert res.orbit_count == 1


def test_orbits_bound(tetra):
    with pytest.raises(DesignError):
        enumerate_orbits(tetra, range(100), bound=10 ** 6)


def test_orbits_invariant_under_vertex_relabeling(tetra):
    res_a = enumerate_orbits(tetra, [2, -2], None, "rotations")
    relabel = [2, 0, 3, 1]
    verts = [None] * 4
    for old, new in enumerate(relabel):
        verts[new] = tuple(tetra.vertices[old])
    faces = [tuple(relabel[v] for v in f) for f in tetra.faces]
    from linkknot.mesh import build_mesh
    mesh_b = build_mesh(verts, faces)
    res_b = enumerate_orbits(mesh_b, [2, -2], None, "rotations")
    assert res_a.orbit_count == res_b.orbit_count


def test_orbits_burnside_matches_canonical(tetra):
    for mode in ("rotations", "full", "full_with_negation"):
        res = enumerate_orbits(tetra, [1, -1, 2, -2], single_cycle, mode)
        assert res.orbit_count == res.burnside_count


def test_single_cycle_counts_by_parity(tetra):
    res = enumerate_orbits(tetra, [1, -1, 2, -2], single_cycle, "rotations")
    # 28 single-cycle parity patterns x 64 label choices
    assert res.assignment_count == 1792


def test_assignment_document_roundtrip(cube):
    assignment = chainmail(cube)
    doc = assignment_document(assignment)
    assert doc["twists"]
    back = {tuple(item["edge"]): item["t"] for item in doc["twists"]}
    assert back == {k: v for k, v in assignment.items() if v != 0}
