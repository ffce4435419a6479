import math

import numpy as np
import pytest

from linkknot import primitives
from linkknot.lkm import parse_mesh, serialize_mesh
from linkknot.mesh import (MeshError, build_mesh, connectivity_report,
                           dual_graph, edge_key, radial_order)


def test_tetrahedron_edge_table(tetra):
    assert len(tetra.edges) == 6
    assert all(rec.degree == 2 for rec in tetra.edges.values())


def test_book_document_k3():
    mesh = primitives.book(3)
    spine = mesh.edges[(0, 1)]
    assert spine.degree == 3
    others = [rec for k, rec in mesh.edges.items() if k != (0, 1)]
    assert all(rec.degree == 1 for rec in others)


def test_two_sided_triangle_edges():
    mesh = primitives.two_sided_polygon(3)
    assert len(mesh.edges) == 3
    assert all(rec.degree == 2 for rec in mesh.edges.values())


def test_bigon_rejected():
    with pytest.raises(MeshError):
        build_mesh([(0, 0, 0), (1, 0, 0)], [(0, 1)])


def test_consecutive_repeat_rejected():
    with pytest.raises(MeshError):
        build_mesh([(0, 0, 0), (1, 0, 0), (1, 1, 0)], [(0, 1, 1)])


def test_unknown_vertex_rejected():
    with pytest.raises(MeshError):
        build_mesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 7)])


def test_twist_on_missing_edge_rejected(tetra):
    with pytest.raises(MeshError):
        tetra.with_twists({(0, 7): 1})


def test_duplicate_twist_rejected():
    verts = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    with pytest.raises(MeshError):
        build_mesh(verts, [(0, 1, 2)], twists=[((0, 1), 1), ((0, 1), 2)])


def test_boundary_twist_warns():
    mesh = primitives.book(1, twist=3)
    assert any("K=1" in w for w in mesh.warnings)


def test_radial_order_k1_single_slot():
    mesh = primitives.book(1)
    order = radial_order(mesh, (0, 1))
    assert len(order) == 1
    assert mesh.slots[order[0]].radial_index == 0


def test_radial_order_cube_k2(cube):
    for key, rec in cube.edges.items():
        assert rec.degree == 2
        assert sorted(mslot.radial_index for mslot in
                      (cube.slots[s] for s in rec.radial_order)) == [0, 1]


def test_radial_order_book_angles():
    # three pages at 0, 120, 240 degrees must sort in that angular order
    mesh = primitives.book(3)
    order = radial_order(mesh, (0, 1))
    faces = [mesh.slots[s].face for s in order]
    # page i was constructed at angle 2*pi*i/3; the sort starts at the
    # smallest signed angle but must preserve the cyclic order 0 -> 1 -> 2
    idx = faces.index(0)
    assert [faces[(idx + i) % 3] for i in range(3)] == [0, 1, 2]


def test_radial_order_rigid_motion_invariant():
    mesh = primitives.book(4)
    before = {k: tuple(mesh.slots[s].face for s in rec.radial_order)
              for k, rec in mesh.edges.items()}
    theta = 0.83
    rot = np.array([[math.cos(theta), -math.sin(theta), 0],
                    [math.sin(theta), math.cos(theta), 0],
                    [0, 0, 1.0]])
    moved = build_mesh(mesh.vertices @ rot.T + np.array([3.0, -1.0, 2.0]),
                       mesh.faces)
    after = {k: tuple(moved.slots[s].face for s in rec.radial_order)
             for k, rec in moved.edges.items()}
    assert before == after


def test_degenerate_face_reported():
    # a face whose centroid lies on the edge axis
    verts = [(0, 0, 0), (0, 0, 1), (0, 1, 0.5), (0, -1, 0.5),
             (1, 0, 0.25), (-1, 0, 0.75)]
    with pytest.raises(MeshError, match="degenerate"):
        build_mesh(verts, [(0, 1, 2), (0, 1, 3), (0, 1, 2, 1, 3)])


def test_same_edge_twice_in_one_face():
    # the face (0,1,2,1,3) traverses edge (1,2) twice; both occurrences get
    # their own slot and independent radial stations
    verts = [(0, 0, 0), (1, 0, 0), (2, 1, 0), (1, -2, 0.5)]
    mesh = build_mesh(verts, [(0, 1, 2, 1, 3)])
    rec = mesh.edges[(1, 2)]
    assert rec.degree == 2
    s0, s1 = (mesh.slots[s] for s in rec.radial_order)
    assert {s0.radial_index, s1.radial_index} == {0, 1}
    assert s0.face == s1.face == 0
    assert s0.index != s1.index
    first = mesh.slot_for_occurrence(0, (1, 2), 0)
    second = mesh.slot_for_occurrence(0, (1, 2), 1)
    assert first.index < second.index
    from linkknot.strands import trace
    strands = trace(mesh)
    assert sum(len(c) for c in strands.cycles) + \
        sum(len(p) for p in strands.paths) == 5


def test_slot_count_equals_boundary_length(tetra, cube):
    for mesh in (tetra, cube, primitives.book(5)):
        assert sum(r.degree for r in mesh.edges.values()) == \
            sum(len(f) for f in mesh.faces)


def test_connectivity_vertex_hinge_warning():
    mesh = primitives.vertex_hinged_tetrahedra()
    report = connectivity_report(mesh)
    assert report.edge_connected_components == 2
    assert report.vertex_connected_components == 1
    assert any("vertex-hinged" in w for w in report.warnings)


def test_connectivity_edge_hinge_no_warning():
    mesh = primitives.edge_hinged_tetrahedra()
    report = connectivity_report(mesh)
    assert report.edge_connected_components == 1
    assert not any("vertex-hinged" in w for w in report.warnings)


def test_connectivity_cube(cube):
    report = connectivity_report(cube)
    assert report.edge_connected_components == 1
    assert report.vertex_connected_components == 1
    assert report.edge_degree_histogram == {2: 12}


def test_dual_graph_tetra(tetra):
    graph = dual_graph(tetra)
    assert graph.node_count == 4
    assert len(graph.links) == 6
    pairs = {tuple(sorted((u, v))) for u, v, _ in graph.links}
    assert len(pairs) == 6  # complete graph on 4 nodes


def test_dual_graph_cube(cube):
    graph = dual_graph(cube)
    assert graph.node_count == 6
    assert len(graph.links) == 12
    assert graph.connected()


def test_dual_graph_two_sided_triangle_parallel_links():
    mesh = primitives.two_sided_polygon(3)
    graph = dual_graph(mesh)
    assert graph.node_count == 2
    assert len(graph.links) == len(mesh.edges) == 3
    assert all(tuple(sorted((u, v))) == (0, 1) for u, v, _ in graph.links)


def test_roundtrip_combinatorics(tetra):
    mesh = tetra.with_twists({(0, 1): 3, (1, 2): -2}).with_nulls([5])
    doc = serialize_mesh(mesh)
    again = parse_mesh(doc)
    assert again.faces == mesh.faces
    assert {k: r.twist for k, r in again.edges.items()} == \
        {k: r.twist for k, r in mesh.edges.items()}
    assert again.null_slots() == mesh.null_slots()


def test_edge_key_orientation():
    assert edge_key(3, 1) == (1, 3)
    with pytest.raises(MeshError):
        edge_key(2, 2)
