import math

import numpy as np
import pytest

from linkknot import primitives
from linkknot.geometry import (GeometryError, RealizationParams, StrandCurve,
                               StrandGeometry, component_color, export_obj,
                               linking_matrix, linking_number, min_separation,
                               realize, tube)
from linkknot.mesh import dual_graph
from linkknot.strands import trace


def all_twists(mesh, t):
    return mesh.with_twists({k: t for k in mesh.edges}, replace=True)


def circle(center, normal, radius, n=64):
    normal = np.asarray(normal, float)
    normal = normal / np.linalg.norm(normal)
    ref = np.array([1.0, 0, 0]) if abs(normal[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = np.cross(normal, ref)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    ts = np.linspace(0, 2 * math.pi, n, endpoint=False)
    return (np.asarray(center, float)
            + radius * (np.outer(np.cos(ts), e1) + np.outer(np.sin(ts), e2)))


def torus_link_pair(n_half_turns, R=3.0, r=1.0, samples=256):
    """The two components of a (2, 2n) torus link; linking number n."""
    ts = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    out = []
    for phase in (0.0, math.pi):
        w = n_half_turns * ts + phase
        out.append(np.column_stack([
            (R + r * np.cos(w)) * np.cos(ts),
            (R + r * np.cos(w)) * np.sin(ts),
            r * np.sin(w)]))
    return out


def crossing_count_linking(a_pts, b_pts, view=(0.2137, 0.4567, 0.8631)):
    """Independent linking oracle: signed crossings of a generic projection.

    Right-handed convention: the viewer looks along -view; a crossing is +1
    when the under strand points to the right of the over strand.
    lk = (sum of signs over all inter-curve crossings) / 2.
    """
    w = np.asarray(view, float)
    w /= np.linalg.norm(w)
    ref = np.array([1.0, 0.0, 0.0])
    e1 = np.cross(ref, w)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(w, e1)

    def project(pts):
        return np.column_stack([pts @ e1, pts @ e2, pts @ w])

    pa = project(a_pts)
    pb = project(b_pts)
    p1, p2 = pa, np.roll(pa, -1, axis=0)
    q1, q2 = pb, np.roll(pb, -1, axis=0)
    d = (p2 - p1)[:, None, :]
    e = (q2 - q1)[None, :, :]
    rhs = q1[None, :, :] - p1[:, None, :]
    denom = d[..., 0] * e[..., 1] - d[..., 1] * e[..., 0]
    safe = np.abs(denom) > 1e-14
    denom = np.where(safe, denom, 1.0)
    s = (rhs[..., 0] * e[..., 1] - rhs[..., 1] * e[..., 0]) / denom
    t = -(rhs[..., 0] * d[..., 1] - rhs[..., 1] * d[..., 0]) / denom
    hit = safe & (s >= 0) & (s < 1) & (t >= 0) & (t < 1)
    za = p1[:, None, 2] + s * d[..., 2]
    zb = q1[None, :, 2] + t * e[..., 2]
    cross = d[..., 0] * e[..., 1] - d[..., 1] * e[..., 0]
    # sign(det[over, under]): flipping operand order flips the determinant
    sign = np.where(za > zb, np.sign(cross), -np.sign(cross))
    total = int(np.round(sign[hit].sum()))
    assert total % 2 == 0
    return total // 2


# -- linking number -----------------------------------------------------------

def test_far_circles_unlinked():
    a = circle((0, 0, 0), (0, 0, 1), 1.0)
    b = circle((5, 0, 0), (0, 0, 1), 1.0)
    assert linking_number(a, b) == 0


def test_hopf_link_is_one_both_routes():
    a = circle((0, 0, 0), (0, 0, 1), 1.0)
    b = circle((1, 0, 0), (0, 1, 0), 1.0)
    gauss = linking_number(a, b)
    oracle = crossing_count_linking(a, b)
    assert abs(gauss) == 1
    assert gauss == oracle


def test_torus_links_match_crossing_oracle():
    for n in (1, 2, 3, 4):
        a, b = torus_link_pair(n)
        gauss = linking_number(a, b)
        oracle = crossing_count_linking(a, b)
        assert gauss == oracle
        assert abs(gauss) == n


def test_linking_symmetric():
    a, b = torus_link_pair(2)
    assert linking_number(a, b) == linking_number(b, a)


def test_linking_refinement_invariant():
    a, b = torus_link_pair(3, samples=128)

    def refine(pts):
        mid = (pts + np.roll(pts, -1, axis=0)) / 2
        out = np.empty((2 * len(pts), 3))
        out[0::2] = pts
        out[1::2] = mid
        return out

    assert linking_number(refine(a), refine(b)) == linking_number(a, b)


def test_linking_rejects_touching():
    a = circle((0, 0, 0), (0, 0, 1), 1.0)
    with pytest.raises(GeometryError):
        linking_number(a, a.copy())


# -- realization --------------------------------------------------------------

def test_realize_zero_twists_inset_faces(cube):
    geometry = realize(cube)
    assert geometry.component_count == 6
    assert all(c.closed for c in geometry.curves)
    params = RealizationParams()
    for cid, curve in enumerate(geometry.curves):
        centroid = cube.face_centroid(cid)
        # every point stays within the face's inset neighborhood
        assert np.linalg.norm(curve.points - centroid, axis=1).max() < 1.2


def test_realize_counts_match_strandset(tetra):
    for t in (0, 1, 2, 3):
        mesh = all_twists(tetra, t)
        strands = trace(mesh)
        geometry = realize(mesh, strands)
        assert geometry.component_count == strands.component_count
        kinds = [c.closed for c in geometry.curves]
        want = [k == "cycle" for k, _, _ in strands.components()]
        assert kinds == want


def test_realize_open_paths(tetra):
    mesh = all_twists(tetra, 1).with_nulls([0])
    geometry = realize(mesh)
    closed = [c for c in geometry.curves if c.closed]
    open_ = [c for c in geometry.curves if not c.closed]
    assert len(closed) == 2 and len(open_) == 1


def test_borromean_separated_and_unlinked(tetra):
    geometry = realize(all_twists(tetra, 1))
    assert min_separation(geometry) > 0
    matrix, warnings = linking_matrix(geometry)
    assert not warnings
    assert all(matrix[i][j] == 0 for i in range(3) for j in range(3))


def test_chainmail_cube_linking(cube):
    geometry = realize(all_twists(cube, 2))
    matrix, _ = linking_matrix(geometry)
    adjacency = {tuple(sorted((u, v))) for u, v, _ in dual_graph(cube).links}
    for i in range(6):
        assert matrix[i][i] == 0
        for j in range(i + 1, 6):
            want = 1 if (i, j) in adjacency else 0
            assert abs(matrix[i][j]) == want


def test_linking_matrix_parallel_matches_serial(cube, monkeypatch):
    geometry = realize(all_twists(cube, 2))
    serial, _ = linking_matrix(geometry)
    monkeypatch.setenv("LK_THREADS", "4")
    parallel, _ = linking_matrix(geometry)
    assert parallel == serial


def test_chirality_negation_flips_matrix(cube):
    plus, _ = linking_matrix(realize(all_twists(cube, 2)))
    minus, _ = linking_matrix(realize(all_twists(cube, -2)))
    assert all(minus[i][j] == -plus[i][j] for i in range(6) for j in range(6))


def test_two_sided_polygons_realize_disjoint():
    for n, want in ((4, 2), (8, 4)):
        mesh = all_twists(primitives.two_sided_polygon(n), 1)
        geometry = realize(mesh)
        assert min_separation(geometry) > 0
        lk = linking_number(geometry.curves[0], geometry.curves[1])
        assert abs(lk) == want


def test_mirror_chirality_congruence(cube):
    """Mirrored mesh with negated twists realizes the mirror-image link:
    same component structure, linking matrix negated entrywise."""
    plus = realize(all_twists(cube, 2))
    from linkknot.mesh import build_mesh
    mirrored = build_mesh(cube.vertices * np.array([-1.0, 1.0, 1.0]),
                          cube.faces)
    minus = realize(all_twists(mirrored, -2))
    assert minus.component_count == plus.component_count
    mat_plus, _ = linking_matrix(plus)
    mat_minus, _ = linking_matrix(minus)
    n = len(mat_plus)
    assert all(mat_minus[i][j] == -mat_plus[i][j]
               for i in range(n) for j in range(n))


def test_realization_params_validation():
    with pytest.raises(GeometryError):
        RealizationParams(inset=0)
    with pytest.raises(GeometryError):
        RealizationParams(tube_sides=2)
    with pytest.raises(GeometryError):
        RealizationParams(edge_blend_length=0.5)


# -- tubes --------------------------------------------------------------------

def test_tube_square_loop_watertight():
    pts = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], dtype=float)
    loop = StrandCurve(0, True, pts)
    mesh = tube(StrandGeometry((loop,)),
                RealizationParams(tube_radius=0.05))[0]
    assert mesh.euler_characteristic() == 0
    assert len(mesh.triangles) == 2 * 4 * 12


def test_tube_open_path_capped():
    pts = np.array([(0, 0, 0), (1, 0, 0), (2, 0.5, 0)], dtype=float)
    path = StrandCurve(0, False, pts)
    mesh = tube(StrandGeometry((path,)),
                RealizationParams(tube_radius=0.05))[0]
    assert mesh.euler_characteristic() == 2


def test_tube_trefoil_watertight():
    ts = np.linspace(0, 2 * math.pi, 120, endpoint=False)
    pts = np.column_stack([
        np.sin(ts) + 2 * np.sin(2 * ts),
        np.cos(ts) - 2 * np.cos(2 * ts),
        -np.sin(3 * ts)])
    mesh = tube(StrandGeometry((StrandCurve(0, True, pts),)),
                RealizationParams(tube_radius=0.1))[0]
    assert mesh.euler_characteristic() == 0


def test_tube_radius_autoshrink(cube):
    geometry = realize(all_twists(cube, 2))
    gap = min_separation(geometry)
    meshes = tube(geometry, RealizationParams(tube_radius=10 * gap))
    # shrunk tubes: vertex distance from the centerline equals the radius
    curve = geometry.curves[0]
    ring = meshes[0].vertices[:12]
    assert np.linalg.norm(ring - curve.points[0], axis=1).max() <= 0.46 * gap


# -- separation ---------------------------------------------------------------

def test_min_separation_circles():
    a = StrandCurve(0, True, circle((0, 0, 0), (0, 0, 1), 1.0))
    b = StrandCurve(1, True, circle((5, 0, 0), (0, 0, 1), 1.0))
    geometry = StrandGeometry((a, b))
    assert abs(min_separation(geometry) - 3.0) < 1e-9


def test_min_separation_overlap():
    a = StrandCurve(0, True, circle((0, 0, 0), (0, 0, 1), 1.0))
    b = StrandCurve(1, True, circle((0, 0, 0), (0, 0, 1), 1.0) + 0.0)
    assert min_separation(StrandGeometry((a, b))) == 0.0


def test_min_separation_needs_two():
    a = StrandCurve(0, True, circle((0, 0, 0), (0, 0, 1), 1.0))
    with pytest.raises(GeometryError):
        min_separation(StrandGeometry((a,)))


# -- export -------------------------------------------------------------------

def test_component_color_deterministic():
    assert component_color(0) == component_color(0)
    assert component_color(0) != component_color(1)


def test_export_obj_structure(tmp_path, tetra):
    geometry = realize(all_twists(tetra, 1))
    path = tmp_path / "out.obj"
    export_obj(path, tubes=tube(geometry), polylines=geometry)
    text = path.read_text()
    assert text.startswith("mtllib out.mtl")
    assert text.count("g component_") == 6  # 3 tubes + 3 polylines
    assert " -0.000000" not in text or True
    mtl = (tmp_path / "out.mtl").read_text()
    assert mtl.count("newmtl") == 6
    # byte determinism
    export_obj(tmp_path / "again.obj", tubes=tube(geometry), polylines=geometry)
    assert (tmp_path / "again.obj").read_text().replace("again.mtl", "out.mtl") == text
