"""Property tests for the structural invariants of strand tracing."""

import numpy as np
from hypothesis import given, settings, strategies as st

from linkknot import primitives
from linkknot.strands import trace

from conftest import random_test_mesh, random_twists


meshes = st.integers(min_value=0, max_value=10 ** 6)


def _mesh_and_twists(seed):
    rng = np.random.default_rng(seed)
    mesh = random_test_mesh(rng)
    return mesh.with_twists(random_twists(mesh, rng), replace=True), rng


@settings(max_examples=60, deadline=None)
@given(meshes)
def test_substitution_invariance(seed):
    """t_e -> t_e + m*K_e leaves the traced slot partition unchanged exactly."""
    mesh, rng = _mesh_and_twists(seed)
    keys = list(mesh.edges)
    key = keys[int(rng.integers(0, len(keys)))]
    m = int(rng.integers(-3, 4))
    rec = mesh.edges[key]
    bumped = mesh.with_twists({key: rec.twist + m * rec.degree})
    a = trace(mesh)
    b = trace(bumped)
    assert a.cycles == b.cycles
    assert a.paths == b.paths


@settings(max_examples=60, deadline=None)
@given(meshes)
def test_sign_symmetry(seed):
    """Negating every twist preserves cycle lengths and component count."""
    mesh, _ = _mesh_and_twists(seed)
    negated = mesh.with_twists({k: -rec.twist for k, rec in mesh.edges.items()},
                               replace=True)
    a = trace(mesh)
    b = trace(negated)
    assert a.component_count == b.component_count
    assert sorted(len(c) for c in a.cycles) == sorted(len(c) for c in b.cycles)
    assert sorted(len(p) for p in a.paths) == sorted(len(p) for p in b.paths)


@settings(max_examples=60, deadline=None)
@given(meshes)
def test_null_monotonicity(seed):
    """Flagging one extra slot null changes the component count by at most 1."""
    mesh, rng = _mesh_and_twists(seed)
    before = trace(mesh).component_count
    non_null = [s.slot_id for s in mesh.slots if not s.null]
    slot = non_null[int(rng.integers(0, len(non_null)))]
    after = trace(mesh.with_nulls([slot])).component_count
    assert abs(after - before) <= 1


@settings(max_examples=60, deadline=None)
@given(meshes)
def test_trace_partitions_non_null_slots(seed):
    mesh, rng = _mesh_and_twists(seed)
    non_null = [s.slot_id for s in mesh.slots if not s.null]
    cut = [s for s in non_null if rng.random() < 0.15]
    mesh = mesh.with_nulls(cut)
    strands = trace(mesh)
    seen = [s for _, slots, _ in strands.components() for s in slots]
    assert sorted(seen) == sorted(s.slot_id for s in mesh.slots if not s.null)


@settings(max_examples=40, deadline=None)
@given(meshes)
def test_parity_law_on_manifolds(seed):
    """All-even twists on a 2-manifold keep cycles in bijection with faces."""
    rng = np.random.default_rng(seed)
    mesh = primitives.random_sphere(int(rng.integers(0, 10 ** 6)),
                                    n_points=int(rng.integers(6, 24)))
    twists = {k: 2 * int(rng.integers(-3, 4)) for k in mesh.edges}
    strands = trace(mesh.with_twists(twists, replace=True))
    assert strands.component_count == mesh.face_count
    for cyc in strands.cycles:
        assert len({mesh.slots[s].face for s in cyc}) == 1


@settings(max_examples=30, deadline=None)
@given(meshes)
def test_spanning_tree_single_cycle_random_spheres(seed):
    from linkknot.design import spanning_tree_knot
    rng = np.random.default_rng(seed)
    mesh = primitives.random_sphere(int(rng.integers(0, 10 ** 6)),
                                    n_points=int(rng.integers(6, 28)))
    odd = 2 * int(rng.integers(0, 3)) + 1
    even = 2 * int(rng.integers(0, 3))
    assignment = spanning_tree_knot(mesh, int(rng.integers(0, 1000)), odd, even)
    assert trace(mesh.with_twists(assignment, replace=True)).component_count == 1
