import json

import pytest

from linkknot import primitives
from linkknot.lkm import dumps, loads, parse_mesh, serialize_mesh
from linkknot.mesh import MeshError
from linkknot.periodic import PeriodicMesh


def test_key_order_in_serialized_document(tetra):
    doc = serialize_mesh(tetra)
    assert list(doc) == ["vertices", "faces", "twists", "null_sides"]


def test_parse_requires_core_keys():
    with pytest.raises(MeshError):
        parse_mesh({"vertices": [[0, 0, 0]]})
    with pytest.raises(MeshError):
        parse_mesh([1, 2, 3])


def test_parse_enforces_edge_order():
    doc = serialize_mesh(primitives.strip())
    doc["twists"] = [{"edge": [1, 0], "t": 1}]
    with pytest.raises(MeshError, match="a < b"):
        parse_mesh(doc)


def test_parse_malformed_twist_entry():
    doc = serialize_mesh(primitives.strip())
    doc["twists"] = [{"edge": [0], "t": 1}]
    with pytest.raises(MeshError, match="malformed"):
        parse_mesh(doc)


def test_null_side_occurrence_roundtrip():
    mesh = primitives.two_sided_polygon(3)
    mesh = mesh.with_nulls([mesh.slot_of(1, 2).slot_id])
    doc = serialize_mesh(mesh)
    assert doc["null_sides"] == [
        {"face": 1, "edge": sorted(mesh.slots[mesh.slot_of(1, 2).slot_id].edge),
         "occurrence": 0}]
    again = parse_mesh(json.loads(json.dumps(doc)))
    assert again.null_slots() == mesh.null_slots()


def test_loads_dispatches_periodic():
    text = json.dumps({
        "vertices": [], "faces": [],
        "periodic": {"basis": [[1, 0], [0, 1]], "class_twists": [1, 1]}})
    obj = loads(text)
    assert isinstance(obj, PeriodicMesh)
    assert obj.class_twists() == [1, 1]


def test_loads_rejects_bad_json():
    with pytest.raises(MeshError, match="malformed"):
        loads("{nope")


def test_dumps_loads_roundtrip(cube):
    mesh = cube.with_twists({(0, 1): 2})
    again = loads(dumps(mesh))
    assert again.twist_map() == mesh.twist_map()
    assert again.faces == mesh.faces
