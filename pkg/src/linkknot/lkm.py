"""LKM document format: parse and serialize labeled meshes.

Plain documents:

    { "vertices": [[x,y,z],...], "faces": [[v,...],...],
      "twists": [{"edge":[a,b],"t":int},...],
      "null_sides": [{"face":f,"edge":[a,b],"occurrence":int},...] }

Periodic documents add a "periodic" block (see :mod:`linkknot.periodic`).
Keys are emitted in the order above; a<b is enforced on edge references.
"""

from __future__ import annotations

import json

from .mesh import LabeledMesh, MeshError, build_mesh


def parse_mesh(document: dict) -> LabeledMesh:
    """Build a LabeledMesh from a plain LKM document."""
    if not isinstance(document, dict):
        raise MeshError("LKM document must be an object")
    if "vertices" not in document or "faces" not in document:
        raise MeshError("LKM document needs 'vertices' and 'faces'")
    twists = []
    for item in document.get("twists", []):
        try:
            a, b = item["edge"]
            t = item["t"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MeshError(f"malformed twist entry {item!r}") from exc
        if not a < b:
            raise MeshError(f"twist edge [{a},{b}] must satisfy a < b")
        twists.append(((int(a), int(b)), int(t)))
    null_sides = []
    for item in document.get("null_sides", []):
        try:
            a, b = item["edge"]
            face = item["face"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MeshError(f"malformed null_sides entry {item!r}") from exc
        if not a < b:
            raise MeshError(f"null side edge [{a},{b}] must satisfy a < b")
        null_sides.append((int(face), (int(a), int(b)), int(item.get("occurrence", 0))))
    return build_mesh(document["vertices"], document["faces"],
                      twists=twists, null_sides=null_sides)


def serialize_mesh(mesh: LabeledMesh) -> dict:
    """LKM document for a mesh (combinatorial content round-trips exactly)."""
    doc = {
        "vertices": [[float(c) for c in v] for v in mesh.vertices],
        "faces": [list(cyc) for cyc in mesh.faces],
        "twists": [{"edge": [a, b], "t": rec.twist}
                   for (a, b), rec in mesh.edges.items() if rec.twist != 0],
        "null_sides": [],
    }
    for s in mesh.slots:
        if not s.null:
            continue
        earlier = [t for t in mesh.face_slots(s.face)
                   if t.edge == s.edge and t.index < s.index]
        doc["null_sides"].append({
            "face": s.face,
            "edge": [s.edge[0], s.edge[1]],
            "occurrence": len(earlier),
        })
    return doc


def loads(text: str):
    """Parse LKM text into a LabeledMesh or, for periodic documents, a
    PeriodicMesh (dispatched on the "periodic" block)."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeshError(f"malformed LKM document: {exc}") from exc
    if isinstance(document, dict) and "periodic" in document:
        from . import periodic
        return periodic.parse_periodic_document(document)
    return parse_mesh(document)


def dumps(obj) -> str:
    from . import periodic
    if isinstance(obj, periodic.PeriodicMesh):
        doc = periodic.serialize_periodic(obj)
    else:
        doc = serialize_mesh(obj)
    return json.dumps(doc, indent=2) + "\n"


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
