"""Design and analysis of linked knot structures on labeled non-manifold meshes."""

from .mesh import (
    LabeledMesh, MeshError, Slot, EdgeRecord, ValidationReport, DualGraph,
    build_mesh, connectivity_report, dual_graph, edge_key, radial_order,
)
from .strands import (
    StrandSet, OrbitLaw, TERMINUS,
    trace, transfer, successor, component_count, orbit_law, strand_report,
)
from .lkm import parse_mesh, serialize_mesh, loads, dumps, load, dump

__version__ = "0.1.0"
