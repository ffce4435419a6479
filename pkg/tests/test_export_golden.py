"""Golden-file OBJ exports: frozen bytes from a fixed realization recipe.

Regenerate with REGEN_GOLDEN=1 after an intentional geometry change.
"""

import os
from pathlib import Path

import numpy as np
import pytest

from linkknot import primitives
from linkknot.geometry import (RealizationParams, StrandCurve, StrandGeometry,
                               export_obj, realize, tube)
from linkknot.periodic import lattice_preset, periodic_scaffold, tile

GOLDEN = Path(__file__).parent / "golden"
PARAMS = RealizationParams(tube_sides=6, helix_samples=2, tube_radius=0.04)


def build_single_loop():
    pts = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], dtype=float)
    geometry = StrandGeometry((StrandCurve(0, True, pts),))
    return tube(geometry, PARAMS), geometry


def build_chainmail_cube():
    cube = primitives.cube()
    mesh = cube.with_twists({k: 2 for k in cube.edges}, replace=True)
    geometry = realize(mesh, params=PARAMS)
    return tube(geometry, PARAMS), None


def build_tiled_cp():
    pmesh = periodic_scaffold(lattice_preset("cP")).with_class_twists([1, 1, 1])
    mesh = tile(pmesh, (2, 2, 1))
    geometry = realize(mesh, params=PARAMS)
    return None, geometry


CASES = {
    "single_loop": build_single_loop,
    "chainmail_cube": build_chainmail_cube,
    "tiled_cp": build_tiled_cp,
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_obj(tmp_path, name):
    tubes, polylines = CASES[name]()
    out = tmp_path / f"{name}.obj"
    export_obj(out, tubes=tubes, polylines=polylines)
    golden_obj = GOLDEN / f"{name}.obj"
    golden_mtl = GOLDEN / f"{name}.mtl"
    if os.environ.get("REGEN_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        golden_obj.write_bytes(out.read_bytes())
        golden_mtl.write_bytes((tmp_path / f"{name}.mtl").read_bytes())
        pytest.skip("golden files regenerated")
    assert golden_obj.exists(), "golden files missing; run with REGEN_GOLDEN=1"
    assert out.read_bytes() == golden_obj.read_bytes()
    assert (tmp_path / f"{name}.mtl").read_bytes() == golden_mtl.read_bytes()
