"""Batch front door: validate, trace, design, tile, realize, export, serve."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import lkm
from .design import (DesignError, assignment_document, chainmail,
                     enumerate_orbits, single_cycle, spanning_tree_knot, tighten)
from .geometry import (GeometryError, RealizationParams, export_obj,
                       min_separation, realize, tube)
from .mesh import LabeledMesh, MeshError, connectivity_report, edge_key
from .periodic import (GeneratorSet, PeriodicMesh, lattice_preset,
                       periodic_scaffold, tile, trace_periodic, wigner_seitz)
from .strands import strand_report, trace

log = logging.getLogger("lk")


class _LabelOp(argparse.Action):
    """Collects --set-all / --set / --null in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = getattr(namespace, "label_ops", None)
        if ops is None:
            ops = []
            namespace.label_ops = ops
        ops.append((self.dest, values))


def _add_label_flags(p):
    p.add_argument("--set-all", action=_LabelOp, type=int, metavar="T",
                   help="set every edge twist to T")
    p.add_argument("--set", action=_LabelOp, metavar="A,B=T",
                   help="set twist of edge (A,B); repeatable")
    p.add_argument("--null", action=_LabelOp, metavar="FACE,A,B[,OCC]",
                   help="flag a face's edge side null; repeatable")
    p.set_defaults(label_ops=[])


def _apply_label_ops(mesh: LabeledMesh, ops) -> LabeledMesh:
    for kind, value in ops:
        if kind == "set_all":
            mesh = mesh.with_twists({k: int(value) for k in mesh.edges},
                                    replace=True)
        elif kind == "set":
            lhs, _, rhs = value.partition("=")
            if not rhs:
                raise MeshError(f"--set expects A,B=T, got {value!r}")
            a, b = (int(x) for x in lhs.split(","))
            mesh = mesh.with_twists({edge_key(a, b): int(rhs)})
        elif kind == "null":
            parts = [int(x) for x in value.split(",")]
            if len(parts) not in (3, 4):
                raise MeshError(f"--null expects FACE,A,B[,OCC], got {value!r}")
            face, a, b = parts[:3]
            occ = parts[3] if len(parts) == 4 else 0
            slot = mesh.slot_for_occurrence(face, edge_key(a, b), occ)
            mesh = mesh.with_nulls([slot.slot_id])
    return mesh


def _load_plain(path) -> LabeledMesh:
    obj = lkm.load(path)
    if isinstance(obj, PeriodicMesh):
        raise MeshError(f"{path} is a periodic document; this command needs a "
                        "plain mesh (tile it first)")
    return obj


def _write_report(path, payload) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _merge_twists(mesh: LabeledMesh, assignment) -> LabeledMesh:
    return mesh.with_twists(dict(assignment), replace=True)


def _build_periodic(args) -> PeriodicMesh:
    if getattr(args, "infile", None):
        obj = lkm.load(args.infile)
        if not isinstance(obj, PeriodicMesh):
            raise MeshError(f"{args.infile} is not a periodic document")
        pmesh = obj
    else:
        if not args.preset:
            raise MeshError("need --preset or --in")
        lattice = lattice_preset(args.preset)
        generators = None
        if args.generators:
            with open(args.generators, "r", encoding="utf-8") as fh:
                pts = json.load(fh)
            generators = GeneratorSet.reduce(lattice, pts)
        pmesh = periodic_scaffold(lattice, generators)
    if args.class_twists:
        vector = [int(x) for x in args.class_twists.split(",")]
        pmesh = pmesh.with_class_twists(vector)
    elif getattr(args, "uniform", None) is not None:
        pmesh = pmesh.with_class_twists([args.uniform] * pmesh.class_count)
    return pmesh


def cmd_validate(args) -> int:
    mesh = _apply_label_ops(_load_plain(args.infile), args.label_ops)
    report = connectivity_report(mesh)
    payload = report.to_dict()
    if args.report:
        _write_report(args.report, payload)
    else:
        print(f"vertices: {mesh.vertex_count}  faces: {mesh.face_count}  "
              f"edges: {len(mesh.edges)}")
        print(f"edge degree histogram: {payload['edge_degree_histogram']}")
        print(f"edge components: {report.edge_connected_components}  "
              f"vertex components: {report.vertex_connected_components}")
        for w in report.warnings:
            print(f"warning: {w}")
        for e in report.errors:
            print(f"error: {e}")
    return 0 if report.ok else 2


def cmd_analyze(args) -> int:
    mesh = _apply_label_ops(_load_plain(args.infile), args.label_ops)
    report = connectivity_report(mesh)
    edges = [{"edge": list(k), "K": rec.degree, "t": rec.twist}
             for k, rec in mesh.edges.items()]
    payload = {"connectivity": report.to_dict(), "edges": edges}
    if args.report:
        _write_report(args.report, payload)
    else:
        print(f"{len(edges)} edges:")
        for e in edges:
            print(f"  ({e['edge'][0]},{e['edge'][1]})  K={e['K']}  t={e['t']}")
        for w in report.warnings:
            print(f"warning: {w}")
    return 0


def cmd_trace(args) -> int:
    mesh = _apply_label_ops(_load_plain(args.infile), args.label_ops)
    strands = trace(mesh)
    payload = strand_report(mesh, strands)
    if args.report:
        _write_report(args.report, payload)
    else:
        print(f"count: {payload['count']}")
        for i, comp in enumerate(payload["components"]):
            print(f"  component {i}: {comp['kind']} of length {comp['length']}")
    if args.out:
        lkm.dump(mesh, args.out)
    return 0


def cmd_design_knot(args) -> int:
    mesh = _load_plain(args.infile)
    assignment = spanning_tree_knot(mesh, args.seed, args.odd, args.even)
    labeled = _merge_twists(mesh, assignment)
    if args.out:
        lkm.dump(labeled, args.out)
    if args.report:
        _write_report(args.report, assignment_document(assignment))
    if args.trace or not (args.out or args.report):
        print(f"count: {trace(labeled).component_count}")
    return 0


def cmd_design_chainmail(args) -> int:
    import random
    mesh = _load_plain(args.infile)
    signs = None
    if args.seed is not None:
        rng = random.Random(args.seed)
        signs = {k: rng.choice((1, -1)) for k in mesh.edges}
    magnitude = (lambda k: args.magnitude) if args.magnitude else None
    assignment = chainmail(mesh, signs=signs, magnitude_fn=magnitude)
    labeled = _merge_twists(mesh, assignment)
    if args.out:
        lkm.dump(labeled, args.out)
    if args.report:
        _write_report(args.report, assignment_document(assignment))
    if args.trace or not (args.out or args.report):
        print(f"count: {trace(labeled).component_count}")
    return 0


def cmd_tighten(args) -> int:
    mesh = _load_plain(args.infile)
    a, b = (int(x) for x in args.edge.split(","))
    assignment = tighten(mesh, mesh.twist_map(), edge_key(a, b), args.m)
    labeled = _merge_twists(mesh, assignment)
    if args.out:
        lkm.dump(labeled, args.out)
    if args.report:
        _write_report(args.report, assignment_document(assignment))
    if not (args.out or args.report):
        print(f"count: {trace(labeled).component_count}")
    return 0


def cmd_orbits(args) -> int:
    mesh = _load_plain(args.infile)
    palette = [int(x) for x in args.palette.split(",")]
    predicate = single_cycle if args.predicate == "single-cycle" else None
    modes = (["rotations", "full", "full_with_negation"]
             if args.group == "all" else [args.group.replace("-", "_")])
    results = {}
    for mode in modes:
        res = enumerate_orbits(mesh, palette, predicate, mode)
        results[mode] = {
            "orbit_count": res.orbit_count,
            "burnside_count": res.burnside_count,
            "assignment_count": res.assignment_count,
        }
    payload = {"palette": palette, "predicate": args.predicate,
               "results": results}
    if args.report:
        _write_report(args.report, payload)
    else:
        for mode, r in results.items():
            print(f"{mode}: {r['orbit_count']} orbits "
                  f"(burnside {r['burnside_count']}, "
                  f"{r['assignment_count']} assignments)")
    return 0


def cmd_lattice(args) -> int:
    if args.wigner_seitz:
        cell = wigner_seitz(lattice_preset(args.preset))
        if args.out:
            lkm.dump(cell, args.out)
        print(f"wigner-seitz cell: {cell.vertex_count} vertices, "
              f"{len(cell.edges)} edges, {cell.face_count} faces")
        return 0
    pmesh = _build_periodic(args)
    payload = {
        "edge_classes": pmesh.class_count,
        "class_degrees": [pmesh.edges[k].degree for k in pmesh.edges],
        "class_twists": pmesh.class_twists(),
    }
    if args.trace:
        strands = trace_periodic(pmesh)
        payload["count"] = strands.component_count
        payload["components"] = [
            {"kind": c.kind, "length": len(c.slots),
             "closure_offset": list(c.closure_offset),
             "repeat_box": list(c.repeat_box)}
            for c in strands.components]
    if args.report:
        _write_report(args.report, payload)
    else:
        print(f"edge classes: {payload['edge_classes']}  "
              f"degrees: {payload['class_degrees']}  "
              f"twists: {payload['class_twists']}")
        if args.trace:
            print(f"count: {payload['count']}")
            for c in payload["components"]:
                print(f"  {c['kind']} length {c['length']} offset "
                      f"{c['closure_offset']} box {c['repeat_box']}")
    if args.out:
        lkm.dump(pmesh, args.out)
    return 0


def cmd_tile(args) -> int:
    pmesh = _build_periodic(args)
    extent = tuple(int(x) for x in args.extent.lower().split("x"))
    mesh = tile(pmesh, extent)
    if args.out:
        lkm.dump(mesh, args.out)
    if args.report:
        hist = {}
        for rec in mesh.edges.values():
            hist[rec.degree] = hist.get(rec.degree, 0) + 1
        _write_report(args.report, {
            "vertices": mesh.vertex_count,
            "edges": len(mesh.edges),
            "faces": mesh.face_count,
            "edge_degree_histogram": {str(k): v
                                      for k, v in sorted(hist.items())},
        })
    else:
        print(f"tiled mesh: {mesh.vertex_count} vertices, "
              f"{len(mesh.edges)} edges, {mesh.face_count} faces")
    return 0


def cmd_realize(args) -> int:
    mesh = _apply_label_ops(_load_plain(args.infile), args.label_ops)
    kwargs = {}
    if args.inset is not None:
        kwargs["inset"] = args.inset
    if args.tube_radius is not None:
        kwargs["tube_radius"] = args.tube_radius
    params = RealizationParams(**kwargs)
    strands = trace(mesh)
    geometry = realize(mesh, strands, params)
    if args.report:
        _write_report(args.report, geometry.to_document())
    if args.out:
        if args.lines:
            export_obj(args.out, polylines=geometry)
        else:
            tubes = tube(geometry, params, scale_hint=mesh.mean_edge_length())
            export_obj(args.out, tubes=tubes)
    if not (args.out or args.report):
        sep = (min_separation(geometry)
               if geometry.component_count > 1 else float("inf"))
        print(f"components: {geometry.component_count}  min separation: "
              f"{sep:.6f}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve
    serve(port=args.port, mesh_path=args.mesh, ui_dir=args.ui,
          save_dir=args.save_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lk",
        description="Design and analysis of linked knot structures on "
                    "labeled non-manifold meshes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, infile=True):
        if infile:
            p.add_argument("--in", dest="infile", required=True, metavar="PATH")
        p.add_argument("--report", metavar="PATH",
                       help="write a machine-readable JSON report ('-' for stdout)")

    p = sub.add_parser("validate", help="structural checks and connectivity")
    common(p)
    _add_label_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="edge table and diagnostics")
    common(p)
    _add_label_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("trace", help="strand decomposition")
    common(p)
    _add_label_flags(p)
    p.add_argument("--out", metavar="PATH", help="write the labeled mesh")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("design-knot", help="spanning-tree single-cycle labeling")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--odd", type=int, default=1)
    p.add_argument("--even", type=int, default=0)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_design_knot)

    p = sub.add_parser("design-chainmail", help="face-preserving linked labeling")
    common(p)
    p.add_argument("--seed", type=int, default=None,
                   help="random sign assignment (default: all +)")
    p.add_argument("--magnitude", type=int, default=None)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_design_chainmail)

    p = sub.add_parser("tighten", help="add a multiple of K to one edge")
    common(p)
    p.add_argument("--edge", required=True, metavar="A,B")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_tighten)

    p = sub.add_parser("orbits", help="symmetry-orbit enumeration")
    common(p)
    p.add_argument("--palette", required=True, metavar="CSV")
    p.add_argument("--predicate", choices=("any", "single-cycle"),
                   default="any")
    p.add_argument("--group", default="all",
                   choices=("rotations", "full", "full-with-negation", "all"))
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("lattice", help="periodic scaffolds and quotient tracing")
    p.add_argument("--in", dest="infile", metavar="PATH")
    p.add_argument("--preset", metavar="NAME")
    p.add_argument("--generators", metavar="PATH",
                   help="JSON array of generator points")
    p.add_argument("--class-twists", metavar="CSV")
    p.add_argument("--uniform", type=int, default=None, metavar="T")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--wigner-seitz", action="store_true",
                   help="emit the Wigner-Seitz cell mesh instead")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("tile", help="replicate a periodic scaffold")
    p.add_argument("--in", dest="infile", metavar="PATH")
    p.add_argument("--preset", metavar="NAME")
    p.add_argument("--generators", metavar="PATH")
    p.add_argument("--class-twists", metavar="CSV")
    p.add_argument("--uniform", type=int, default=None, metavar="T")
    p.add_argument("--extent", required=True, metavar="AxBxC")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("realize", help="strand geometry and OBJ export")
    common(p)
    _add_label_flags(p)
    p.add_argument("--out", metavar="PATH", help="OBJ output")
    p.add_argument("--lines", action="store_true",
                   help="export polylines instead of tubes")
    p.add_argument("--tube-radius", type=float, default=None)
    p.add_argument("--inset", type=float, default=None)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("serve", help="local HTTP design service")
    p.add_argument("--port", type=int, default=7431)
    p.add_argument("--mesh", metavar="PATH", help="initial mesh")
    p.add_argument("--ui", metavar="DIR", help="serve a static viewer bundle")
    p.add_argument("--save-dir", metavar="DIR",
                   help="snapshot LKM per revision")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("LK_LOG", "warn").upper(), 30),
        format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MeshError, DesignError, GeometryError, FileNotFoundError,
            json.JSONDecodeError, ValueError) as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # internal faults
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
