"""Command line front end.

Exit codes: 0 on success (including verified theorems), 1 when a
verification finds violations, 2 on usage or input errors, so CI can use
the verifier as an oracle.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ops, serialize
from .cell import build_cell
from .crystal import window
from .cycles import DEFAULT_CIRCUIT_GUARD
from .errors import CrystalvorError, GraphFormatError
from .examples import EXAMPLE_NAMES
from .graphs import parse_graph

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", metavar="PATH", help="graph file (JSON)")
    p.add_argument("--example", choices=EXAMPLE_NAMES, help="bundled example name")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crystalvor",
        description="Exact Voronoi cells and hidden-tiling verification for multigraphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("info", "graph summary: genus, bridges, divisors, cycle basis"),
        ("bridges", "list bridges and the bridge-collapsed graph"),
        ("orient", "compute a strongly connected re-orientation"),
        ("cycles", "enumerate the elementary cycles"),
        ("cell", "build the Voronoi cell (halfspaces and vertices)"),
        ("crystal", "standard realization, in-cell segments, optional window"),
        ("verify", "verify the hidden Voronoi tiling"),
        ("subcover", "non-maximal covering: lattices, cell, conjecture check"),
        ("export", "export cell / crystal geometry to OBJ, CSV or JSON"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        _add_graph_args(cmd)
        if name in ("cell", "crystal", "export", "verify"):
            cmd.add_argument(
                "--orient",
                choices=("stored", "auto"),
                default="stored",
                help="use the stored orientation or re-orient strongly first",
            )
        if name in ("crystal", "export"):
            cmd.add_argument("--base-vertex", metavar="ID", help="realization base vertex")
            cmd.add_argument(
                "--window",
                metavar="A..B,...",
                help="inclusive translate ranges per period coordinate",
            )
        if name in ("cycles", "cell", "crystal", "verify", "export"):
            cmd.add_argument("--max-trails", type=int, default=10**6)
            cmd.add_argument("--max-orientations", type=int, default=24)
            cmd.add_argument("--max-circuits", type=int, default=DEFAULT_CIRCUIT_GUARD)
        if name == "cell":
            cmd.add_argument("--format", choices=("json", "obj"), default="json")
        if name == "crystal":
            cmd.add_argument("--format", choices=("json", "obj", "csv"), default="json")
        if name == "subcover":
            cmd.add_argument("--base-vertex", metavar="ID")
            cmd.add_argument(
                "--vanishing",
                metavar="JSON",
                help="generators: list of {edge: int} maps or of cycle-basis coordinate lists",
            )
            cmd.add_argument(
                "--center",
                metavar="JSON",
                help='cell center as an {edge: "p/q"} chain',
            )
        if name == "export":
            cmd.add_argument("--format", choices=("json", "obj", "csv"), default="json")
            cmd.add_argument(
                "--what", choices=("cell", "crystal", "both"), default="both"
            )

    return p


def _parse_window(spec: str | None, expected: int):
    if spec is None:
        return None
    box = []
    for part in spec.split(","):
        bounds = part.split("..")
        if len(bounds) != 2:
            raise GraphFormatError(f"bad window range {part!r}, expected A..B")
        try:
            lo, hi = int(bounds[0]), int(bounds[1])
        except ValueError:
            raise GraphFormatError(f"bad window range {part!r}") from None
        box.append((lo, hi))
    if len(box) != expected:
        raise GraphFormatError(f"window needs {expected} ranges, got {len(box)}")
    return box


def _load_graph(args):
    if (args.graph is None) == (args.example is None):
        raise GraphFormatError("provide exactly one graph source (--graph or --example)")
    if args.graph is not None:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise GraphFormatError(f"cannot read {args.graph}: {exc}") from None
        return parse_graph(text), None
    return ops.resolve_graph(None, args.example)


def _emit(args, text: str) -> None:
    if args.out:
        serialize.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except CrystalvorError as exc:
        print(f"crystalvor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    g, preset = _load_graph(args)
    command = args.command

    if command == "info":
        _emit(args, serialize.dumps(ops.info_payload(g)))
        return EXIT_OK

    if command == "bridges":
        _emit(args, serialize.dumps(ops.bridges_payload(g)))
        return EXIT_OK

    if command == "orient":
        _emit(args, serialize.dumps(ops.orient_payload(g)))
        return EXIT_OK

    if command == "cycles":
        _emit(args, serialize.dumps(ops.cycles_payload(g, args.max_circuits)))
        return EXIT_OK

    if command == "cell":
        g = ops.apply_orientation_mode(g, args.orient)
        payload, cell = ops.cell_payload(g, args.max_circuits, args.max_orientations)
        if args.format == "obj":
            _emit(args, serialize.export_obj(cell=cell))
        else:
            _emit(args, serialize.dumps(payload))
        return EXIT_OK

    if command == "crystal":
        g = ops.apply_orientation_mode(g, args.orient)
        base = args.base_vertex or (preset.base_vertex if preset else None)
        box = _parse_window(args.window, g.genus)
        payload, _, segments = ops.crystal_payload(
            g, base, box, args.max_circuits, args.max_orientations, args.max_trails
        )
        if args.format != "json":
            from .crystal import window as window_op
            from .homology import cycle_basis

            if segments is None:
                segments = window_op(g, base or g.vertices[0], [(0, 0)] * g.genus)
            if args.format == "obj":
                frame = cycle_basis(g).cycles
                _emit(args, serialize.export_obj(segments=segments, frame_vectors=frame))
            else:
                _emit(args, serialize.export_csv(g, segments))
        else:
            _emit(args, serialize.dumps(payload))
        return EXIT_OK

    if command == "verify":
        payload, ok = ops.verify_payload(
            g,
            circuit_guard=args.max_circuits,
            orientation_guard=args.max_orientations,
        )
        _emit(args, serialize.dumps(payload))
        return EXIT_OK if ok else EXIT_VIOLATION

    if command == "subcover":
        vanishing = json.loads(args.vanishing) if args.vanishing else None
        center = json.loads(args.center) if args.center else None
        payload, ok = ops.subcover_payload(g, preset, vanishing, center, args.base_vertex)
        _emit(args, serialize.dumps(payload))
        return EXIT_OK if ok else EXIT_VIOLATION

    if command == "export":
        return _export(args, g, preset)

    raise GraphFormatError(f"unknown command {command!r}")  # pragma: no cover


def _export(args, g, preset) -> int:
    g = ops.apply_orientation_mode(g, args.orient)
    base = args.base_vertex or (preset.base_vertex if preset else g.vertices[0])
    cell = None
    segments = None
    if args.what in ("cell", "both"):
        cell = build_cell(g, args.max_circuits, args.max_orientations)
    if args.what in ("crystal", "both"):
        box = _parse_window(args.window, g.genus)
        if box is None:
            box = [(0, 0)] * g.genus
        segments = window(g, base, box)

    if args.format == "obj":
        from .homology import cycle_basis

        frame = cycle_basis(g).cycles
        text = serialize.export_obj(cell=cell, segments=segments, frame_vectors=frame)
    elif args.format == "csv":
        text = serialize.export_csv(g, segments or [])
    else:
        payload = {}
        if cell is not None:
            payload["cell"] = serialize.cell_json(cell)
        if segments is not None:
            payload["segments"] = [serialize.segment_json(g, s) for s in segments]
        text = serialize.dumps(payload)
    _emit(args, text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
