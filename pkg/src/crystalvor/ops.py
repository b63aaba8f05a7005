"""Command handlers shared by the CLI and the HTTP service.

Each handler takes resolved domain objects and returns a JSON-ready dict;
the front ends only do argument plumbing, file IO and status mapping.
"""

from __future__ import annotations

from fractions import Fraction

from . import serialize
from .cell import build_cell, coordinate_volume
from .crystal import (
    crystal_in_cell,
    standard_realization,
    verify_hidden_tiling,
    window,
)
from .cycles import (
    DEFAULT_CIRCUIT_GUARD,
    DEFAULT_ORIENTATION_GUARD,
    enumerate_elementary_cycles,
)
from .errors import GraphFormatError
from .examples import ExamplePreset, load_example, lonsdaleite_q_frame, preset_center
from .graphs import (
    MultiGraph,
    canonical_divisors,
    collapse_bridges,
    find_bridges,
    graph_from_dict,
    is_strongly_connected,
    reorient,
    strongly_connected_orientation,
)
from .homology import cycle_basis, lattice_coordinates
from .subcover import (
    VanishingSubgroup,
    quotient_bijectivity,
    verify_conjecture_instance,
)


def resolve_graph(
    graph_data: dict | None, example: str | None
) -> tuple[MultiGraph, ExamplePreset | None]:
    if (graph_data is None) == (example is None):
        raise GraphFormatError("provide exactly one graph source (file or example)")
    if example is not None:
        preset = load_example(example)
        return preset.graph, preset
    return graph_from_dict(graph_data), None


def apply_orientation_mode(g: MultiGraph, mode: str) -> MultiGraph:
    if mode == "stored":
        return g
    if mode == "auto":
        return reorient(g, strongly_connected_orientation(g))
    raise GraphFormatError(f"unknown orientation mode {mode!r}")


def info_payload(g: MultiGraph) -> dict:
    basis = cycle_basis(g)
    divisors = canonical_divisors(g)
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "source": g.vertices[e.source], "target": g.vertices[e.target]}
            for e in g.edges
        ],
        "genus": g.genus,
        "bridges": list(find_bridges(g)),
        "strongly_connected": is_strongly_connected(g),
        "spanning_tree": list(basis.tree),
        "cycle_basis": serialize.basis_json(basis),
        "divisors": divisors,
        "divisor_degrees": {
            name: sum(coeffs.values()) for name, coeffs in divisors.items()
        },
    }


def bridges_payload(g: MultiGraph) -> dict:
    bridges = find_bridges(g)
    collapsed = collapse_bridges(g)
    return {
        "bridges": list(bridges),
        "collapsed": collapsed.as_dict(),
    }


def orient_payload(g: MultiGraph) -> dict:
    o = strongly_connected_orientation(g)
    return {
        "signs": o.as_dict(g),
        "already_strong": all(s == 1 for s in o.signs),
    }


def cycles_payload(g: MultiGraph, guard: int = DEFAULT_CIRCUIT_GUARD) -> dict:
    cycles = enumerate_elementary_cycles(g, guard)
    return {
        "count": len(cycles),
        "cycles": [serialize.cycle_json(c, g) for c in cycles],
    }


def cell_payload(
    g: MultiGraph,
    circuit_guard: int = DEFAULT_CIRCUIT_GUARD,
    orientation_guard: int = DEFAULT_ORIENTATION_GUARD,
):
    cell = build_cell(g, circuit_guard, orientation_guard)
    payload = serialize.cell_json(cell)
    payload["coordinate_volume"] = serialize.frac_str(coordinate_volume(cell))
    payload["strong_orientations"] = len(cell.vertices)
    return payload, cell


def crystal_payload(
    g: MultiGraph,
    base_vertex: str | None,
    window_box=None,
    circuit_guard: int = DEFAULT_CIRCUIT_GUARD,
    orientation_guard: int = DEFAULT_ORIENTATION_GUARD,
    trail_guard: int = 10**6,
):
    v0 = base_vertex if base_vertex is not None else g.vertices[0]
    model = standard_realization(g, v0)
    payload = {
        "base_vertex": v0,
        "offsets": {
            lab: serialize.chain_json(g, off)
            for lab, off in zip(g.vertices, model.offsets)
        },
        "edge_vectors": {
            e.id: serialize.chain_json(g, vec)
            for e, vec in zip(g.edges, model.edge_vectors)
        },
        "period": [serialize.int_chain_json(g, c) for c in model.period],
    }
    segments = None
    if not find_bridges(g) and is_strongly_connected(g):
        cell = build_cell(g, circuit_guard, orientation_guard)
        in_cell = crystal_in_cell(
            g, v0, circuit_guard, orientation_guard, trail_guard, cell=cell
        )
        payload["in_cell_segments"] = [serialize.segment_json(g, s) for s in in_cell]
    if window_box is not None:
        segments = window(g, v0, window_box)
        payload["window"] = [serialize.segment_json(g, s) for s in segments]
    return payload, model, segments


def verify_payload(g: MultiGraph, **guards) -> tuple[dict, bool]:
    report = verify_hidden_tiling(g, **guards)
    return serialize.report_json(report), report.ok


def _parse_vanishing(g: MultiGraph, spec) -> VanishingSubgroup:
    if not isinstance(spec, list):
        raise GraphFormatError("vanishing subgroup must be a list of generators")
    if not spec:
        return VanishingSubgroup(())  # trivial subgroup: the maximal covering
    if all(isinstance(v, dict) for v in spec):
        return VanishingSubgroup.from_edge_coeffs(g, spec)
    if all(isinstance(v, list) for v in spec):
        return VanishingSubgroup.from_basis_coords(cycle_basis(g), spec)
    raise GraphFormatError("vanishing generators must all be edge maps or all coordinate lists")


def subcover_payload(
    g: MultiGraph,
    preset: ExamplePreset | None,
    vanishing_spec=None,
    center_spec: dict | None = None,
    base_vertex: str | None = None,
) -> tuple[dict, bool]:
    if vanishing_spec is not None:
        vanishing = _parse_vanishing(g, vanishing_spec)
    elif preset is not None and preset.vanishing_edge_coeffs is not None:
        vanishing = VanishingSubgroup.from_edge_coeffs(g, preset.vanishing_edge_coeffs)
    else:
        raise GraphFormatError("no vanishing subgroup given and the graph has no preset")

    if center_spec is not None:
        center = serialize.chain_parse(g, center_spec)
    elif preset is not None and preset.center_q_coeffs is not None:
        center = preset_center(preset)
    else:
        raise GraphFormatError("no cell center given and the graph has no preset")

    v0 = base_vertex or (preset.base_vertex if preset else g.vertices[0])
    report = verify_conjecture_instance(g, vanishing, center, v0)
    payload = serialize.subcover_report_json(g, report)
    injective, counts = quotient_bijectivity(g, vanishing, v0)
    payload["quotient"] = {"bijective": injective, **counts}

    preset_vanishing_used = vanishing_spec is None and preset is not None
    if preset_vanishing_used and preset.quoted_period_q_coords is not None:
        payload["period_basis_note"] = _period_basis_note(g, preset, report)
    return payload, report.ok


def _period_basis_note(g: MultiGraph, preset: ExamplePreset, report) -> dict:
    """Compare the computed projected period lattice against the commonly
    quoted basis for this example; the computed lattice is authoritative."""
    frame = lonsdaleite_q_frame(g, report.subspace)
    computed = []
    for v in report.triple.pi_hz:
        coords = lattice_coordinates(v, frame)
        computed.append(list(coords) if coords is not None else None)
    quoted_chains = []
    for coeffs in preset.quoted_period_q_coords:
        total = (Fraction(0),) * g.n_edges
        for c, q in zip(coeffs, frame):
            total = tuple(t + c * x for t, x in zip(total, q))
        quoted_chains.append(total)
    quoted_in_computed = all(
        lattice_coordinates(v, report.triple.pi_hz) is not None for v in quoted_chains
    )
    computed_in_quoted = all(
        lattice_coordinates(v, quoted_chains) is not None for v in report.triple.pi_hz
    )
    return {
        "computed_q_coords": computed,
        "quoted_q_coords": [list(c) for c in preset.quoted_period_q_coords],
        "same_lattice": quoted_in_computed and computed_in_quoted,
    }
