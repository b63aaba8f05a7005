"""Bundled example graphs with their customary presets.

Each preset fixes the stored orientation, the base vertex, and (for the
non-maximal covering example) the vanishing subgroup and the cell center the
hexagonal-cylinder tiling is anchored at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import UnknownExample
from .graphs import MultiGraph
from .homology import Chain, unit_chain
from .subcover import Subspace, VanishingSubgroup, complement

EXAMPLE_NAMES = ("graphene", "diamond", "k4", "lonsdaleite")


@dataclass(frozen=True)
class ExamplePreset:
    name: str
    graph: MultiGraph
    base_vertex: str
    vanishing_edge_coeffs: tuple[dict, ...] | None = None
    center_q_coeffs: tuple[int, ...] | None = None  # coefficients in the q frame
    # the period basis usually quoted for this example, in q coordinates;
    # kept for cross-checking only, the computed basis is authoritative
    quoted_period_q_coords: tuple[tuple[int, ...], ...] | None = None


def _graphene() -> ExamplePreset:
    g = MultiGraph(
        ["v0", "v1"],
        [("e1", "v0", "v1"), ("e2", "v0", "v1"), ("e3", "v1", "v0")],
    )
    return ExamplePreset("graphene", g, "v0")


def _diamond() -> ExamplePreset:
    g = MultiGraph(
        ["v0", "v1"],
        [("e1", "v0", "v1"), ("e2", "v0", "v1"), ("e3", "v0", "v1"), ("e4", "v1", "v0")],
    )
    return ExamplePreset("diamond", g, "v0")


def _k4() -> ExamplePreset:
    g = MultiGraph(
        ["v0", "v1", "v2", "v3"],
        [
            ("e1", "v3", "v1"),
            ("e2", "v3", "v2"),
            ("e3", "v0", "v3"),
            ("f1", "v2", "v0"),
            ("f2", "v0", "v1"),
            ("f3", "v1", "v2"),
        ],
    )
    return ExamplePreset("k4", g, "v0")


def _lonsdaleite() -> ExamplePreset:
    g = MultiGraph(
        ["v0", "v1", "v2", "v3"],
        [
            ("l1", "v0", "v1"),
            ("l2", "v2", "v3"),
            ("m1", "v1", "v2"),
            ("m2", "v1", "v2"),
            ("m3", "v2", "v1"),
            ("n1", "v0", "v3"),
            ("n2", "v0", "v3"),
            ("n3", "v3", "v0"),
        ],
    )
    return ExamplePreset(
        "lonsdaleite",
        g,
        "v0",
        vanishing_edge_coeffs=(
            {"m1": 1, "m3": 1, "n1": -1, "n3": -1},
            {"m2": 1, "m3": 1, "n2": -1, "n3": -1},
        ),
        center_q_coeffs=(1, 1, 3),
        quoted_period_q_coords=((2, 2, 0), (1, 2, 0), (0, 0, 4)),
    )


_BUILDERS = {
    "graphene": _graphene,
    "diamond": _diamond,
    "k4": _k4,
    "lonsdaleite": _lonsdaleite,
}


def load_example(name: str) -> ExamplePreset:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownExample(
            f"unknown example {name!r}; available: {', '.join(EXAMPLE_NAMES)}"
        ) from None
    return builder()


def lonsdaleite_q_frame(g: MultiGraph, s: Subspace) -> tuple[Chain, Chain, Chain]:
    """The customary hexagonal frame (q1, q2, q3) of the projected lattice."""
    m1 = s.project(unit_chain(g, "m1"))
    m2 = s.project(unit_chain(g, "m2"))
    m3 = s.project(unit_chain(g, "m3"))
    n3 = s.project(unit_chain(g, "n3"))
    q1 = linalg.vsub(n3, m2)
    q2 = linalg.vsub(n3, m1)
    q3 = linalg.vsub(linalg.vadd(q1, q2), m3)
    return q1, q2, q3


def preset_center(preset: ExamplePreset) -> Chain | None:
    """The preset cell center as a chain, for examples that carry one."""
    if preset.center_q_coeffs is None:
        return None
    g = preset.graph
    vanishing = VanishingSubgroup.from_edge_coeffs(g, preset.vanishing_edge_coeffs)
    s = complement(g, vanishing)
    frame = lonsdaleite_q_frame(g, s)
    out = [Fraction(0)] * g.n_edges
    for c, q in zip(preset.center_q_coeffs, frame):
        for j, v in enumerate(q):
            out[j] += c * v
    return tuple(out)
