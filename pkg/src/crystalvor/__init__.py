"""crystalvor: exact Voronoi cells of graph cycle lattices, crystal standard
realizations, and verification that the crystal hides a Voronoi tiling."""

from .graphs import MultiGraph, Orientation, Walk, parse_graph
from .homology import CycleBasis, cycle_basis
from .cell import VoronoiCell, build_cell
from .crystal import CrystalModel, standard_realization, verify_hidden_tiling
from .subcover import VanishingSubgroup, complement, verify_conjecture_instance
from .examples import load_example

__all__ = [
    "MultiGraph",
    "Orientation",
    "Walk",
    "parse_graph",
    "CycleBasis",
    "cycle_basis",
    "VoronoiCell",
    "build_cell",
    "CrystalModel",
    "standard_realization",
    "verify_hidden_tiling",
    "VanishingSubgroup",
    "complement",
    "verify_conjecture_instance",
    "load_example",
]

__version__ = "0.1.0"
