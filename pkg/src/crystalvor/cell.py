"""The Voronoi cell of the cycle lattice as an exactly represented zonotope.

H-representation: one irredundant inequality (x, cycle) <= |cycle^+| per
elementary cycle.  V-representation: one vertex per strongly connected
orientation, the projection of the indicator chain of its kept edges.  Both
are verified against each other at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, polytope
from .cycles import (
    DEFAULT_CIRCUIT_GUARD,
    DEFAULT_ORIENTATION_GUARD,
    ElementaryCycle,
    enumerate_elementary_cycles,
    enumerate_strong_orientations,
)
from .errors import BridgeExists, NotInCell, NotInCycleSpace
from .graphs import MultiGraph, Orientation, find_bridges, is_strongly_connected
from .homology import Chain, CycleBasis, boundary, cycle_basis, inner
from .tiling import VoronoiTiling


@dataclass(frozen=True)
class HalfSpace:
    cycle: ElementaryCycle
    offset: int


@dataclass(frozen=True)
class CellVertex:
    point: Chain
    q_set: tuple[str, ...]
    orientation: Orientation


@dataclass(frozen=True)
class VoronoiCell:
    graph: MultiGraph
    basis: CycleBasis
    halfspaces: tuple[HalfSpace, ...]
    vertices: tuple[CellVertex, ...]
    center: Chain
    normal_coords: tuple[tuple, ...]  # halfspace normals in cycle-basis coordinates
    vertex_coords: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return self.basis.genus

    def halfspace_rows(self):
        return [(h.cycle.chain, Fraction(h.offset)) for h in self.halfspaces]

    def coord_rows(self):
        return [(m, Fraction(h.offset)) for m, h in zip(self.normal_coords, self.halfspaces)]

    def contains(self, y: Chain) -> bool:
        return all(inner(h.cycle.chain, y) <= h.offset for h in self.halfspaces)

    def as_tiling(self) -> VoronoiTiling:
        return VoronoiTiling(
            lattice=self.basis.cycles,
            gram=self.basis.gram,
            gram_inv=self.basis.gram_inverse,
            center=self.center,
            halfspaces=tuple((h.cycle.chain, Fraction(h.offset)) for h in self.halfspaces),
            dim=self.dim,
        )


def cell_halfspaces(
    g: MultiGraph, guard: int = DEFAULT_CIRCUIT_GUARD
) -> list[HalfSpace]:
    """One inequality per elementary cycle: (x, cycle) <= |cycle^+|."""
    bridges = find_bridges(g)
    if bridges:
        raise BridgeExists(bridges)
    return [HalfSpace(c, c.plus_count) for c in enumerate_elementary_cycles(g, guard)]


def build_cell(
    g: MultiGraph,
    circuit_guard: int = DEFAULT_CIRCUIT_GUARD,
    orientation_guard: int = DEFAULT_ORIENTATION_GUARD,
) -> VoronoiCell:
    basis = cycle_basis(g)
    halfspaces = cell_halfspaces(g, circuit_guard)
    normal_coords = tuple(
        tuple(inner(h.cycle.chain, gamma) for gamma in basis.cycles) for h in halfspaces
    )

    orientations = enumerate_strong_orientations(g, orientation_guard)
    vertices = []
    vertex_coords = []
    seen = {}
    for o in orientations:
        q_ids = tuple(e.id for e, s in zip(g.edges, o.signs) if s == 1)
        eq = tuple(Fraction(int(s == 1)) for s in o.signs)
        coords = basis.coords(eq)
        point = basis.chain_from_coords(coords)
        tight = 0
        tight_rows = []
        for m, h in zip(normal_coords, halfspaces):
            slack = h.offset - linalg.vdot(m, coords)
            if slack < 0:
                raise AssertionError("orientation vertex violates a cell inequality")
            if slack == 0:
                tight += 1
                tight_rows.append(m)
        if tight < basis.genus or linalg.rank(tight_rows) != basis.genus:
            raise AssertionError("orientation point is not a cell vertex")
        if point in seen:
            raise AssertionError("two strong orientations produced one vertex")
        seen[point] = o
        vertices.append(CellVertex(point, q_ids, o))
        vertex_coords.append(coords)

    e_all = (Fraction(1),) * g.n_edges
    center = tuple(c / 2 for c in basis.project(e_all))

    cell = VoronoiCell(
        graph=g,
        basis=basis,
        halfspaces=tuple(halfspaces),
        vertices=tuple(vertices),
        center=center,
        normal_coords=normal_coords,
        vertex_coords=tuple(vertex_coords),
    )
    _verify_cell(cell)
    return cell


def _verify_cell(cell: VoronoiCell) -> None:
    pts = [v.point for v in cell.vertices]
    if not polytope.is_centrally_symmetric(pts, cell.center):
        raise AssertionError("cell is not centrally symmetric about pi(e(J)/2)")
    if is_strongly_connected(cell.graph):
        zero = (Fraction(0),) * cell.graph.n_edges
        full = cell.basis.project((Fraction(1),) * cell.graph.n_edges)
        if zero not in pts or tuple(full) not in pts:
            raise AssertionError("0 and pi(e(J)) must be vertices for a strong orientation")


def cell_vertices(g: MultiGraph, **guards) -> list[CellVertex]:
    return list(build_cell(g, **guards).vertices)


def support_function(g: MultiGraph, u: Chain) -> Fraction:
    """Support value of the cell in direction u: sum of positive coordinates."""
    if any(c != 0 for c in boundary(g, u)):
        raise NotInCycleSpace("direction must lie in the cycle space")
    return Fraction(sum(c for c in u if c > 0))


def reduce_point(cell: VoronoiCell, x: Chain) -> tuple[tuple[int, ...], Chain]:
    """Translate x into the canonical cell by an exact closest-vector search.

    Returns the lattice coordinates of the translate h and y = x - h.
    Boundary ties prefer the shortest h (a point already in the cell keeps
    h = 0), then the lexicographically smallest coordinates.
    """
    if any(c != 0 for c in boundary(cell.graph, x)):
        raise NotInCycleSpace("point must lie in the cycle space")
    h, _, y = cell.as_tiling().reduce(x)
    return h, y


def facets_containing(cell: VoronoiCell, y: Chain) -> list[HalfSpace]:
    out = []
    for h in cell.halfspaces:
        slack = h.offset - inner(h.cycle.chain, y)
        if slack < 0:
            raise NotInCell("point is outside the cell")
        if slack == 0:
            out.append(h)
    return out


def face_dimension(cell: VoronoiCell, points) -> int:
    """Dimension of the smallest face containing the given cell points."""
    for p in points:
        if not cell.contains(p):
            raise NotInCell("point is outside the cell")
    return polytope.face_dimension_of(cell.halfspace_rows(), cell.dim, list(points))


def coordinate_volume(cell: VoronoiCell) -> Fraction:
    """Cell volume in cycle-basis coordinates; exactly 1 for a lattice tile."""
    return polytope.volume(cell.coord_rows(), cell.vertex_coords, cell.dim)
