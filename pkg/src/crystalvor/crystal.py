"""Standard realization of the maximal abelian covering and its verification.

The crystal is stored finitely: one offset per vertex (projection of a walk
chain from the base vertex), one vector per edge, and a period lattice
basis.  Every segment of the infinite complex is a period translate of a
fundamental segment, which is what the hidden-tiling verifier walks over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .cell import VoronoiCell, build_cell
from .cycles import DEFAULT_CIRCUIT_GUARD, DEFAULT_ORIENTATION_GUARD
from .errors import GenusTooSmall, NotStronglyConnected, TooLarge
from .graphs import (
    MultiGraph,
    Walk,
    _bfs_to_set,
    choose_base_vertex,
    collapse_bridges,
    is_strongly_connected,
    reorient,
    strongly_connected_orientation,
    walk_chain,
)
from .homology import Chain, cycle_basis, lattice_coordinates
from .tiling import SegmentCheck, verify_segments

DEFAULT_TRAIL_GUARD = 10**6


@dataclass(frozen=True)
class CrystalModel:
    graph: MultiGraph
    base: int
    offsets: tuple[Chain, ...]  # per vertex: pi(lambda(walk from base))
    edge_vectors: tuple[Chain, ...]  # per edge: pi(e_j)
    period: tuple[Chain, ...]  # lattice basis of the translation group

    def offset_of(self, label: str) -> Chain:
        return self.offsets[self.graph.vertex_index(label)]

    def period_chain(self, coords) -> Chain:
        out = [Fraction(0)] * len(self.offsets[0])
        for c, vec in zip(coords, self.period):
            if c:
                for j, v in enumerate(vec):
                    out[j] += c * Fraction(v)
        return tuple(out)


@dataclass(frozen=True)
class Segment:
    a: Chain
    b: Chain
    edge: str
    translate: tuple[int, ...] | None = None


def standard_realization(g: MultiGraph, v0: str) -> CrystalModel:
    """Vertex offsets along breadth-first walks from v0, edge vectors pi(e).

    Offsets are well defined modulo the period lattice: any two walks to the
    same vertex differ by an integer cycle.  Bridges project to zero, so the
    realization collapses them on its own.
    """
    base = g.vertex_index(v0)
    basis = cycle_basis(g)

    lam: dict[int, tuple[int, ...]] = {base: (0,) * g.n_edges}
    queue = [base]
    while queue:
        v = queue.pop(0)
        for ei in g.incident[v]:
            e = g.edges[ei]
            w = e.target if e.source == v else e.source
            if w in lam:
                continue
            step = list(lam[v])
            step[ei] += 1 if e.source == v else -1
            lam[w] = tuple(step)
            queue.append(w)

    offsets = tuple(basis.project(lam[i]) for i in range(g.n_vertices))
    edge_vectors = tuple(
        basis.project(tuple(Fraction(int(j == i)) for j in range(g.n_edges)))
        for i in range(g.n_edges)
    )
    for e, vec in zip(g.edges, edge_vectors):
        drift = linalg.vsub(linalg.vsub(offsets[e.target], offsets[e.source]), vec)
        if lattice_coordinates(drift, basis.cycles) is None:  # pragma: no cover
            raise AssertionError("offsets are not consistent modulo the period lattice")
    return CrystalModel(g, base, offsets, edge_vectors, basis.cycles)


def walk_to_directed_path(g: MultiGraph, w: Walk) -> Walk:
    """Directed path with the same endpoint and the same chain modulo periods.

    Every reversed step is replaced by a directed detour (possible under a
    strongly connected orientation); closed sub-walks, whose chains are
    integer cycles, are then excised to leave a path.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("stored orientation is not strongly connected")
    w.validate(g)

    steps = list(w.steps)
    while True:
        k = next((i for i, (_, s) in enumerate(steps) if s == -1), None)
        if k is None:
            break
        ei, _ = steps[k]
        e = g.edges[ei]
        if e.is_loop:
            repl = []
        else:
            _, path = _bfs_to_set(g, e.target, {e.source}, reverse=False)
            repl = [(x, 1) for x in path]
        steps[k : k + 1] = repl

    vlist = [w.start]
    elist: list[int] = []
    for ei, _ in steps:
        nxt = g.edges[ei].target
        if nxt in vlist:
            k = vlist.index(nxt)
            vlist = vlist[: k + 1]
            elist = elist[:k]
        else:
            vlist.append(nxt)
            elist.append(ei)

    p = Walk(w.start, tuple((ei, 1) for ei in elist))
    if p.end(g) != w.end(g):  # pragma: no cover
        raise AssertionError("reduction changed the walk endpoint")
    basis = cycle_basis(g)
    diff = linalg.vsub(walk_chain(g, w), walk_chain(g, p))
    if lattice_coordinates(diff, basis.cycles) is None:  # pragma: no cover
        raise AssertionError("reduction changed the chain by a non-period")
    return p


def enumerate_directed_trails(
    g: MultiGraph, v0: str, guard: int = DEFAULT_TRAIL_GUARD
) -> list[Walk]:
    """All directed trails from v0 (edges used at most once), shortest first."""
    if not is_strongly_connected(g):
        raise NotStronglyConnected("stored orientation is not strongly connected")
    base = g.vertex_index(v0)
    out: list[Walk] = []
    level = [(base, (), frozenset())]
    while level:
        nxt = []
        for v, steps, used in level:
            if len(out) >= guard:
                raise TooLarge(f"more than {guard} directed trails")
            out.append(Walk(base, steps))
            for ei in g.out_edges[v]:
                if ei in used:
                    continue
                nxt.append((g.edges[ei].target, steps + ((ei, 1),), used | {ei}))
        level = nxt
    return out


def fundamental_segments(model: CrystalModel) -> list[Segment]:
    """One segment per non-collapsing edge, anchored at its source offset."""
    rank = len(model.period)
    segs = []
    for e, vec in zip(model.graph.edges, model.edge_vectors):
        a = model.offsets[e.source]
        segs.append(Segment(a, linalg.vadd(a, vec), e.id, (0,) * rank))
    return [s for s in segs if s.a != s.b]


def crystal_in_cell(
    g: MultiGraph,
    v0: str,
    circuit_guard: int = DEFAULT_CIRCUIT_GUARD,
    orientation_guard: int = DEFAULT_ORIENTATION_GUARD,
    trail_guard: int = DEFAULT_TRAIL_GUARD,
    cell: VoronoiCell | None = None,
) -> list[Segment]:
    """Deduplicated segments traced by directed trails from v0, all in the cell."""
    if cell is None:
        cell = build_cell(g, circuit_guard, orientation_guard)
    if not is_strongly_connected(g):
        raise NotStronglyConnected("stored orientation is not strongly connected")
    base = g.vertex_index(v0)
    basis = cell.basis
    edge_vectors = [
        basis.project(tuple(Fraction(int(j == i)) for j in range(g.n_edges)))
        for i in range(g.n_edges)
    ]
    zero = (Fraction(0),) * g.n_edges
    segments: dict[tuple, Segment] = {}
    count = 0
    level = [(base, zero, frozenset())]
    while level:
        nxt = []
        for v, point, used in level:
            count += 1
            if count > trail_guard:
                raise TooLarge(f"more than {trail_guard} directed trails")
            for ei in g.out_edges[v]:
                if ei in used:
                    continue
                b = linalg.vadd(point, edge_vectors[ei])
                key = (point, g.edges[ei].id)
                if key not in segments:
                    if not (cell.contains(point) and cell.contains(b)):
                        raise AssertionError("trail segment escaped the cell")
                    segments[key] = Segment(point, b, g.edges[ei].id)
                nxt.append((g.edges[ei].target, b, used | {ei}))
        level = nxt
    return sorted(segments.values(), key=lambda s: (s.a, s.b, s.edge))


def window(g: MultiGraph, v0: str, box) -> list[Segment]:
    """Crystal segments whose translate coordinates lie in the given box.

    `box` is one inclusive integer (lo, hi) pair per period-basis coordinate;
    geometric duplicates between translates are removed.
    """
    model = standard_realization(g, v0)
    if len(box) != len(model.period):
        raise ValueError(f"box needs {len(model.period)} coordinate ranges")
    base_segments = fundamental_segments(model)
    out = []
    seen = set()
    for coords in product(*[range(lo, hi + 1) for lo, hi in box]):
        shift = model.period_chain(coords)
        for s in base_segments:
            a = linalg.vadd(s.a, shift)
            b = linalg.vadd(s.b, shift)
            key = (min(a, b), max(a, b))
            if key in seen:
                continue
            seen.add(key)
            out.append(Segment(a, b, s.edge, coords))
    return out


def orbit_counts(model: CrystalModel) -> tuple[int, int]:
    """Period-orbit counts of crystal vertices and non-collapsing segments."""
    period = model.period

    def same_vertex_orbit(x: Chain, y: Chain) -> bool:
        return lattice_coordinates(linalg.vsub(x, y), period) is not None

    reps: list[Chain] = []
    for off in model.offsets:
        if not any(same_vertex_orbit(off, r) for r in reps):
            reps.append(off)

    live = [
        (model.offsets[e.source], vec)
        for e, vec in zip(model.graph.edges, model.edge_vectors)
        if any(c != 0 for c in vec)
    ]

    def same_segment_orbit(s, t) -> bool:
        (sa, sv), (ta, tv) = s, t
        if sv == tv and same_vertex_orbit(sa, ta):
            return True
        if sv == tuple(-c for c in tv) and same_vertex_orbit(sa, linalg.vadd(ta, tv)):
            return True
        return False

    seg_reps: list = []
    for s in live:
        if not any(same_segment_orbit(s, t) for t in seg_reps):
            seg_reps.append(s)
    return len(reps), len(seg_reps)


def quotient_check(g: MultiGraph) -> tuple[int, int, bool]:
    """Counts of period orbits of crystal vertices and segments.

    The counts must match the vertex and edge counts of the bridge-collapsed
    graph: the crystal modulo its periods is exactly that quotient graph.
    """
    model = standard_realization(g, g.vertices[0])
    vertex_orbits, edge_orbits = orbit_counts(model)
    collapsed = collapse_bridges(g)
    matches = vertex_orbits == collapsed.n_vertices and edge_orbits == collapsed.n_edges
    return vertex_orbits, edge_orbits, matches


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    genus: int
    base_vertex: str
    r: int
    checks: tuple[SegmentCheck, ...]
    graph: MultiGraph  # the collapsed, strongly re-oriented graph that was verified
    cell: VoronoiCell


def verify_hidden_tiling(
    g: MultiGraph,
    circuit_guard: int = DEFAULT_CIRCUIT_GUARD,
    orientation_guard: int = DEFAULT_ORIENTATION_GUARD,
) -> VerificationReport:
    """Check that the crystal stays inside the cell boundaries of its tiling.

    Pipeline: collapse bridges, re-orient strongly, pick the base vertex from
    the witness subgraph, build the cell, then clip every fundamental crystal
    segment against every cell translate it touches and demand a tight facet
    on each clip.
    """
    if g.genus < 2:
        raise GenusTooSmall(f"need genus >= 2, got {g.genus}")
    collapsed = collapse_bridges(g)
    orientation = strongly_connected_orientation(collapsed)
    oriented = reorient(collapsed, orientation)
    choice = choose_base_vertex(oriented)
    v0 = oriented.vertices[choice.v_star]
    cell = build_cell(oriented, circuit_guard, orientation_guard)
    model = standard_realization(oriented, v0)
    segs = [(s.a, s.b, s.edge) for s in fundamental_segments(model)]
    checks, ok, r = verify_segments(cell.as_tiling(), segs)
    if ok and r > oriented.genus - 1:  # pragma: no cover
        raise AssertionError("witnessed segments cannot exceed the facet skeleton")
    return VerificationReport(
        ok=ok,
        genus=oriented.genus,
        base_vertex=v0,
        r=r,
        checks=tuple(checks),
        graph=oriented,
        cell=cell,
    )
