"""Non-maximal free abelian coverings: vanishing subgroup, orthogonal
complement, the three lattices it induces, projected crystals, general
low-rank lattice Voronoi cells, and the conjecture instance checker.

Everything stays in exact rational arithmetic; lattice bases are put into
Hermite normal form so repeated runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from . import linalg, polytope
from .crystal import CrystalModel, orbit_counts, standard_realization
from .errors import GenusTooSmall, NotACycle, NotInCycleSpace, RankTooHigh
from .graphs import MultiGraph
from .homology import Chain, CycleBasis, cycle_basis, inner, is_cycle
from .tiling import SegmentCheck, VoronoiTiling, _ints_within, verify_segments


@dataclass(frozen=True)
class VanishingSubgroup:
    """Generators (integer cycles) of the covering's vanishing subgroup."""

    generators: tuple[Chain, ...]

    @classmethod
    def from_edge_coeffs(cls, g: MultiGraph, dicts) -> "VanishingSubgroup":
        from .homology import chain_of

        gens = []
        for d in dicts:
            c = chain_of(g, d)
            _require_integer_cycle(g, c)
            gens.append(tuple(int(v) for v in c))
        return cls(tuple(gens))

    @classmethod
    def from_basis_coords(cls, basis: CycleBasis, vectors) -> "VanishingSubgroup":
        gens = []
        for v in vectors:
            if any(int(c) != c for c in v):
                raise NotACycle("coordinates must be integers")
            chain = basis.chain_from_coords([int(c) for c in v])
            gens.append(tuple(int(x) for x in chain))
        return cls(tuple(gens))


def _require_integer_cycle(g: MultiGraph, c: Chain) -> None:
    if any(Fraction(v).denominator != 1 for v in c):
        raise NotACycle("generator must be an integer chain")
    if not is_cycle(g, c):
        raise NotACycle("generator must have zero boundary")


@dataclass(frozen=True)
class Subspace:
    """The orthogonal complement of the vanishing subgroup inside the cycle
    space, with the data needed for its orthogonal projection."""

    graph: MultiGraph
    vanishing: tuple[Chain, ...]
    basis: tuple[Chain, ...]
    gram: tuple[tuple, ...]
    gram_inv: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, x: Chain) -> Chain:
        if not self.basis:
            return (Fraction(0),) * self.graph.n_edges
        pair = tuple(inner(b, x) for b in self.basis)
        coords = tuple(linalg.vdot(row, pair) for row in self.gram_inv)
        out = [Fraction(0)] * self.graph.n_edges
        for c, b in zip(coords, self.basis):
            if c:
                for j, v in enumerate(b):
                    out[j] += c * Fraction(v)
        return tuple(out)

    def contains(self, x: Chain) -> bool:
        return tuple(self.project(x)) == tuple(map(Fraction, x))


def complement(g: MultiGraph, vanishing: VanishingSubgroup) -> Subspace:
    """Exact basis of {x in the cycle space : (x, generator) = 0 for all}."""
    for gen in vanishing.generators:
        _require_integer_cycle(g, gen)
    cb = cycle_basis(g)
    if not vanishing.generators:
        vectors = cb.cycles
    else:
        pairing = [
            tuple(inner(gen, gamma) for gamma in cb.cycles) for gen in vanishing.generators
        ]
        coords = linalg.nullspace(pairing)
        vectors = tuple(cb.chain_from_coords(c) for c in coords)
    gram = [tuple(inner(a, b) for b in vectors) for a in vectors]
    gram_inv = [tuple(r) for r in linalg.invert(gram)] if vectors else []
    return Subspace(
        graph=g,
        vanishing=vanishing.generators,
        basis=tuple(map(tuple, vectors)),
        gram=tuple(gram),
        gram_inv=tuple(gram_inv),
    )


def _image_lattice(vectors) -> tuple[Chain, ...]:
    """Canonical basis of the group generated by rational vectors.

    Scale to a common denominator, take the integer Hermite form, scale back.
    """
    live = [v for v in vectors if any(c != 0 for c in v)]
    if not live:
        return ()
    den = lcm(*[Fraction(c).denominator for v in live for c in v])
    rows = [[int(Fraction(c) * den) for c in v] for v in live]
    hnf = linalg.hermite_normal_form(rows)
    return tuple(tuple(Fraction(x, den) for x in row) for row in hnf)


@dataclass(frozen=True)
class LatticeTriple:
    """The chain of lattices induced in the complement subspace."""

    lambda_cap: tuple[Chain, ...]  # integer chains inside the subspace
    pi_hz: tuple[Chain, ...]  # image of the period lattice
    pi_lambda: tuple[Chain, ...]  # image of the full edge lattice
    index_hz_over_cap: int
    index_lambda_over_hz: int
    dual_unimodular: bool

    def grams(self):
        return tuple(
            tuple(tuple(inner(a, b) for b in basis) for a in basis)
            for basis in (self.lambda_cap, self.pi_hz, self.pi_lambda)
        )


def _integer_coords_matrix(sub, sup) -> list[tuple[int, ...]]:
    """Coordinates of the sub-basis in the super-basis; must be integral."""
    rows = []
    for v in sub:
        coords = linalg.lattice_coords_in_basis(v, list(sup))
        if coords is None:
            raise AssertionError("expected lattice inclusion failed")
        rows.append(coords)
    return rows


def lattice_triple(g: MultiGraph, s: Subspace) -> LatticeTriple:
    cb = cycle_basis(g)

    # integer kernel of (boundary ; pairing with the vanishing generators)
    rows: list[list[int]] = []
    for i in range(g.n_vertices):
        row = [0] * g.n_edges
        for j, e in enumerate(g.edges):
            if e.source == i:
                row[j] += 1
            if e.target == i:
                row[j] -= 1
        rows.append(row)
    for gen in s.vanishing:
        rows.append([int(c) for c in gen])
    lambda_cap = tuple(
        tuple(Fraction(x) for x in row) for row in linalg.integer_kernel(rows)
    )

    pi_hz = _image_lattice([s.project(c) for c in cb.cycles])
    pi_lambda = _image_lattice(
        [s.project(tuple(Fraction(int(j == i)) for j in range(g.n_edges))) for i in range(g.n_edges)]
    )

    idx1 = idx2 = 1
    if lambda_cap:
        m = _integer_coords_matrix(lambda_cap, pi_hz)
        idx1 = abs(int(linalg.det(m)))
        m2 = _integer_coords_matrix(pi_hz, pi_lambda)
        idx2 = abs(int(linalg.det(m2)))

    dual = True
    if lambda_cap:
        pairing = [[inner(a, b) for b in pi_lambda] for a in lambda_cap]
        if any(Fraction(x).denominator != 1 for row in pairing for x in row):
            dual = False
        elif abs(linalg.det(pairing)) != 1:
            dual = False
    return LatticeTriple(lambda_cap, pi_hz, pi_lambda, idx1, idx2, dual)


def projected_crystal(g: MultiGraph, v0: str, s: Subspace) -> CrystalModel:
    """The standard realization pushed through the subspace projection."""
    base = standard_realization(g, v0)
    period = _image_lattice([s.project(c) for c in base.period])
    return CrystalModel(
        graph=g,
        base=base.base,
        offsets=tuple(s.project(x) for x in base.offsets),
        edge_vectors=tuple(s.project(x) for x in base.edge_vectors),
        period=period,
    )


# ---------------------------------------------------------------------------
# lattice Voronoi cells by relevant-vector search


def voronoi_relevant_vectors(gram) -> list[tuple[int, ...]]:
    """Coordinates of the Voronoi-relevant vectors of a positive lattice Gram.

    Enumerates an exact ball that provably contains all minima of the
    nonzero cosets modulo 2L (radius: twice a covering-radius bound from the
    basis lengths); a vector is relevant iff, up to sign, it is the unique
    minimum of its coset.
    """
    r = len(gram)
    if r == 0:
        return []
    gram_inv = linalg.invert(gram)
    trace = sum(Fraction(gram[a][a]) for a in range(r))
    bound = 4 * r * trace  # (2 * covering radius estimate, squared), doubled again
    ranges = [_ints_within(Fraction(0), bound * gram_inv[a][a]) for a in range(r)]

    def q(n) -> Fraction:
        return Fraction(linalg.vdot(n, linalg.mat_vec(gram, n)))

    cosets: dict[tuple[int, ...], tuple[Fraction, list]] = {}
    for n in product(*ranges):
        if not any(n):
            continue
        qn = q(n)
        if qn > bound:
            continue
        key = tuple(x & 1 for x in n)
        if key == (0,) * r:
            continue
        best = cosets.get(key)
        if best is None or qn < best[0]:
            cosets[key] = (qn, [n])
        elif qn == best[0]:
            best[1].append(n)
    relevant = []
    for _, (qn, mins) in sorted(cosets.items()):
        if len(mins) == 2 and mins[0] == tuple(-x for x in mins[1]):
            relevant.extend(mins)
    return sorted(relevant)


@dataclass(frozen=True)
class LatticeCell:
    lattice: tuple[Chain, ...]
    gram: tuple[tuple, ...]
    gram_inv: tuple[tuple, ...]
    center: Chain
    halfspaces: tuple[tuple[Chain, Fraction], ...]  # absolute chain form
    vertices: tuple[Chain, ...]
    vertex_coords: tuple[tuple, ...]  # in lattice basis, relative to the center
    relevant: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.lattice)

    def as_tiling(self) -> VoronoiTiling:
        return VoronoiTiling(
            lattice=self.lattice,
            gram=self.gram,
            gram_inv=self.gram_inv,
            center=self.center,
            halfspaces=self.halfspaces,
            dim=self.dim,
        )

    def coord_rows(self):
        rows = []
        for n in self.relevant:
            normal = linalg.mat_vec(self.gram, n)
            offset = Fraction(linalg.vdot(n, normal), 2)
            rows.append((tuple(normal), offset))
        return rows


def lattice_voronoi_cell(
    lattice, center: Chain, rank_guard: int = 4
) -> LatticeCell:
    """Voronoi cell of a lattice around a center, as exact halfspaces/vertices.

    Halfspaces come from the Voronoi-relevant vectors, vertices from solving
    every dim-subset of them; the construction is limited to small ranks.
    """
    lattice = tuple(tuple(map(Fraction, v)) for v in lattice)
    r = len(lattice)
    if r > rank_guard:
        raise RankTooHigh(f"lattice rank {r} exceeds the guard {rank_guard}")
    center = tuple(map(Fraction, center))
    if r == 0:
        return LatticeCell((), (), (), center, (), (center,), ((),), ())
    gram = tuple(tuple(inner(a, b) for b in lattice) for a in lattice)
    gram_inv = tuple(tuple(row) for row in linalg.invert(gram))

    # the center must live in the lattice span for the cell to tile it
    pair = tuple(inner(b, center) for b in lattice)
    coords = tuple(linalg.vdot(row, pair) for row in gram_inv)
    rebuilt = [Fraction(0)] * len(center)
    for c, b in zip(coords, lattice):
        for j, v in enumerate(b):
            rebuilt[j] += c * v
    if tuple(rebuilt) != center:
        raise NotInCycleSpace("center does not lie in the lattice span")

    relevant = voronoi_relevant_vectors(gram)
    halfspaces = []
    coord_rows = []
    for n in relevant:
        v_chain = [Fraction(0)] * len(center)
        for c, b in zip(n, lattice):
            if c:
                for j, x in enumerate(b):
                    v_chain[j] += c * x
        v_chain = tuple(v_chain)
        norm_sq = Fraction(linalg.vdot(n, linalg.mat_vec(gram, n)))
        halfspaces.append((v_chain, norm_sq / 2 + inner(center, v_chain)))
        coord_rows.append((tuple(linalg.mat_vec(gram, n)), norm_sq / 2))

    vcoords = polytope.vertices_from_halfspaces(coord_rows, r)
    if not polytope.is_centrally_symmetric(vcoords, (Fraction(0),) * r):
        raise AssertionError("lattice cell is not centrally symmetric")
    vertices = []
    for y in vcoords:
        p = list(center)
        for c, b in zip(y, lattice):
            if c:
                for j, x in enumerate(b):
                    p[j] += c * x
        vertices.append(tuple(p))
    return LatticeCell(
        lattice=lattice,
        gram=gram,
        gram_inv=gram_inv,
        center=center,
        halfspaces=tuple(halfspaces),
        vertices=tuple(vertices),
        vertex_coords=tuple(vcoords),
        relevant=tuple(relevant),
    )


def lattice_cell_volume(cell: LatticeCell) -> Fraction:
    """Cell volume in lattice coordinates; 1 exactly when the cell tiles."""
    return polytope.volume(cell.coord_rows(), cell.vertex_coords, cell.dim)


# ---------------------------------------------------------------------------
# conjecture instance checking


@dataclass(frozen=True)
class SubcoverReport:
    ok: bool
    dim: int
    base_vertex: str
    r: int
    checks: tuple[SegmentCheck, ...]
    cell: LatticeCell
    triple: LatticeTriple
    subspace: Subspace


def verify_conjecture_instance(
    g: MultiGraph,
    vanishing: VanishingSubgroup,
    center: Chain,
    base_vertex: str | None = None,
) -> SubcoverReport:
    """Clip the projected crystal against the Voronoi tiling of the projected
    period lattice around the given center and demand boundary witnesses."""
    s = complement(g, vanishing)
    if s.dim < 2:
        raise GenusTooSmall(f"projected crystal needs dimension >= 2, got {s.dim}")
    center = tuple(map(Fraction, center))
    if not s.contains(center):
        raise NotInCycleSpace("center must lie in the covering subspace")
    triple = lattice_triple(g, s)
    cell = lattice_voronoi_cell(triple.pi_hz, center)
    v0 = base_vertex if base_vertex is not None else g.vertices[0]
    model = projected_crystal(g, v0, s)

    segs = []
    for label, off in zip(g.vertices, model.offsets):
        segs.append((off, off, f"vertex:{label}"))
    for e, vec in zip(g.edges, model.edge_vectors):
        if any(c != 0 for c in vec):
            a = model.offsets[e.source]
            segs.append((a, linalg.vadd(a, vec), e.id))

    checks, ok, r = verify_segments(cell.as_tiling(), segs)
    return SubcoverReport(
        ok=ok,
        dim=s.dim,
        base_vertex=v0,
        r=r,
        checks=tuple(checks),
        cell=cell,
        triple=triple,
        subspace=s,
    )


def quotient_bijectivity(
    g: MultiGraph, vanishing: VanishingSubgroup, base_vertex: str | None = None
) -> tuple[bool, dict]:
    """Compare the covering quotient counts with the projected crystal orbits.

    The quotient of the covering graph by its translation group is the input
    graph itself, so injectivity amounts to the vertex and edge orbit counts
    of the projected crystal matching |I| and |J|.
    """
    s = complement(g, vanishing)
    v0 = base_vertex if base_vertex is not None else g.vertices[0]
    model = projected_crystal(g, v0, s)
    v_orbits, e_orbits = orbit_counts(model)
    injective = v_orbits == g.n_vertices and e_orbits == g.n_edges
    return injective, {
        "vertex_orbits": v_orbits,
        "edge_orbits": e_orbits,
        "graph_vertices": g.n_vertices,
        "graph_edges": g.n_edges,
    }


def search_conjecture_centers(
    g: MultiGraph, vanishing: VanishingSubgroup, limit: int = 512
) -> list[tuple[Chain, bool]]:
    """Diagnostic sweep: try half-lattice representatives as cell centers.

    Heuristic only; enumerates representatives of half the projected edge
    lattice modulo the projected period lattice and reports which centers
    verify.  No claim of completeness over all possible centers.
    """
    s = complement(g, vanishing)
    if s.dim < 2:
        raise GenusTooSmall(f"projected crystal needs dimension >= 2, got {s.dim}")
    triple = lattice_triple(g, s)
    half = tuple(tuple(Fraction(c, 2) for c in v) for v in triple.pi_lambda)
    coords = _integer_coords_matrix(triple.pi_hz, half)
    _, d, v_tf = linalg.smith_normal_form(coords)
    r = len(half)
    diag = [abs(d[i][i]) for i in range(r)]
    total = 1
    for x in diag:
        total *= max(1, x)
    if total > limit:
        raise RankTooHigh(f"quotient of size {total} exceeds the sweep limit {limit}")
    v_inv = [[int(x) for x in row] for row in linalg.invert(v_tf)]
    out = []
    for rep in product(*[range(max(1, x)) for x in diag]):
        half_coords = [sum(rep[i] * v_inv[i][j] for i in range(r)) for j in range(r)]
        chain = [Fraction(0)] * g.n_edges
        for c, v in zip(half_coords, half):
            if c:
                for j, x in enumerate(v):
                    chain[j] += c * x
        out.append((tuple(chain), verify_conjecture_instance(g, vanishing, tuple(chain)).ok))
    return out
