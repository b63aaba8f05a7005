import random
from fractions import Fraction
import pytest

from crystalvor import linalg, polytope
from crystalvor.cell import (
    build_cell,
    cell_halfspaces,
    coordinate_volume,
    face_dimension,
    facets_containing,
    reduce_point,
    support_function,
)
from crystalvor.cycles import enumerate_elementary_cycles
from crystalvor.errors import BridgeExists, NotInCell, NotInCycleSpace
from crystalvor.graphs import MultiGraph, Orientation, reorient
from crystalvor.homology import chain_of, cycle_basis, inner, unit_chain, zero_chain


def pe(g, basis, eid):
    return basis.project(unit_chain(g, eid))


def halfspace_set(cell):
    return {(c.cycle.chain, c.offset) for c in cell.halfspaces}


# ---------------------------------------------------------------------------
# halfspaces


def test_graphene_halfspaces_exact(graphene):
    hs = cell_halfspaces(graphene)
    assert len(hs) == 6
    want = set()
    for coeffs, off in (
        ({"e1": 1, "e3": 1}, 2),
        ({"e1": -1, "e3": -1}, 0),
        ({"e2": 1, "e3": 1}, 2),
        ({"e2": -1, "e3": -1}, 0),
        ({"e1": 1, "e2": -1}, 1),
        ({"e1": -1, "e2": 1}, 1),
    ):
        want.add((tuple(int(x) for x in chain_of(graphene, coeffs)), off))
    assert {(h.cycle.chain, h.offset) for h in hs} == want


def test_k4_halfspaces_include_quoted(k4):
    hs = {(h.cycle.chain, h.offset) for h in cell_halfspaces(k4)}
    gamma0 = tuple(int(x) for x in chain_of(k4, {"f1": 1, "f2": 1, "f3": 1}))
    gamma1p = tuple(int(x) for x in chain_of(k4, {"e2": -1, "e3": -1, "f2": 1, "f3": 1}))
    assert (gamma0, 3) in hs
    assert (gamma1p, 2) in hs
    assert len(hs) == 14


def test_diamond_halfspace_count(diamond):
    assert len(cell_halfspaces(diamond)) == 12


def test_halfspaces_need_bridgeless():
    path = MultiGraph(["a", "b"], [("e", "a", "b")])
    with pytest.raises(BridgeExists):
        cell_halfspaces(path)


# ---------------------------------------------------------------------------
# vertices


def test_graphene_vertices_exact(graphene):
    cell = build_cell(graphene)
    b = cell.basis
    e1, e2, e3 = (pe(graphene, b, e) for e in ("e1", "e2", "e3"))
    want = {
        zero_chain(graphene),
        e1,
        e2,
        linalg.vadd(e1, e3),
        linalg.vadd(e2, e3),
        linalg.vadd(linalg.vadd(e1, e2), e3),
    }
    assert {v.point for v in cell.vertices} == want


def test_vertex_counts(diamond, k4):
    assert len(build_cell(diamond).vertices) == 14
    assert len(build_cell(k4).vertices) == 24


def test_vertex_q_sets_match_orientations(graphene):
    for v in build_cell(graphene).vertices:
        q = {e.id for e, s in zip(graphene.edges, v.orientation.signs) if s == 1}
        assert set(v.q_set) == q


def test_facet_vertices_respect_parts(bridgeless_census):
    # a vertex on the facet of a cycle keeps the plus part inside its q-set
    for g in bridgeless_census[::11]:
        cell = build_cell(g)
        for h in cell.halfspaces:
            plus = set(h.cycle.plus)
            allowed = plus | set(h.cycle.zero)
            for v in cell.vertices:
                if inner(h.cycle.chain, v.point) == h.offset:
                    q = set(v.q_set)
                    assert plus <= q <= allowed


def test_vertices_against_subset_oracle_examples(graphene, diamond, k4):
    for g in (graphene, diamond, k4):
        cell = build_cell(g)
        oracle = polytope.vertices_from_halfspaces(cell.coord_rows(), cell.dim)
        assert sorted(cell.vertex_coords) == oracle


def test_irredundancy(graphene, diamond, k4):
    for g in (graphene, diamond, k4):
        cell = build_cell(g)
        assert polytope.all_halfspaces_are_facets(
            cell.coord_rows(), cell.vertex_coords, cell.dim
        )


def test_central_symmetry_and_corner_vertices(bridgeless_census):
    from crystalvor.graphs import is_strongly_connected, strongly_connected_orientation

    for g in bridgeless_census[::8]:
        cell = build_cell(g)
        pts = {v.point for v in cell.vertices}
        double = linalg.vscale(2, cell.center)
        assert {linalg.vsub(double, p) for p in pts} == pts
        # 0 and pi(e(J)) are vertices once the stored orientation is strong
        oriented = reorient(g, strongly_connected_orientation(g))
        assert is_strongly_connected(oriented)
        cell2 = build_cell(oriented)
        pts2 = {v.point for v in cell2.vertices}
        assert zero_chain(g) in pts2
        assert cell2.basis.project((Fraction(1),) * g.n_edges) in pts2


def test_counting_identities(bridgeless_census):
    from crystalvor.cycles import enumerate_strong_orientations

    for g in bridgeless_census[::8]:
        cell = build_cell(g)
        assert len(cell.halfspaces) == len(enumerate_elementary_cycles(g))
        assert len(cell.vertices) == len(enumerate_strong_orientations(g))


# ---------------------------------------------------------------------------
# support function


def test_support_function_values(graphene):
    b = cycle_basis(graphene)
    g1 = chain_of(graphene, {"e1": 1, "e3": 1})
    assert support_function(graphene, g1) == 2
    assert support_function(graphene, zero_chain(graphene)) == 0
    g12 = chain_of(graphene, {"e1": 1, "e2": -1})
    assert support_function(graphene, g12) == 1
    with pytest.raises(NotInCycleSpace):
        support_function(graphene, unit_chain(graphene, "e1"))


def test_support_function_is_vertex_max(bridgeless_census):
    rng = random.Random(23)
    for g in bridgeless_census[::10]:
        cell = build_cell(g)
        for _ in range(20):
            coords = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cell.dim)]
            u = cell.basis.chain_from_coords(coords)
            expect = max(inner(u, v.point) for v in cell.vertices)
            assert support_function(g, u) == expect


# ---------------------------------------------------------------------------
# point reduction / faces


def test_reduce_point_center_fixed(graphene):
    cell = build_cell(graphene)
    h, y = reduce_point(cell, cell.center)
    assert h == (0, 0) and y == cell.center


def test_reduce_point_periodicity(graphene):
    cell = build_cell(graphene)
    g1 = chain_of(graphene, {"e1": 1, "e3": 1})
    x = linalg.vadd(cell.center, g1)
    h, y = reduce_point(cell, x)
    assert y == cell.center
    assert cell.basis.chain_from_coords(h) == tuple(map(Fraction, g1))


def test_reduce_point_boundary_tiebreak(graphene):
    cell = build_cell(graphene)
    h, y = reduce_point(cell, zero_chain(graphene))
    # 0 is a cell vertex: it stays put and the all-zero translate is chosen
    assert y == zero_chain(graphene)
    assert h == (0, 0)


def test_reduce_point_tiling_property(bridgeless_census):
    rng = random.Random(31)
    for g in bridgeless_census[::13]:
        cell = build_cell(g)
        tiling = cell.as_tiling()
        for _ in range(10):
            coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(cell.dim)]
            x = cell.basis.chain_from_coords(coords)
            h, y = reduce_point(cell, x)
            assert cell.contains(y)
            # translating by a lattice vector must land on the same reduced point
            shift = [rng.randint(-2, 2) for _ in range(cell.dim)]
            x2 = linalg.vadd(x, cell.basis.chain_from_coords(shift))
            _, y2 = reduce_point(cell, x2)
            if not polytope.tight_indices(tiling.halfspaces, y):
                assert y2 == y  # interior points have a unique representative


def test_facets_containing(graphene):
    cell = build_cell(graphene)
    b = cell.basis
    e1 = pe(graphene, b, "e1")
    tight = facets_containing(cell, e1)
    assert len(tight) >= 1
    assert facets_containing(cell, cell.center) == []
    at_zero = facets_containing(cell, zero_chain(graphene))
    assert {h.offset for h in at_zero} == {0}
    assert len(at_zero) == 2
    with pytest.raises(NotInCell):
        facets_containing(cell, linalg.vscale(3, e1))


def test_face_dimension(graphene):
    cell = build_cell(graphene)
    b = cell.basis
    e1 = pe(graphene, b, "e1")
    assert face_dimension(cell, [e1]) == 0  # a vertex
    assert face_dimension(cell, [cell.center]) == 2
    mid = linalg.vscale(Fraction(1, 2), e1)  # midpoint of the segment [0, e1bar]
    assert face_dimension(cell, [mid]) == 1
    assert face_dimension(cell, [zero_chain(graphene), e1]) == 1


# ---------------------------------------------------------------------------
# volume


def test_coordinate_volume_examples(graphene, diamond, k4):
    for g in (graphene, diamond, k4):
        assert coordinate_volume(build_cell(g)) == 1


def test_coordinate_volume_census_sample(bridgeless_census):
    for g in bridgeless_census[::9]:
        assert coordinate_volume(build_cell(g)) == 1


# ---------------------------------------------------------------------------
# reorientation covariance


def test_reorientation_covariance(graphene, k4):
    rng = random.Random(4)
    for g in (graphene, k4):
        cell = build_cell(g)
        for _ in range(4):
            signs = tuple(rng.choice((1, -1)) for _ in range(g.n_edges))
            flipped = reorient(g, Orientation(signs))
            cell2 = build_cell(flipped)
            # map the flipped chain space back and translate by pi(e(J0))
            j0 = [i for i, s in enumerate(signs) if s == -1]
            shift = cell.basis.project(
                tuple(Fraction(int(i in j0)) for i in range(g.n_edges))
            )
            mapped = set()
            for v in cell2.vertices:
                back = tuple(-c if i in j0 else c for i, c in enumerate(v.point))
                mapped.add(linalg.vadd(back, shift))
            assert mapped == {v.point for v in cell.vertices}
