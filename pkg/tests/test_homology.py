import random
from fractions import Fraction
from itertools import combinations

from crystalvor import linalg
from crystalvor.graphs import MultiGraph, find_bridges
from crystalvor.homology import (
    boundary,
    chain_of,
    coboundary,
    cycle_basis,
    dual_pairing_check,
    gram_of,
    inner,
    lattice_coordinates,
    project,
    spanning_tree,
    unit_chain,
    zero_chain,
)


def rand_chain(g, rng):
    return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(g.n_edges))


# ---------------------------------------------------------------------------
# boundary / coboundary / inner


def test_boundary_graphene(graphene):
    assert boundary(graphene, unit_chain(graphene, "e1")) == (1, -1)
    assert boundary(graphene, chain_of(graphene, {"e1": 1, "e3": 1})) == (0, 0)


def test_boundary_loop():
    g = MultiGraph(["a"], [("l", "a", "a")])
    assert boundary(g, unit_chain(g, "l")) == (0,)


def test_coboundary_graphene(graphene):
    assert coboundary(graphene, (1, 0)) == chain_of(graphene, {"e1": 1, "e2": 1, "e3": -1})
    # the coboundary of a constant vanishes on a connected graph
    assert coboundary(graphene, (1, 1)) == zero_chain(graphene)


def test_coboundary_k4(k4):
    assert coboundary(k4, (0, 0, 0, 1)) == chain_of(k4, {"e1": 1, "e2": 1, "e3": -1})


def test_inner_values(graphene):
    e1 = unit_chain(graphene, "e1")
    e2 = unit_chain(graphene, "e2")
    assert inner(e1, e1) == 1 and inner(e1, e2) == 0
    g1 = chain_of(graphene, {"e1": 1, "e3": 1})
    g2 = chain_of(graphene, {"e2": 1, "e3": 1})
    assert inner(g1, g2) == 1
    assert inner(e1, zero_chain(graphene)) == 0


def test_adjointness_random(small_census):
    rng = random.Random(11)
    for g in small_census[::7]:
        for _ in range(5):
            x = rand_chain(g, rng)
            y = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(g.n_vertices))
            lhs = inner(coboundary(g, y), x)
            rhs = sum(a * b for a, b in zip(y, boundary(g, x)))
            assert lhs == rhs


# ---------------------------------------------------------------------------
# spanning tree / cycle basis


def test_spanning_tree_examples(graphene, k4):
    assert spanning_tree(graphene) == ("e1",)
    t = spanning_tree(k4)
    assert len(t) == 3
    loops = MultiGraph(["a"], [("l1", "a", "a"), ("l2", "a", "a")])
    assert spanning_tree(loops) == ()


def test_cycle_basis_graphene(graphene):
    b = cycle_basis(graphene)
    assert b.tree == ("e1",)
    assert b.cycles == (chain_of(graphene, {"e2": 1, "e1": -1}), chain_of(graphene, {"e3": 1, "e1": 1}))
    for a, cyc in enumerate(b.cycles):
        for c, chord in enumerate(b.chords):
            assert inner(cyc, unit_chain(graphene, chord)) == int(a == c)


def test_cycle_basis_circle():
    n = 5
    vs = [f"v{i}" for i in range(n)]
    es = [(f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    b = cycle_basis(MultiGraph(vs, es))
    assert b.genus == 1
    assert b.gram == ((n,),)


def paper_basis_change(b, paper_cycles):
    """Integer unimodular coordinates of the quoted basis in the computed one."""
    rows = [lattice_coordinates(c, b.cycles) for c in paper_cycles]
    assert all(r is not None for r in rows)
    assert abs(linalg.det([tuple(map(Fraction, r)) for r in rows])) == 1
    return rows


def test_cycle_basis_diamond_vs_quoted(diamond):
    b = cycle_basis(diamond)
    assert b.genus == 3
    quoted = [
        chain_of(diamond, {"e1": 1, "e4": 1}),
        chain_of(diamond, {"e2": 1, "e4": 1}),
        chain_of(diamond, {"e3": 1, "e4": 1}),
    ]
    paper_basis_change(b, quoted)
    assert gram_of(quoted) == [(2, 1, 1), (1, 2, 1), (1, 1, 2)]


def test_cycle_basis_k4_vs_quoted(k4):
    b = cycle_basis(k4)
    quoted = [
        chain_of(k4, {"e2": 1, "e3": 1, "f1": 1}),
        chain_of(k4, {"e1": -1, "e3": -1, "f2": 1}),
        chain_of(k4, {"e1": 1, "e2": -1, "f3": 1}),
    ]
    paper_basis_change(b, quoted)
    assert gram_of(quoted) == [(3, -1, -1), (-1, 3, -1), (-1, -1, 3)]


# ---------------------------------------------------------------------------
# projection


def test_project_graphene_e1(graphene):
    b = cycle_basis(graphene)
    assert b.project(unit_chain(graphene, "e1")) == (
        Fraction(2, 3),
        Fraction(-1, 3),
        Fraction(1, 3),
    )


def test_project_bridge_is_zero():
    g = MultiGraph(
        ["v0", "v1", "v2"],
        [("e1", "v0", "v1"), ("e2", "v0", "v1"), ("e3", "v1", "v0"), ("p", "v1", "v2")],
    )
    b = cycle_basis(g)
    assert b.project(unit_chain(g, "p")) == zero_chain(g)


def test_project_fixes_cycles(graphene):
    b = cycle_basis(graphene)
    for cyc in b.cycles:
        assert b.project(cyc) == tuple(map(Fraction, cyc))


def test_projection_properties(small_census):
    rng = random.Random(5)
    for g in small_census[::5]:
        b = cycle_basis(g)
        for _ in range(4):
            x = rand_chain(g, rng)
            px = b.project(x)
            assert b.project(px) == px
            assert boundary(g, px) == (Fraction(0),) * g.n_vertices
            # pythagoras with equality iff x is already a cycle
            assert inner(px, px) <= inner(x, x)
            if boundary(g, x) == (Fraction(0),) * g.n_vertices:
                assert inner(px, px) == inner(x, x)
            # x - pi(x) is an exact coboundary
            residual = linalg.vsub(x, px)
            cob = [coboundary(g, tuple(Fraction(int(i == k)) for i in range(g.n_vertices)))
                   for k in range(g.n_vertices)]
            assert linalg.solve(linalg.transpose(cob), residual) is not None


def test_projection_matches_coboundary_complement(small_census):
    # oracle route: project onto the coboundary image and subtract
    rng = random.Random(41)
    for g in small_census[::11]:
        b = cycle_basis(g)
        cobs = [
            coboundary(g, tuple(Fraction(int(i == k)) for i in range(g.n_vertices)))
            for k in range(g.n_vertices)
        ]
        red, pivots = linalg.rref(cobs)
        independent = [red[i] for i in range(len(pivots))]
        if independent:
            gram = [[inner(u, v) for v in independent] for u in independent]
            ginv = linalg.invert(gram)
        for _ in range(3):
            x = rand_chain(g, rng)
            if not independent:
                assert b.project(x) == x
                continue
            pair = [inner(u, x) for u in independent]
            coeffs = linalg.mat_vec(ginv, pair)
            delta_part = [Fraction(0)] * g.n_edges
            for c, u in zip(coeffs, independent):
                for j, val in enumerate(u):
                    delta_part[j] += c * val
            assert b.project(x) == linalg.vsub(x, delta_part)


def test_bridge_homology_equivalence(small_census):
    for g in small_census:
        b = cycle_basis(g)
        bridges = set(find_bridges(g))
        for e in g.edges:
            is_zero = b.project(unit_chain(g, e.id)) == zero_chain(g)
            assert is_zero == (e.id in bridges)


# ---------------------------------------------------------------------------
# gram / lattice coordinates / duality


def test_gram_of_projected_edges(graphene, diamond, k4):
    bg = cycle_basis(graphene)
    pe = [bg.project(unit_chain(graphene, e)) for e in ("e1", "e2")]
    assert gram_of(pe) == [
        (Fraction(2, 3), Fraction(-1, 3)),
        (Fraction(-1, 3), Fraction(2, 3)),
    ]
    # the quoted diagonal for this example is 1/2, but that contradicts the
    # duality (gamma_i, ebar_j) = delta_ij, which forces Gram(ebar) to be the
    # inverse of Gram(gamma) = [[2,1,1],[1,2,1],[1,1,2]]: diagonal 3/4
    bd = cycle_basis(diamond)
    pd = [bd.project(unit_chain(diamond, e)) for e in ("e1", "e2", "e3")]
    gamma_gram = [(2, 1, 1), (1, 2, 1), (1, 1, 2)]
    assert gram_of(pd) == [tuple(r) for r in linalg.invert(gamma_gram)]
    assert gram_of(pd) == [
        (Fraction(3, 4), Fraction(-1, 4), Fraction(-1, 4)),
        (Fraction(-1, 4), Fraction(3, 4), Fraction(-1, 4)),
        (Fraction(-1, 4), Fraction(-1, 4), Fraction(3, 4)),
    ]
    bk = cycle_basis(k4)
    pf = [bk.project(unit_chain(k4, e)) for e in ("f1", "f2", "f3")]
    assert gram_of(pf) == [
        (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
        (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
        (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)),
    ]


def test_lattice_coordinates(graphene):
    b = cycle_basis(graphene)
    x = linalg.vsub(b.cycles[0], b.cycles[1])
    assert lattice_coordinates(x, b.cycles) == (1, -1)
    e1bar = b.project(unit_chain(graphene, "e1"))
    assert lattice_coordinates(e1bar, b.cycles) is None
    assert lattice_coordinates(zero_chain(graphene), b.cycles) == (0, 0)


def test_dual_pairing(graphene, diamond, k4):
    for g in (graphene, diamond, k4):
        assert dual_pairing_check(cycle_basis(g))


def count_spanning_trees(g: MultiGraph) -> int:
    if g.n_vertices == 1:
        return 1
    nonloops = [i for i, e in enumerate(g.edges) if not e.is_loop]
    count = 0
    for subset in combinations(nonloops, g.n_vertices - 1):
        parent = list(range(g.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for ei in subset:
            e = g.edges[ei]
            a, b = find(e.source), find(e.target)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok and len({find(i) for i in range(g.n_vertices)}) == 1:
            count += 1
    return count


def test_gram_determinant_counts_spanning_trees(small_census):
    for g in small_census:
        b = cycle_basis(g)
        d = linalg.det(b.gram) if b.cycles else Fraction(1)
        assert d == count_spanning_trees(g)


def test_project_standalone_matches_method(graphene):
    b = cycle_basis(graphene)
    x = chain_of(graphene, {"e1": Fraction(1, 2), "e3": 2})
    assert project(x, b) == b.project(x)
