"""Shared fixtures: the bundled examples and small-graph censuses."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, permutations

import pytest

from crystalvor.errors import DisconnectedGraphError
from crystalvor.examples import load_example
from crystalvor.graphs import MultiGraph, collapse_bridges, find_bridges


@pytest.fixture(scope="session")
def graphene():
    return load_example("graphene").graph


@pytest.fixture(scope="session")
def diamond():
    return load_example("diamond").graph


@pytest.fixture(scope="session")
def k4():
    return load_example("k4").graph


@pytest.fixture(scope="session")
def lonsdaleite():
    return load_example("lonsdaleite")


def _build(n: int, pairs) -> MultiGraph | None:
    vertices = [f"v{i}" for i in range(n)]
    edges = [(f"e{k + 1}", f"v{a}", f"v{b}") for k, (a, b) in enumerate(pairs)]
    try:
        return MultiGraph(vertices, edges)
    except DisconnectedGraphError:
        return None


def _canonical(pairs, n: int) -> bool:
    """Keep one representative per isomorphism class of the edge multiset."""
    base = tuple(sorted(pairs))
    for perm in permutations(range(n)):
        mapped = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in pairs))
        if mapped < base:
            return False
    return True


def connected_multigraphs(max_vertices: int, max_edges: int):
    """All connected multigraphs up to isomorphism, as edge-list graphs."""
    out = []
    for n in range(1, max_vertices + 1):
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for m in range(n - 1, max_edges + 1):
            for pairs in combinations_with_replacement(slots, m):
                if not _canonical(pairs, n):
                    continue
                g = _build(n, pairs)
                if g is not None:
                    out.append(g)
    return out


@pytest.fixture(scope="session")
def small_census():
    """Connected multigraphs, |I| <= 4 and |J| <= 5, bridges allowed."""
    return connected_multigraphs(4, 5)


@pytest.fixture(scope="session")
def bridgeless_census():
    """Connected bridgeless multigraphs, |I| <= 4, |J| <= 6, genus >= 2."""
    graphs = connected_multigraphs(4, 6)
    return [g for g in graphs if g.genus >= 2 and not find_bridges(g)]


def random_bridgeless_graphs(count: int, seed: int, max_vertices=5, max_edges=8):
    """Random bridgeless multigraphs of genus >= 2 (bridges collapsed away)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        m = rng.randint(n + 1, max_edges)
        if m - n + 1 < 2:
            continue
        pairs = []
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):  # random spanning tree keeps it connected
            pairs.append((order[rng.randint(0, i - 1)], order[i]))
        while len(pairs) < m:
            a, b = rng.randint(0, n - 1), rng.randint(0, n - 1)
            pairs.append((a, b))
        g = _build(n, [tuple(sorted(p)) for p in pairs])
        if g is None:
            continue
        g = collapse_bridges(g)
        if g.genus >= 2 and not find_bridges(g):
            out.append(g)
    return out


@pytest.fixture(scope="session")
def random_census():
    return random_bridgeless_graphs(200, seed=20260809)


def exhaustive_elementary_cycles(g: MultiGraph) -> set[tuple[int, ...]]:
    """Oracle: filter every {-1,0,1} vector for zero boundary and a support
    whose spanning subgraph has one-dimensional cycle space."""
    from itertools import product

    out = set()
    for vec in product((-1, 0, 1), repeat=g.n_edges):
        if not any(vec):
            continue
        total = [0] * g.n_vertices
        for e, c in zip(g.edges, vec):
            total[e.source] += c
            total[e.target] -= c
        if any(total):
            continue
        support = [i for i, c in enumerate(vec) if c]
        parent = list(range(g.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = g.n_vertices
        for ei in support:
            e = g.edges[ei]
            a, b = find(e.source), find(e.target)
            if a != b:
                parent[a] = b
                comps -= 1
        if len(support) - g.n_vertices + comps == 1:
            out.add(vec)
    return out
