"""Exact rational chain algebra on a multigraph.

Chains are dense tuples indexed by edge position (vertex chains by vertex
position).  The inner product makes the stored edges an orthonormal basis;
the cycle space carries the induced metric and `project` is the orthogonal
projection onto it, computed through the Gram inverse of a spanning-tree
cycle basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotInCycleSpace
from .graphs import MultiGraph

Chain = tuple
VertexChain = tuple


def zero_chain(g: MultiGraph) -> Chain:
    return (Fraction(0),) * g.n_edges


def unit_chain(g: MultiGraph, eid: str) -> Chain:
    i = g.edge_index(eid)
    return tuple(Fraction(int(j == i)) for j in range(g.n_edges))


def chain_of(g: MultiGraph, coeffs: dict[str, object]) -> Chain:
    """Chain from an {edge id: coefficient} mapping (missing edges are 0)."""
    by_index = [Fraction(0)] * g.n_edges
    for eid, c in coeffs.items():
        by_index[g.edge_index(eid)] = Fraction(c)
    return tuple(by_index)


def boundary(g: MultiGraph, x: Chain) -> VertexChain:
    out = [Fraction(0)] * g.n_vertices
    for e, c in zip(g.edges, x):
        if c:
            out[e.source] += c
            out[e.target] -= c
    return tuple(out)


def coboundary(g: MultiGraph, y: VertexChain) -> Chain:
    return tuple(Fraction(y[e.source] - y[e.target]) for e in g.edges)


def inner(x, y) -> Fraction:
    return Fraction(sum(a * b for a, b in zip(x, y)))


def is_cycle(g: MultiGraph, x: Chain) -> bool:
    return all(c == 0 for c in boundary(g, x))


def gram_of(vectors) -> list[tuple]:
    return [tuple(inner(u, v) for v in vectors) for u in vectors]


def spanning_tree(g: MultiGraph) -> tuple[str, ...]:
    """Lowest-index breadth-first spanning tree; loops never qualify."""
    visited = [False] * g.n_vertices
    visited[0] = True
    tree: list[int] = []
    queue = [0]
    while queue:
        v = queue.pop(0)
        for ei in g.incident[v]:
            e = g.edges[ei]
            if e.is_loop:
                continue
            w = e.target if e.source == v else e.source
            if not visited[w]:
                visited[w] = True
                tree.append(ei)
                queue.append(w)
    return tuple(g.edges[i].id for i in sorted(tree))


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles through the BFS tree, with the Gram data for pi.

    cycles[a] has coefficient +1 on its chord, support inside chord + tree,
    and zero boundary; pairing with the chords is the identity matrix.
    """

    graph: MultiGraph
    tree: tuple[str, ...]
    chords: tuple[str, ...]
    cycles: tuple[Chain, ...]
    gram: tuple[tuple, ...]
    gram_inverse: tuple[tuple, ...]

    @property
    def genus(self) -> int:
        return len(self.cycles)

    def coords(self, x: Chain) -> tuple[Fraction, ...]:
        """Coefficients of project(x) in this basis: G^-1 (gamma_a, x)."""
        pair = tuple(inner(c, x) for c in self.cycles)
        return tuple(linalg.vdot(row, pair) for row in self.gram_inverse)

    def chain_from_coords(self, w) -> Chain:
        out = [Fraction(0)] * self.graph.n_edges
        for c, cyc in zip(w, self.cycles):
            if c:
                for j, v in enumerate(cyc):
                    out[j] += Fraction(c) * v
        return tuple(out)

    def project(self, x: Chain) -> Chain:
        return self.chain_from_coords(self.coords(x))

    def lattice_coords(self, x: Chain) -> tuple[int, ...] | None:
        """Integer coordinates of x in the cycle lattice, or None."""
        return lattice_coordinates(x, self.cycles)


def cycle_basis(g: MultiGraph) -> CycleBasis:
    tree_ids = spanning_tree(g)
    tree_set = {g.edge_index(t) for t in tree_ids}

    # signed chain of the unique tree path from each vertex up to the root
    parent: dict[int, tuple[int, int]] = {}
    order = [0]
    visited = [False] * g.n_vertices
    visited[0] = True
    queue = [0]
    while queue:
        v = queue.pop(0)
        for ei in g.incident[v]:
            if ei not in tree_set:
                continue
            e = g.edges[ei]
            w = e.target if e.source == v else e.source
            if not visited[w]:
                visited[w] = True
                parent[w] = (v, ei)
                order.append(w)
                queue.append(w)

    up_chain: dict[int, list[int]] = {0: [0] * g.n_edges}
    for w in order[1:]:
        v, ei = parent[w]
        e = g.edges[ei]
        c = list(up_chain[v])
        c[ei] += 1 if e.source == w else -1
        up_chain[w] = c

    chords = [i for i in range(g.n_edges) if i not in tree_set]
    cycles = []
    for ci in chords:
        e = g.edges[ci]
        c = [a - b for a, b in zip(up_chain[e.target], up_chain[e.source])]
        c[ci] += 1
        if any(v not in (-1, 0, 1) for v in c) or not is_cycle(g, tuple(c)):
            raise AssertionError("fundamental cycle construction failed")
        cycles.append(tuple(c))

    gram = [tuple(inner(a, b) for b in cycles) for a in cycles]
    gram_inverse = [tuple(r) for r in linalg.invert(gram)] if cycles else []
    return CycleBasis(
        graph=g,
        tree=tree_ids,
        chords=tuple(g.edges[i].id for i in chords),
        cycles=tuple(cycles),
        gram=tuple(gram),
        gram_inverse=tuple(gram_inverse),
    )


def project(x: Chain, basis: CycleBasis) -> Chain:
    return basis.project(x)


def lattice_coordinates(x: Chain, basis_vectors) -> tuple[int, ...] | None:
    """Integer coordinates of x in the span of the basis vectors, else None."""
    return linalg.lattice_coords_in_basis(x, list(basis_vectors))


def dual_pairing_check(basis: CycleBasis) -> bool:
    """(gamma_j, pi(e_j')) must be the identity over the chords."""
    g = basis.graph
    for a, cyc in enumerate(basis.cycles):
        for b, chord in enumerate(basis.chords):
            want = Fraction(int(a == b))
            if inner(cyc, basis.project(unit_chain(g, chord))) != want:
                return False
    return True


def require_in_cycle_space(g: MultiGraph, x: Chain) -> None:
    if not is_cycle(g, x):
        raise NotInCycleSpace("chain has nonzero boundary")
