"""Finite connected multigraphs with a stored orientation per edge.

Vertices and edges keep their input order; that order is the canonical one
used for every deterministic tie-break in the package (spanning trees,
witness searches, orientation scans).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BridgeExists,
    DisconnectedGraphError,
    GenusTooSmall,
    GraphFormatError,
    NotStronglyConnected,
    UnknownVertex,
)


@dataclass(frozen=True)
class EdgeRec:
    id: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class MultiGraph:
    """Immutable multigraph; loops and parallel edges allowed."""

    __slots__ = ("vertices", "edges", "_vindex", "_eindex", "incident", "out_edges", "in_edges")

    def __init__(self, vertices: Sequence[str], edges: Iterable[tuple[str, str, str]]):
        labels = tuple(vertices)
        if len(set(labels)) != len(labels):
            raise GraphFormatError("duplicate vertex labels")
        if not labels:
            raise GraphFormatError("graph needs at least one vertex")
        vindex = {lab: i for i, lab in enumerate(labels)}
        recs = []
        ids = set()
        for eid, src, tgt in edges:
            if eid in ids:
                raise GraphFormatError(f"duplicate edge id {eid!r}")
            ids.add(eid)
            if src not in vindex:
                raise GraphFormatError(f"edge {eid!r} has unknown source {src!r}")
            if tgt not in vindex:
                raise GraphFormatError(f"edge {eid!r} has unknown target {tgt!r}")
            recs.append(EdgeRec(eid, vindex[src], vindex[tgt]))
        object.__setattr__(self, "vertices", labels)
        object.__setattr__(self, "edges", tuple(recs))
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", {e.id: i for i, e in enumerate(recs)})
        incident = [[] for _ in labels]
        out_e = [[] for _ in labels]
        in_e = [[] for _ in labels]
        for i, e in enumerate(recs):
            incident[e.source].append(i)
            if not e.is_loop:
                incident[e.target].append(i)
            out_e[e.source].append(i)
            in_e[e.target].append(i)
        object.__setattr__(self, "incident", tuple(map(tuple, incident)))
        object.__setattr__(self, "out_edges", tuple(map(tuple, out_e)))
        object.__setattr__(self, "in_edges", tuple(map(tuple, in_e)))
        self._check_connected()

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MultiGraph is immutable")

    def _check_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for ei in self.incident[v]:
                e = self.edges[ei]
                w = e.target if e.source == v else e.source
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise DisconnectedGraphError("underlying graph is not connected")

    # -- lookups ----------------------------------------------------------

    def vertex_index(self, label: str) -> int:
        try:
            return self._vindex[label]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {label!r}") from None

    def edge_index(self, eid: str) -> int:
        try:
            return self._eindex[eid]
        except KeyError:
            raise GraphFormatError(f"unknown edge {eid!r}") from None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def as_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "source": self.vertices[e.source], "target": self.vertices[e.target]}
                for e in self.edges
            ],
        }

    def __repr__(self):
        return f"MultiGraph(|I|={self.n_vertices}, |J|={self.n_edges})"

    def __eq__(self, other):
        return (
            isinstance(other, MultiGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))


@dataclass(frozen=True)
class Orientation:
    """Re-orientation of the stored edge directions: +1 keeps, -1 reverses."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise GraphFormatError("orientation signs must be +1 or -1")

    @classmethod
    def identity(cls, g: MultiGraph) -> "Orientation":
        return cls((1,) * g.n_edges)

    def sign_of(self, g: MultiGraph, eid: str) -> int:
        return self.signs[g.edge_index(eid)]

    def as_dict(self, g: MultiGraph) -> dict:
        return {e.id: s for e, s in zip(g.edges, self.signs)}


@dataclass(frozen=True)
class Walk:
    """A walk: start vertex plus (edge index, sign) steps chained head to tail."""

    start: int
    steps: tuple[tuple[int, int], ...]

    def validate(self, g: MultiGraph) -> None:
        v = self.start
        for ei, s in self.steps:
            e = g.edges[ei]
            head, tail = (e.source, e.target) if s == 1 else (e.target, e.source)
            if head != v:
                raise GraphFormatError(f"walk step {e.id} does not chain at {g.vertices[v]}")
            v = tail

    def end(self, g: MultiGraph) -> int:
        v = self.start
        for ei, s in self.steps:
            e = g.edges[ei]
            v = e.target if s == 1 else e.source
        return v

    def vertex_seq(self, g: MultiGraph) -> list[int]:
        seq = [self.start]
        v = self.start
        for ei, s in self.steps:
            e = g.edges[ei]
            v = e.target if s == 1 else e.source
            seq.append(v)
        return seq

    def is_directed(self) -> bool:
        return all(s == 1 for _, s in self.steps)

    def is_path(self, g: MultiGraph) -> bool:
        seq = self.vertex_seq(g)
        return len(set(seq)) == len(seq)

    def is_circuit(self, g: MultiGraph) -> bool:
        seq = self.vertex_seq(g)
        return len(self.steps) >= 1 and seq[0] == seq[-1] and len(set(seq[:-1])) == len(seq) - 1

    def is_trail(self) -> bool:
        used = [ei for ei, _ in self.steps]
        return len(set(used)) == len(used)


def walk_chain(g: MultiGraph, w: Walk) -> tuple[int, ...]:
    """Signed edge-count vector of a walk (an integer chain)."""
    c = [0] * g.n_edges
    for ei, s in w.steps:
        c[ei] += s
    return tuple(c)


@dataclass(frozen=True)
class BaseVertexChoice:
    """Verified witness subgraph used to pick the realization base vertex."""

    kind: str  # "gamma1" | "gamma2"
    v_star: int
    circuits: tuple[Walk, Walk] | None = None  # gamma1 case
    v_star_star: int | None = None  # gamma2 case
    paths: tuple[Walk, Walk, Walk] | None = None  # p1, p2, p3


# ---------------------------------------------------------------------------
# parsing


def parse_graph(text: str) -> MultiGraph:
    """Parse the JSON graph-file format into a canonical MultiGraph."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def graph_from_dict(data) -> MultiGraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphFormatError('graph file must be an object with "vertices" and "edges"')
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError('"vertices" must be a list of strings')
    edges = []
    for item in data["edges"]:
        if not isinstance(item, dict) or not {"id", "source", "target"} <= set(item):
            raise GraphFormatError('each edge needs "id", "source" and "target"')
        edges.append((item["id"], item["source"], item["target"]))
    return MultiGraph(vertices, edges)


# ---------------------------------------------------------------------------
# bridges and orientations


def find_bridges(g: MultiGraph) -> tuple[str, ...]:
    """Edges whose removal disconnects the graph, in edge order.

    Lowpoint DFS over the underlying undirected graph; only the arriving
    edge instance is excluded when scanning, so a parallel copy of the tree
    edge correctly prevents it from being a bridge.  Loops are never bridges.
    """
    n = g.n_vertices
    disc = [-1] * n
    low = [0] * n
    timer = 0
    bridge_idx = []
    disc[0] = low[0] = timer
    timer += 1
    stack = [(0, -1, 0)]
    while stack:
        v, arrival, pos = stack.pop()
        inc = g.incident[v]
        moved = False
        while pos < len(inc):
            ei = inc[pos]
            pos += 1
            if ei == arrival:
                continue
            e = g.edges[ei]
            if e.is_loop:
                continue
            w = e.target if e.source == v else e.source
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((v, arrival, pos))
                stack.append((w, ei, 0))
                moved = True
                break
            low[v] = min(low[v], disc[w])
        if not moved and arrival != -1:
            e = g.edges[arrival]
            parent = e.source if e.target == v else e.target
            low[parent] = min(low[parent], low[v])
            if low[v] > disc[parent]:
                bridge_idx.append(arrival)
    return tuple(g.edges[i].id for i in sorted(bridge_idx))


def is_strongly_connected(g: MultiGraph, o: Orientation | None = None) -> bool:
    """True iff every ordered vertex pair is joined by a directed path."""
    if g.n_vertices == 1:
        return True
    signs = o.signs if o is not None else (1,) * g.n_edges
    fwd = [[] for _ in g.vertices]
    bwd = [[] for _ in g.vertices]
    for e, s in zip(g.edges, signs):
        a, b = (e.source, e.target) if s == 1 else (e.target, e.source)
        fwd[a].append(b)
        bwd[b].append(a)

    def full_reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == g.n_vertices

    return full_reach(fwd) and full_reach(bwd)


def strongly_connected_orientation(g: MultiGraph) -> Orientation:
    """A deterministic strongly connected re-orientation of a bridgeless graph.

    The stored orientation wins when it is already strong (identity signs);
    otherwise the classic construction: depth-first tree edges away from the
    root, remaining edges toward the ancestor, loops kept as stored.
    """
    bridges = find_bridges(g)
    if bridges:
        raise BridgeExists(bridges)
    ident = Orientation.identity(g)
    if is_strongly_connected(g, ident):
        return ident
    signs = [0] * g.n_edges
    visited = [False] * g.n_vertices
    visited[0] = True
    stack = [(0, 0)]
    while stack:
        v, pos = stack.pop()
        inc = g.incident[v]
        while pos < len(inc):
            ei = inc[pos]
            pos += 1
            if signs[ei] != 0:
                continue
            e = g.edges[ei]
            if e.is_loop:
                signs[ei] = 1
                continue
            w = e.target if e.source == v else e.source
            if not visited[w]:
                signs[ei] = 1 if e.source == v else -1  # tree edge away from root
                visited[w] = True
                stack.append((v, pos))
                stack.append((w, 0))
                break
            signs[ei] = 1 if e.source == v else -1  # back edge toward the ancestor
    result = Orientation(tuple(signs))
    # bridgeless graphs always admit a strong orientation, so this cannot fire
    if not is_strongly_connected(g, result):  # pragma: no cover
        raise NotStronglyConnected("internal error: construction failed on a bridgeless graph")
    return result


def reorient(g: MultiGraph, o: Orientation) -> MultiGraph:
    """The graph with every sign -1 edge stored in the reversed direction."""
    edges = []
    for e, s in zip(g.edges, o.signs):
        src, tgt = (e.source, e.target) if s == 1 else (e.target, e.source)
        edges.append((e.id, g.vertices[src], g.vertices[tgt]))
    return MultiGraph(g.vertices, edges)


def collapse_bridges(g: MultiGraph) -> MultiGraph:
    """Contract every bridge; the result is bridgeless with the same genus."""
    bridges = set(find_bridges(g))
    if not bridges:
        return g
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        if e.id in bridges:
            a, b = find(e.source), find(e.target)
            if a != b:
                parent[max(a, b)] = min(a, b)
    reps = sorted({find(i) for i in range(g.n_vertices)})
    labels = [g.vertices[r] for r in reps]
    edges = []
    for e in g.edges:
        if e.id in bridges:
            continue
        edges.append((e.id, g.vertices[find(e.source)], g.vertices[find(e.target)]))
    return MultiGraph(labels, edges)


# ---------------------------------------------------------------------------
# tropical canonical divisors


def canonical_divisors(g: MultiGraph) -> dict[str, dict[str, int]]:
    """Vertex coefficients of the divisors K+, K- and K = K+ + K-."""
    k_plus = {}
    k_minus = {}
    k = {}
    for i, lab in enumerate(g.vertices):
        out_v = len(g.out_edges[i])
        in_v = len(g.in_edges[i])
        k_plus[lab] = out_v - 1
        k_minus[lab] = in_v - 1
        k[lab] = out_v + in_v - 2
    return {"K_plus": k_plus, "K_minus": k_minus, "K": k}


# ---------------------------------------------------------------------------
# base vertex witness (two circuits through one vertex, or a theta subgraph)


def _directed_walk(start: int, edge_indices: Sequence[int]) -> Walk:
    return Walk(start, tuple((ei, 1) for ei in edge_indices))


def _find_directed_circuit(g: MultiGraph) -> tuple[list[int], list[int]]:
    """Deterministic directed circuit: follow lowest-index out-edges from v0."""
    v = 0
    pos = {0: 0}
    path_v = [0]
    path_e: list[int] = []
    while True:
        ei = g.out_edges[v][0]
        w = g.edges[ei].target
        path_e.append(ei)
        if w in pos:
            k = pos[w]
            return path_v[k:], path_e[k:]
        pos[w] = len(path_v)
        path_v.append(w)
        v = w


def _circuit_arc(circ_v: list[int], circ_e: list[int], a: int, b: int) -> list[int]:
    """Edges of the directed arc a -> b along the circuit (a != b)."""
    ia = circ_v.index(a)
    m = len(circ_e)
    edges = []
    i = ia
    while circ_v[(i + 1) % m] != b:
        edges.append(circ_e[i % m])
        i += 1
    edges.append(circ_e[i % m])
    return edges


def _bfs_to_set(g: MultiGraph, start: int, targets: set[int], reverse: bool) -> tuple[int, list[int]]:
    """Shortest directed path from start to the target set (or from the set to
    start when reverse), internal vertices outside the set; returns (hit, edges)."""
    adj = g.in_edges if reverse else g.out_edges
    prev: dict[int, tuple[int, int]] = {}
    seen = {start}
    queue = [start]
    hit = None
    while queue and hit is None:
        nxt = []
        for v in queue:
            for ei in adj[v]:
                e = g.edges[ei]
                w = e.source if reverse else e.target
                if w in seen:
                    continue
                seen.add(w)
                prev[w] = (v, ei)
                if w in targets:
                    hit = w
                    break
                nxt.append(w)
            if hit is not None:
                break
        queue = nxt
    if hit is None:  # pragma: no cover - strong connectivity guarantees a path
        raise NotStronglyConnected("no directed path found")
    edges = []
    v = hit
    while v != start:
        u, ei = prev[v]
        edges.append(ei)
        v = u
    edges.reverse()
    if reverse:
        edges.reverse()
    return hit, edges


def choose_base_vertex(g: MultiGraph) -> BaseVertexChoice:
    """Pick the realization base vertex with a verified witness subgraph.

    Requires the stored orientation to be strongly connected and genus >= 2.
    The search mirrors the constructive case analysis: single vertex, two
    vertices, then a directed circuit extended by detour paths.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("stored orientation is not strongly connected")
    if g.genus < 2:
        raise GenusTooSmall(f"need genus >= 2, got {g.genus}")

    choice = _choose_base_vertex_impl(g)
    _verify_choice(g, choice)
    return choice


def _choose_base_vertex_impl(g: MultiGraph) -> BaseVertexChoice:
    n = g.n_vertices
    if n == 1:
        loops = [i for i, e in enumerate(g.edges) if e.is_loop]
        return BaseVertexChoice(
            "gamma1", 0, circuits=(_directed_walk(0, [loops[0]]), _directed_walk(0, [loops[1]]))
        )

    if n == 2:
        loops_at = {0: [], 1: []}
        for i, e in enumerate(g.edges):
            if e.is_loop:
                loops_at[e.source].append(i)
        for v in (0, 1):
            if len(loops_at[v]) >= 2:
                a, b = loops_at[v][:2]
                return BaseVertexChoice(
                    "gamma1", v, circuits=(_directed_walk(v, [a]), _directed_walk(v, [b]))
                )
        forward = [i for i, e in enumerate(g.edges) if (e.source, e.target) == (0, 1)]
        backward = [i for i, e in enumerate(g.edges) if (e.source, e.target) == (1, 0)]
        all_loops = loops_at[0] + loops_at[1]
        if all_loops:
            li = min(all_loops)
            v = g.edges[li].source
            two_cycle = [forward[0], backward[0]] if v == 0 else [backward[0], forward[0]]
            return BaseVertexChoice(
                "gamma1", v, circuits=(_directed_walk(v, [li]), _directed_walk(v, two_cycle))
            )
        if len(forward) >= 2:
            v_star, v_star2 = 0, 1
            p2, p3, p1 = forward[0], forward[1], backward[0]
        else:
            v_star, v_star2 = 1, 0
            p2, p3, p1 = backward[0], backward[1], forward[0]
        return BaseVertexChoice(
            "gamma2",
            v_star,
            v_star_star=v_star2,
            paths=(
                _directed_walk(v_star2, [p1]),
                _directed_walk(v_star, [p2]),
                _directed_walk(v_star, [p3]),
            ),
        )

    circ_v, circ_e = _find_directed_circuit(g)
    on_circuit = set(circ_v)

    if len(on_circuit) == n:  # Hamiltonian circuit
        extra = min(i for i in range(g.n_edges) if i not in set(circ_e))
        e = g.edges[extra]
        if e.is_loop:
            v = e.source
            k = circ_v.index(v)
            rotated = circ_e[k:] + circ_e[:k]
            return BaseVertexChoice(
                "gamma1", v, circuits=(_directed_walk(v, rotated), _directed_walk(v, [extra]))
            )
        u, w = e.source, e.target
        arc_uw = _circuit_arc(circ_v, circ_e, u, w)
        arc_wu = _circuit_arc(circ_v, circ_e, w, u)
        return BaseVertexChoice(
            "gamma2",
            u,
            v_star_star=w,
            paths=(
                _directed_walk(w, arc_wu),
                _directed_walk(u, [extra]),
                _directed_walk(u, arc_uw),
            ),
        )

    v = min(i for i in range(n) if i not in on_circuit)
    v_prime, p_out = _bfs_to_set(g, v, on_circuit, reverse=False)  # v -> v'
    v_dprime, p_in = _bfs_to_set(g, v, on_circuit, reverse=True)  # v'' -> v

    # vertices along the two paths
    out_verts = [v]
    x = v
    for ei in p_out:
        x = g.edges[ei].target
        out_verts.append(x)
    in_verts = [v_dprime]
    x = v_dprime
    for ei in p_in:
        x = g.edges[ei].target
        in_verts.append(x)

    # last off-circuit vertex of p_out that also lies on p_in: clipping both
    # paths there makes them meet only at that vertex, so the assembled
    # subgraph is embedded (v itself always qualifies)
    common = (set(out_verts) & set(in_verts)) - on_circuit
    u = max(common, key=out_verts.index)
    ku = out_verts.index(u)
    out_clip = p_out[ku:]  # u -> v'
    kv = in_verts.index(u)
    in_clip = p_in[:kv]  # v'' -> u

    if v_prime == v_dprime:
        k = circ_v.index(v_prime)
        rotated = circ_e[k:] + circ_e[:k]
        detour = _directed_walk(v_prime, in_clip + out_clip)
        return BaseVertexChoice(
            "gamma1", v_prime, circuits=(_directed_walk(v_prime, rotated), detour)
        )

    arc_fwd = _circuit_arc(circ_v, circ_e, v_dprime, v_prime)
    arc_back = _circuit_arc(circ_v, circ_e, v_prime, v_dprime)
    return BaseVertexChoice(
        "gamma2",
        v_dprime,
        v_star_star=v_prime,
        paths=(
            _directed_walk(v_prime, arc_back),
            _directed_walk(v_dprime, in_clip + out_clip),
            _directed_walk(v_dprime, arc_fwd),
        ),
    )


def _verify_choice(g: MultiGraph, c: BaseVertexChoice) -> None:
    if c.kind == "gamma1":
        g1, g2 = c.circuits
        for w in (g1, g2):
            w.validate(g)
            if not (w.is_directed() and w.is_circuit(g) and w.start == c.v_star):
                raise RuntimeError("invalid gamma1 witness circuit")
        verts1 = set(g1.vertex_seq(g))
        verts2 = set(g2.vertex_seq(g))
        if verts1 & verts2 != {c.v_star}:
            raise RuntimeError("gamma1 circuits share more than the base vertex")
        if {ei for ei, _ in g1.steps} & {ei for ei, _ in g2.steps}:
            raise RuntimeError("gamma1 circuits share edges")
    else:
        p1, p2, p3 = c.paths
        ends = {c.v_star, c.v_star_star}
        for w, (a, b) in zip(
            (p1, p2, p3),
            ((c.v_star_star, c.v_star), (c.v_star, c.v_star_star), (c.v_star, c.v_star_star)),
        ):
            w.validate(g)
            if not (w.is_directed() and w.is_path(g) and w.start == a and w.end(g) == b):
                raise RuntimeError("invalid gamma2 witness path")
        interiors = [set(w.vertex_seq(g)) - ends for w in (p1, p2, p3)]
        if interiors[0] & interiors[1] or interiors[0] & interiors[2] or interiors[1] & interiors[2]:
            raise RuntimeError("gamma2 paths are not internally disjoint")
        edge_sets = [{ei for ei, _ in w.steps} for w in (p1, p2, p3)]
        if (
            edge_sets[0] & edge_sets[1]
            or edge_sets[0] & edge_sets[2]
            or edge_sets[1] & edge_sets[2]
        ):
            raise RuntimeError("gamma2 paths share edges")
