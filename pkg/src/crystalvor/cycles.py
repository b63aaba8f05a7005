"""Enumeration of elementary cycles and strongly connected orientations.

An elementary cycle is an integer chain with entries in {-1, 0, +1}, zero
boundary, whose support is a single circuit of the underlying graph.  Both
signs of every circuit are enumerated.  The backtracking works directly on
the multigraph, so parallel edges and loops need no preprocessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BridgeExists, NotACycle, NotUnitCoefficients, TooLarge
from .graphs import MultiGraph, Orientation, find_bridges, is_strongly_connected

DEFAULT_CIRCUIT_GUARD = 10**5
DEFAULT_ORIENTATION_GUARD = 24


@dataclass(frozen=True)
class ElementaryCycle:
    """A signed circuit together with its edge partition."""

    chain: tuple[int, ...]
    plus: tuple[str, ...]
    zero: tuple[str, ...]
    minus: tuple[str, ...]

    @property
    def plus_count(self) -> int:
        return len(self.plus)

    @property
    def minus_count(self) -> int:
        return len(self.minus)

    @property
    def norm1(self) -> int:
        return len(self.plus) + len(self.minus)

    def negated(self) -> "ElementaryCycle":
        return ElementaryCycle(
            chain=tuple(-c for c in self.chain),
            plus=self.minus,
            zero=self.zero,
            minus=self.plus,
        )

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.chain) if c)


def _partition(g: MultiGraph, chain) -> tuple[tuple, tuple, tuple]:
    plus, zero, minus = [], [], []
    for e, c in zip(g.edges, chain):
        (plus if c > 0 else minus if c < 0 else zero).append(e.id)
    return tuple(plus), tuple(zero), tuple(minus)


def _support_cycle_rank(g: MultiGraph, support: list[int]) -> int:
    """dim H1 of the spanning subgraph on the support edges."""
    if not support:
        return 0
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
            parent[max(a, b)] = min(a, b)
            comps -= 1
    return len(support) - g.n_vertices + comps


def cycle_parts(g: MultiGraph, chain) -> ElementaryCycle:
    """Validate a chain as an elementary cycle and split it into parts."""
    ints = []
    for c in chain:
        f = Fraction(c)
        if f.denominator != 1 or f not in (-1, 0, 1):
            raise NotUnitCoefficients("coefficients must be -1, 0 or +1")
        ints.append(int(f))
    total = [0] * g.n_vertices
    for e, c in zip(g.edges, ints):
        total[e.source] += c
        total[e.target] -= c
    if any(total):
        raise NotACycle("chain has nonzero boundary")
    support = [i for i, c in enumerate(ints) if c]
    if not support or _support_cycle_rank(g, support) != 1:
        raise NotACycle("support is not a single circuit")
    plus, zero, minus = _partition(g, ints)
    return ElementaryCycle(tuple(ints), plus, zero, minus)


def _circuits(g: MultiGraph, guard: int):
    """Yield one signed chain per undirected circuit (canonical traversal)."""
    count = 0
    for i, e in enumerate(g.edges):
        if e.is_loop:
            count += 1
            if count > guard:
                raise TooLarge(f"more than {guard} circuits")
            chain = [0] * g.n_edges
            chain[i] = 1
            yield tuple(chain)

    n = g.n_vertices
    for root in range(n):
        # vertex-simple closed walks rooted at their lowest vertex; the two
        # traversal directions are deduplicated by first edge < last edge
        first_candidates = [
            ei for ei in g.incident[root] if not g.edges[ei].is_loop
        ]
        for first in first_candidates:
            e0 = g.edges[first]
            w0 = e0.target if e0.source == root else e0.source
            if w0 < root:
                continue
            stack = [(w0, [first], {root, w0})]
            while stack:
                v, used, seen = stack.pop()
                for ei in reversed(g.incident[v]):
                    e = g.edges[ei]
                    if e.is_loop or ei in used:
                        continue
                    w = e.target if e.source == v else e.source
                    if w == root:
                        if ei > first:
                            count += 1
                            if count > guard:
                                raise TooLarge(f"more than {guard} circuits")
                            chain = [0] * g.n_edges
                            walk_v = root
                            for ej in used + [ei]:
                                er = g.edges[ej]
                                if er.source == walk_v:
                                    chain[ej] = 1
                                    walk_v = er.target
                                else:
                                    chain[ej] = -1
                                    walk_v = er.source
                            yield tuple(chain)
                    elif w > root and w not in seen:
                        stack.append((w, used + [ei], seen | {w}))


def enumerate_elementary_cycles(
    g: MultiGraph, guard: int = DEFAULT_CIRCUIT_GUARD
) -> list[ElementaryCycle]:
    """All elementary cycles, both signs, in canonical order."""
    out = []
    for chain in _circuits(g, guard):
        plus, zero, minus = _partition(g, chain)
        cyc = ElementaryCycle(chain, plus, zero, minus)
        out.append(cyc)
        out.append(cyc.negated())
    out.sort(key=lambda c: (c.support(), c.chain))
    return out


def enumerate_strong_orientations(
    g: MultiGraph, guard: int = DEFAULT_ORIENTATION_GUARD
) -> list[Orientation]:
    """Every sign vector whose re-orientation is strongly connected."""
    bridges = find_bridges(g)
    if bridges:
        raise BridgeExists(bridges)
    m = g.n_edges
    if m > guard:
        raise TooLarge(f"2^{m} orientations exceeds the 2^{guard} scan guard")
    out = []
    signs = [1] * m
    loops = [e.is_loop for e in g.edges]
    nonloop = [i for i in range(m) if not loops[i]]

    # strong connectivity ignores loops, so cache verdicts per non-loop part
    cache: dict[tuple[int, ...], bool] = {}

    def scan(i: int):
        if i == m:
            key = tuple(signs[j] for j in nonloop)
            ok = cache.get(key)
            if ok is None:
                ok = is_strongly_connected(g, Orientation(tuple(signs)))
                cache[key] = ok
            if ok:
                out.append(Orientation(tuple(signs)))
            return
        for s in (1, -1):
            signs[i] = s
            scan(i + 1)
        signs[i] = 1

    scan(0)
    return out


def l1_ball_vertices(g: MultiGraph, guard: int = DEFAULT_CIRCUIT_GUARD):
    """Vertices of the l1 unit ball of the cycle space: cycle / cycle 1-norm."""
    out = []
    for cyc in enumerate_elementary_cycles(g, guard):
        norm = cyc.norm1
        if norm != sum(c * c for c in cyc.chain):  # pragma: no cover
            raise AssertionError("1-norm / self-pairing mismatch on a unit cycle")
        out.append((cyc, tuple(Fraction(c, norm) for c in cyc.chain)))
    return out
