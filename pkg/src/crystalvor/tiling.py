"""Lattice Voronoi tilings and the clip-and-witness segment verifier.

The canonical cell is stored with absolute halfspaces (normal . x <= offset);
the translate by a lattice vector h shifts every offset by normal . h.
Points are reduced into the tiling by exact closest-vector search over the
LDL sum-of-squares form of the Gram matrix; no floating point anywhere.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg, polytope
from .errors import NotInCell

Chain = tuple


def _nearest_int(t: Fraction) -> int:
    return int((2 * Fraction(t) + 1) // 2)  # floor(t + 1/2)


def _ints_within(t: Fraction, bound: Fraction) -> list[int]:
    """All integers n with (n - t)^2 <= bound; (n-t)^2 is unimodal in n."""
    if bound < 0:
        return []
    c = _nearest_int(t)
    out = []
    n = c
    while (n - t) ** 2 <= bound:
        out.append(n)
        n -= 1
    n = c + 1
    while (n - t) ** 2 <= bound:
        out.append(n)
        n += 1
    out.sort()
    return out


@lru_cache(maxsize=64)
def _ldl(gram) -> tuple[tuple, tuple]:
    """G = L D L^T with unit lower L; turns the form into a sum of squares.

    With y_i = x_i + sum_{j>i} L[j][i] x_j the form is sum_i d_i y_i^2, so
    enumeration from the last coordinate down prunes on exact partial sums.
    """
    r = len(gram)
    d = [Fraction(0)] * r
    low = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        low[i][i] = Fraction(1)
        d[i] = Fraction(gram[i][i]) - sum(d[k] * low[i][k] * low[i][k] for k in range(i))
        for j in range(i + 1, r):
            s = Fraction(gram[j][i]) - sum(d[k] * low[j][k] * low[i][k] for k in range(i))
            low[j][i] = s / d[i]
    return tuple(d), tuple(tuple(row) for row in low)


def closest_lattice_coords(gram, gram_inv, t) -> tuple[int, ...]:
    """Closest lattice point to the point with basis coordinates t.

    Exact branch-and-bound on the LDL sum-of-squares form, tightening the
    budget as better candidates appear.  Among distance ties the shortest
    translate wins (so points already in the canonical cell keep h = 0),
    then the lexicographically smallest coordinate vector.
    """
    r = len(t)
    if r == 0:
        return ()
    gram = tuple(tuple(map(Fraction, row)) for row in gram)
    diag, low = _ldl(gram)

    def qnorm(v) -> Fraction:
        return Fraction(linalg.vdot(v, linalg.mat_vec(gram, v)))

    n0 = tuple(_nearest_int(x) for x in t)
    best_dist = qnorm(linalg.vsub(n0, t))
    if best_dist == 0:
        return n0
    best = (best_dist, qnorm(n0), n0)

    xs = [0] * r  # candidate coordinates, filled from the last level down

    def search(i: int, partial: Fraction) -> None:
        nonlocal best, best_dist
        if i < 0:
            cand = tuple(xs)
            key = (partial, qnorm(cand), cand)
            if key < best:
                best = key
                best_dist = partial
            return
        # y_i = (x_i - t_i) + sum_{j>i} low[j][i] (x_j - t_j)
        shift = sum(low[j][i] * (xs[j] - t[j]) for j in range(i + 1, r))
        budget = best_dist - partial
        if budget < 0:
            return
        for n in _ints_within(t[i] - shift, budget / diag[i]):
            xs[i] = n
            y = n - t[i] + shift
            search(i - 1, partial + diag[i] * y * y)

    search(r - 1, Fraction(0))
    return best[2]


@dataclass(frozen=True)
class VoronoiTiling:
    """Voronoi tiling of a full-rank lattice inside its span.

    `halfspaces` describe the canonical cell in absolute form; `lattice` is a
    basis given as chains of the ambient space, `center` the canonical cell
    center.
    """

    lattice: tuple[Chain, ...]
    gram: tuple[tuple, ...]
    gram_inv: tuple[tuple, ...]
    center: Chain
    halfspaces: tuple[tuple[Chain, Fraction], ...]  # (normal chain, offset)
    dim: int

    def lattice_chain(self, coords) -> Chain:
        out = [Fraction(0)] * len(self.center)
        for c, vec in zip(coords, self.lattice):
            if c:
                for j, v in enumerate(vec):
                    out[j] += c * Fraction(v)
        return tuple(out)

    def span_coords(self, x: Chain) -> tuple[Fraction, ...]:
        """Coordinates of x in the lattice basis (x must lie in the span)."""
        pair = tuple(Fraction(linalg.vdot(b, x)) for b in self.lattice)
        return tuple(linalg.vdot(row, pair) for row in self.gram_inv)

    def reduce(self, x: Chain) -> tuple[tuple[int, ...], Chain, Chain]:
        """(h coords, h chain, y = x - h) with y inside the canonical cell."""
        t = self.span_coords(linalg.vsub(x, self.center))
        h = closest_lattice_coords(self.gram, self.gram_inv, t)
        h_chain = self.lattice_chain(h)
        y = linalg.vsub(x, h_chain)
        if not all(polytope.evaluate(n, o, y) >= 0 for n, o in self.halfspaces):
            raise NotInCell("reduced point escapes the canonical cell")
        return h, h_chain, y

    def translate_halfspaces(self, h_chain: Chain):
        return [
            (n, o + Fraction(linalg.vdot(n, h_chain))) for n, o in self.halfspaces
        ]


@dataclass(frozen=True)
class SegmentCheck:
    """Outcome for one crystal segment clipped to one cell translate."""

    edge: str
    translate: tuple[int, ...]
    a: Chain  # clipped endpoints, shifted into the canonical cell
    b: Chain
    witness: Chain | None  # facet normal tight on the whole clip
    witness_offset: Fraction | None
    face_dim: int | None
    ok: bool


def _check_segment(tiling: VoronoiTiling, seg) -> list[SegmentCheck]:
    a, b, edge = seg
    if a == b:
        h, h_chain, y = tiling.reduce(a)
        tight = polytope.tight_indices(tiling.halfspaces, y)
        fd = polytope.face_dimension_of(tiling.halfspaces, tiling.dim, [y])
        if tight:
            n, o = tiling.halfspaces[tight[0]]
            return [SegmentCheck(edge, h, y, y, n, o, fd, True)]
        return [SegmentCheck(edge, h, y, y, None, None, None, False)]

    direction = linalg.vsub(b, a)

    def at(s: Fraction) -> Chain:
        return linalg.vadd(a, linalg.vscale(s, direction))

    covered: list[tuple[Fraction, Fraction, tuple[int, ...], Chain]] = []
    while True:
        gap = _first_gap(covered)
        if gap is None:
            break
        s = (gap[0] + gap[1]) / 2
        h, h_chain, _ = tiling.reduce(at(s))
        clip = polytope.clip_segment(tiling.translate_halfspaces(h_chain), a, b)
        if clip is None or not (clip[0] <= s <= clip[1]):  # pragma: no cover
            raise AssertionError("reduction landed outside its own cell clip")
        covered.append((clip[0], clip[1], h, h_chain))
        covered.sort(key=lambda iv: (iv[0], iv[1]))

    rows = []
    for lo, hi, h, h_chain in covered:
        if lo == hi:
            continue  # grazing contact at a single point, covered by neighbors
        pa = linalg.vsub(at(lo), h_chain)
        pb = linalg.vsub(at(hi), h_chain)
        mid = linalg.vsub(at((lo + hi) / 2), h_chain)
        tight = polytope.tight_indices(tiling.halfspaces, mid)
        if not tight:
            rows.append(SegmentCheck(edge, h, pa, pb, None, None, None, False))
            continue
        n, o = tiling.halfspaces[tight[0]]
        # a supporting halfspace tight at the midpoint is tight on the clip
        if polytope.evaluate(n, o, pa) != 0 or polytope.evaluate(n, o, pb) != 0:
            raise AssertionError("midpoint-tight facet not tight at clip endpoints")
        fd = polytope.face_dimension_of(tiling.halfspaces, tiling.dim, [pa, pb])
        rows.append(SegmentCheck(edge, h, pa, pb, n, o, fd, True))
    return rows


def _first_gap(covered) -> tuple[Fraction, Fraction] | None:
    """Leftmost maximal uncovered open subinterval of [0, 1]."""
    pos = Fraction(0)
    for lo, hi, _, _ in covered:
        if lo > pos:
            return (pos, lo)
        pos = max(pos, hi)
    if pos < 1:
        return (pos, Fraction(1))
    return None


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CRYSTALVOR_THREADS", "1")))
    except ValueError:
        return 1


def verify_segments(tiling: VoronoiTiling, segments) -> tuple[list[SegmentCheck], bool, int]:
    """Clip every segment against every touched cell translate and witness it.

    Returns (per-clip rows in deterministic order, all ok, max face dim).
    """
    segments = list(segments)
    workers = worker_count()
    if workers > 1 and len(segments) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _check_segment(tiling, s), segments))
    else:
        results = [_check_segment(tiling, s) for s in segments]
    rows = [row for group in results for row in group]
    ok = all(r.ok for r in rows)
    r_max = max((r.face_dim for r in rows if r.face_dim is not None), default=0)
    return rows, ok, r_max
