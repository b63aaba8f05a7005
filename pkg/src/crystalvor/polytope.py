"""Convex polytope helpers in exact rational coordinates.

A polytope is handled as a pair (halfspaces, vertices) in some rational
coordinate frame: halfspaces are (normal, offset) with the constraint
normal . x <= offset, vertices are coordinate tuples.  The helpers never
convert between representations in general; the brute-force vertex
enumeration exists as an oracle for tests and for low-rank lattice cells.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial, lcm

from . import linalg

HalfspaceRow = tuple  # (normal tuple, offset)


def evaluate(normal, offset, x) -> Fraction:
    """Slack offset - normal . x (negative means violated)."""
    return Fraction(offset) - Fraction(linalg.vdot(normal, x))


def satisfies_all(halfspaces, x) -> bool:
    return all(evaluate(n, o, x) >= 0 for n, o in halfspaces)


def tight_indices(halfspaces, x) -> list[int]:
    return [i for i, (n, o) in enumerate(halfspaces) if evaluate(n, o, x) == 0]


def affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return linalg.rank([linalg.vsub(p, base) for p in points[1:]])


def common_tight_normals(halfspaces, points) -> list:
    idx = set(tight_indices(halfspaces, points[0]))
    for p in points[1:]:
        idx &= set(tight_indices(halfspaces, p))
    return [halfspaces[i][0] for i in sorted(idx)]


def face_dimension_of(halfspaces, dim, points) -> int:
    """Dimension of the smallest face containing all the points."""
    normals = common_tight_normals(halfspaces, points)
    return dim - linalg.rank(normals) if normals else dim


def _integerized(halfspaces):
    rows = []
    for n, o in halfspaces:
        den = lcm(*[Fraction(v).denominator for v in (*n, o)])
        rows.append((tuple(int(Fraction(v) * den) for v in n), int(Fraction(o) * den)))
    return rows


def vertices_from_halfspaces(halfspaces, dim) -> list[tuple]:
    """Brute-force vertex enumeration: solve every dim-subset, keep feasible.

    Exact and independent of any structural shortcut, so it doubles as the
    test oracle for the orientation-based vertex construction.
    """
    rows = _integerized(halfspaces)
    found = set()
    for subset in combinations(range(len(rows)), dim):
        a = [rows[i][0] for i in subset]
        b = [rows[i][1] for i in subset]
        sol = linalg.solve_square_int(a, b)
        if sol is None:
            continue
        num, den = sol
        ok = True
        for n, o in rows:
            if sum(ni * xi for ni, xi in zip(n, num)) > o * den:
                ok = False
                break
        if ok:
            found.add(tuple(Fraction(x, den) for x in num))
    return sorted(found)


def is_centrally_symmetric(vertices, center) -> bool:
    vs = set(map(tuple, vertices))
    double = linalg.vscale(2, center)
    return all(linalg.vsub(double, v) in vs for v in vs)


def facet_vertex_sets(halfspaces, vertices, dim) -> list[frozenset]:
    """Vertex index sets of the true facets, one per irredundant halfspace."""
    out = []
    for n, o in halfspaces:
        tight = frozenset(i for i, v in enumerate(vertices) if evaluate(n, o, v) == 0)
        if tight and affine_rank([vertices[i] for i in tight]) == dim - 1:
            out.append(tight)
    return out


def all_halfspaces_are_facets(halfspaces, vertices, dim) -> bool:
    return len(facet_vertex_sets(halfspaces, vertices, dim)) == len(halfspaces)


def _subfaces(halfspaces, vertices, face: frozenset, d: int) -> list[frozenset]:
    subs = set()
    for n, o in halfspaces:
        tight = frozenset(i for i in face if evaluate(n, o, vertices[i]) == 0)
        if tight and tight != face:
            if affine_rank([vertices[i] for i in tight]) == d - 1:
                subs.add(tight)
    return sorted(subs, key=sorted)


def _int_rank_at_least(rows, need: int) -> bool:
    """Early-exit rank test on integer rows (fraction-free elimination)."""
    if need <= 0:
        return True
    basis: list[tuple[int, list[int]]] = []  # (pivot column, row)
    for r in rows:
        r = list(r)
        for p, b in basis:
            if r[p]:
                rp, bp = r[p], b[p]
                r = [bp * x - rp * y for x, y in zip(r, b)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is not None:
            basis.append((piv, r))
            if len(basis) >= need:
                return True
    return False


def triangulate(halfspaces, vertices, dim) -> list[tuple[int, ...]]:
    """Simplices (vertex index tuples) triangulating the polytope.

    Pyramids over recursively triangulated facets, apex at the lowest vertex
    index of each face; faces are memoized so shared ridges are triangulated
    once.  Tight sets are precomputed per halfspace, and face dimensions are
    tested over integers (a slice of a d-face by a supporting hyperplane has
    dimension at most d-1, so an at-least test is enough).
    """
    den = lcm(*[Fraction(x).denominator for v in vertices for x in v]) if vertices else 1
    ivert = [tuple(int(Fraction(x) * den) for x in v) for v in vertices]
    tights = [
        frozenset(i for i, v in enumerate(vertices) if evaluate(n, o, v) == 0)
        for n, o in halfspaces
    ]

    dim_cache: dict[tuple[frozenset, int], bool] = {}

    def has_dim(face: frozenset, d: int) -> bool:
        got = dim_cache.get((face, d))
        if got is None:
            idx = sorted(face)
            base = ivert[idx[0]]
            rows = [linalg.vsub(ivert[i], base) for i in idx[1:]]
            got = _int_rank_at_least(rows, d)
            dim_cache[(face, d)] = got
        return got

    memo: dict[frozenset, list[tuple[int, ...]]] = {}

    def tri(face: frozenset, d: int) -> list[tuple[int, ...]]:
        if len(face) == d + 1:
            return [tuple(sorted(face))]
        got = memo.get(face)
        if got is not None:
            return got
        apex = min(face)
        seen = set()
        simplices = []
        for t in tights:
            sub = face & t
            if not sub or sub == face or apex in sub or sub in seen:
                continue
            seen.add(sub)
            if not has_dim(sub, d - 1):
                continue
            for s in tri(sub, d - 1):
                simplices.append((apex,) + s)
        memo[face] = simplices
        return simplices

    return tri(frozenset(range(len(vertices))), dim)


def volume(halfspaces, vertices, dim) -> Fraction:
    """Exact volume in the current coordinates, by triangulation.

    Vertices are scaled to integers once (a single common denominator), so
    each simplex determinant runs fraction-free.
    """
    if dim == 0:
        return Fraction(1)
    den = lcm(*[Fraction(x).denominator for v in vertices for x in v])
    ivert = [tuple(int(Fraction(x) * den) for x in v) for v in vertices]
    total = 0
    for simplex in triangulate(halfspaces, vertices, dim):
        base = ivert[simplex[0]]
        rows = [[a - b for a, b in zip(ivert[i], base)] for i in simplex[1:]]
        total += abs(linalg.int_det(rows))
    return Fraction(total, den**dim * factorial(dim))


def clip_segment(halfspaces, a, b) -> tuple[Fraction, Fraction] | None:
    """Parameter interval of {a + s (b - a), 0 <= s <= 1} inside the polytope."""
    lo, hi = Fraction(0), Fraction(1)
    d = linalg.vsub(b, a)
    for n, o in halfspaces:
        c0 = evaluate(n, o, a)  # allowed slack at s = 0
        c1 = Fraction(linalg.vdot(n, d))
        if c1 > 0:
            hi = min(hi, c0 / c1)
        elif c1 < 0:
            lo = max(lo, c0 / c1)
        elif c0 < 0:
            return None
    if lo > hi:
        return None
    return lo, hi
