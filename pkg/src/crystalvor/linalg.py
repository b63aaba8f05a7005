"""Exact linear algebra over rationals (Fraction) and integers (big ints).

Vectors are tuples, matrices are lists of row tuples.  Everything here is
pure and allocation-happy; inputs are tiny (desk-scale graphs), correctness
and determinism matter more than speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vec = tuple
Mat = list


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vzero(n: int) -> Vec:
    return (Fraction(0),) * n


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(vdot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = list(zip(*b))
    return [tuple(vdot(row, col) for col in bt) for row in a]


def transpose(m: Sequence[Sequence]) -> Mat:
    return [tuple(col) for col in zip(*m)]


def identity(n: int) -> Mat:
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def rref(m: Sequence[Sequence]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with the list of pivot columns."""
    rows = [list(map(Fraction, r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows], pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence]) -> list[Vec]:
    """Deterministic rational kernel basis (one vector per free column)."""
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vec | None:
    """One exact solution of A x = b, or None if inconsistent."""
    if not a:
        return () if all(x == 0 for x in b) else None
    ncols = len(a[0])
    aug = [tuple(row) + (bv,) for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return tuple(x)


def invert(m: Sequence[Sequence]) -> Mat:
    n = len(m)
    aug = [tuple(row) + tuple(Fraction(int(i == j)) for j in range(n)) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    rows = [list(map(Fraction, r)) for r in m]
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def solve_square_int(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Solve an integer square system, returning (numerators, denominator).

    Fraction-free Bareiss elimination; returns None when A is singular.
    The solution is x_i = num_i / den with den > 0, not reduced.
    """
    n = len(a)
    rows = [list(row) + [bv] for row, bv in zip(a, b)]
    prev = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return None
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
        pc = rows[c][c]
        for i in range(c + 1, n):
            ric = rows[i][c]
            for j in range(c, n + 1):
                rows[i][j] = (pc * rows[i][j] - ric * rows[c][j]) // prev
        prev = pc
    # back substitution over fractions, then clear to one common denominator
    xs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(rows[i][n])
        for j in range(i + 1, n):
            s -= rows[i][j] * xs[j]
        xs[i] = s / rows[i][i]
    common = lcm(*[x.denominator for x in xs]) if n else 1
    return tuple(int(x * common) for x in xs), common


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    rows = [list(r) for r in m]
    prev = 1
    sign = 1
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        pc = rows[c][c]
        for i in range(c + 1, n):
            ric = rows[i][c]
            for j in range(c, n):
                rows[i][j] = (pc * rows[i][j] - ric * rows[c][j]) // prev
        prev = pc
    return sign * rows[n - 1][n - 1]


# ---------------------------------------------------------------------------
# integer lattice tools


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Canonical row-style HNF basis of the lattice spanned by integer rows.

    Pivots positive, entries above each pivot reduced into [0, pivot);
    zero rows dropped.  Unique for a given lattice, so safe to compare.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    r = 0
    for c in range(ncols):
        pool = [row for row in work if row[c] != 0]
        if not pool:
            continue
        # gcd column reduction among rows with nonzero entry in column c
        while True:
            pool.sort(key=lambda row: abs(row[c]))
            piv = pool[0]
            rest = pool[1:]
            done = True
            for row in rest:
                q = row[c] // piv[c]
                if q:
                    for j in range(ncols):
                        row[j] -= q * piv[j]
            pool = [piv] + [row for row in rest if row[c] != 0]
            if len(pool) == 1:
                break
        piv = pool[0]
        if piv[c] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        basis.append(piv)
        work = [row for row in work if row is not piv and any(row)]
        r += 1
    # reduce above-pivot entries
    for i in range(len(basis) - 1, -1, -1):
        c = next(j for j in range(ncols) if basis[i][j] != 0)
        for k in range(i):
            q = basis[k][c] // basis[i][c]
            if q:
                for j in range(ncols):
                    basis[k][j] -= q * basis[i][j]
    return [tuple(row) for row in basis]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Mat, Mat, Mat]:
    """(U, D, V) with U A V = D diagonal, U and V unimodular."""
    d = [list(row) for row in a]
    nr = len(d)
    nc = len(d[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < min(nr, nc):
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        dirty = False
        for i in range(k + 1, nr):
            q = d[i][k] // d[k][k]
            if q:
                row_op(i, k, q)
            if d[i][k] != 0:
                dirty = True
        for j in range(k + 1, nc):
            q = d[k][j] // d[k][k]
            if q:
                col_op(j, k, q)
            if d[k][j] != 0:
                dirty = True
        if dirty:
            continue
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    return ([tuple(r) for r in u], [tuple(r) for r in d], [tuple(r) for r in v])


def integer_kernel(a: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """HNF-canonical basis of {x integer : A x = 0}."""
    if not a:
        return []
    nc = len(a[0])
    _, d, v = smith_normal_form(a)
    diag = [d[i][i] if i < len(d) else 0 for i in range(nc)]
    cols = [tuple(v[r][i] for r in range(nc)) for i in range(nc) if diag[i] == 0]
    return hermite_normal_form(cols)


def lattice_coords_in_basis(x: Sequence, basis: Sequence[Sequence]) -> tuple[int, ...] | None:
    """Integer coordinates of x in the given independent basis, else None."""
    if not basis:
        return () if is_zero(x) else None
    sol = solve(transpose(basis), x)
    if sol is None:
        return None
    # the solve picks free coords 0; uniqueness needs independence, which the
    # callers guarantee -- verify the reconstruction to be safe
    if tuple(vdot(sol, col) for col in zip(*basis)) != tuple(map(Fraction, x)):
        return None
    if any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)
