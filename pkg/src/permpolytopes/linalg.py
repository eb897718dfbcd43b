"""Exact rational and integer linear algebra.

Everything runs over ``fractions.Fraction`` (or plain ints for the Smith
normal form); no floating point anywhere.  Subspaces are canonicalized as
reduced row echelon bases so that equality of subspaces is equality of
bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import DimensionMismatchError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vscale(s: Fraction, a: Vec) -> Vec:
    return tuple(s * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def canonical_subspace_basis(rows: Sequence[Sequence[Fraction]]) -> Mat:
    """RREF basis of the row span; equal subspaces give identical bases."""
    reduced, pivots = rref(rows)
    return mat(reduced[: len(pivots)])


def rank_nullspace(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None,
                   ) -> tuple[int, Mat]:
    """Rank and a canonical (RREF) basis of the right null space.

    rank + len(basis) == number of columns.
    """
    rows = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][fc]
        basis.append(v)
    return len(pivots), canonical_subspace_basis(basis) if basis else ()


@dataclass(frozen=True)
class Infeasible:
    """Certificate y with y @ M == 0 but y . b != 0."""

    certificate: Vec


def solve(rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """One exact solution of M x = b, or an :class:`Infeasible` certificate.

    Free variables are set to zero (first-pivot convention).
    """
    m = [list(map(Fraction, r)) for r in rows]
    rhs = [Fraction(x) for x in b]
    if len(m) != len(rhs):
        raise DimensionMismatchError("row count does not match rhs length")
    if not m:
        return ()
    ncols = len(m[0])
    nrows = len(m)
    # carry a transform matrix so an inconsistent row yields its certificate
    transform = [[ONE if i == j else ZERO for j in range(nrows)] for i in range(nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        rhs[r], rhs[pivot_row] = rhs[pivot_row], rhs[r]
        transform[r], transform[pivot_row] = transform[pivot_row], transform[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        rhs[r] /= pv
        transform[r] = [x / pv for x in transform[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                rhs[i] -= f * rhs[r]
                transform[i] = [x - f * y for x, y in zip(transform[i], transform[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rhs[i] != 0:
            return Infeasible(vec(transform[i]))
    x = [ZERO] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rhs[i]
    return vec(x)


# -- Smith normal form --------------------------------------------------------

def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... of an integer matrix.

    Returns min(m, n) nonnegative divisors (zeros trailing when the rank is
    deficient).
    """
    m = [[int(x) for x in r] for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    divisors: list[int] = []

    def smallest_nonzero(t: int):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        pos = smallest_nonzero(t)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            m[t], m[i0] = m[i0], m[t]
            for row in m:
                row[t], row[j0] = row[j0], row[t]
            p = m[t][t]
            done = True
            for i in range(t + 1, nrows):
                if m[i][t] % p != 0:
                    done = False
                q = m[i][t] // p
                m[i] = [x - q * y for x, y in zip(m[i], m[t])]
            for j in range(t + 1, ncols):
                if m[t][j] % p != 0:
                    done = False
                q = m[t][j] // p
                for row in m:
                    row[j] -= q * row[t]
            if done and all(m[i][t] == 0 for i in range(t + 1, nrows)) \
                    and all(m[t][j] == 0 for j in range(t + 1, ncols)):
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, nrows)
                            for j in range(t + 1, ncols) if m[i][j] % p != 0), None)
                if bad is None:
                    break
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
            pos = smallest_nonzero(t)
        divisors.append(abs(m[t][t]))
        t += 1
    divisors += [0] * (min(nrows, ncols) - len(divisors))
    return divisors


# -- affine coordinates --------------------------------------------------------

@dataclass(frozen=True)
class AffineChart:
    """Exact affine coordinates on the hull of a point set.

    ``coords[i]`` are the coordinates of point i; the chart maps
    x -> left_inverse @ (x - origin) and is injective on the affine hull.
    The basis consists of actual difference vectors of the input points, so
    integer inputs keep their difference lattice inside the chart's lattice.
    """

    coords: Mat
    basis: Mat          # d rows, each an ambient difference vector
    origin: Vec
    left_inverse: Mat   # d x N with left_inverse @ basis^T = identity

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_chart(self, point: Sequence[Fraction]) -> Vec:
        d = vsub(vec(point), self.origin)
        return tuple(dot(row, d) for row in self.left_inverse)

    def pull_back_functional(self, c: Vec, delta: Fraction) -> tuple[Vec, Fraction]:
        """Ambient (c', delta') with c'.x = c.chart(x) + <const> on the hull."""
        n = len(self.origin)
        c_amb = tuple(
            sum((c[k] * self.left_inverse[k][j] for k in range(self.dim)), ZERO)
            for j in range(n)
        )
        return c_amb, delta + dot(c_amb, self.origin)


def affine_chart(points: Sequence[Sequence[Fraction]]) -> AffineChart:
    """Build exact affine coordinates for a nonempty point sequence."""
    pts = mat(points)
    if not pts:
        raise ValueError("at least one point required")
    origin = pts[0]
    n = len(origin)
    basis: list[Vec] = []
    for p in pts[1:]:
        d = vsub(p, origin)
        if rank(basis + [d]) > len(basis):
            basis.append(d)
    dim = len(basis)
    if dim == 0:
        return AffineChart(tuple(() for _ in pts), (), origin, ())
    # left inverse: row k solves basis_j . y = delta_jk, so y recovers the
    # k-th coordinate of any vector in the span of the basis
    left = []
    for k in range(dim):
        e = [ONE if i == k else ZERO for i in range(dim)]
        row = solve(basis, e)
        assert not isinstance(row, Infeasible)
        left.append(row)
    chart = AffineChart((), mat(basis), origin, mat(left))
    coords = tuple(chart.to_chart(p) for p in pts)
    return AffineChart(coords, chart.basis, origin, chart.left_inverse)


def normalize_integer_functional(c: Vec, delta: Fraction) -> tuple[tuple[int, ...], int]:
    """Scale (c, delta) by a positive rational to integral entries with content 1."""
    entries = list(c) + [delta]
    denom = 1
    for x in entries:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in entries]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


# -- exact simplex -------------------------------------------------------------

def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int):
    pv = tableau[row][col]
    tableau[row] = [x / pv for x in tableau[row]]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            f = tableau[i][col]
            tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[row])]
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Maximize with Bland's anti-cycling rule; objective row is last."""
    while True:
        obj = tableau[-1]
        col = next((j for j in range(ncols) if obj[j] > 0), None)
        if col is None:
            return "optimal"
        best_row = None
        best_ratio = None
        for i in range(len(tableau) - 1):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_ratio, best_row = ratio, i
        if best_row is None:
            return "unbounded"
        _pivot(tableau, basis, best_row, col)


def lp_maximize(objective: Sequence[Fraction],
                a_eq: Sequence[Sequence[Fraction]] = (),
                b_eq: Sequence[Fraction] = (),
                a_ub: Sequence[Sequence[Fraction]] = (),
                b_ub: Sequence[Fraction] = ()):
    """Maximize c.x over free variables subject to A_eq x = b_eq, A_ub x <= b_ub.

    Returns (status, x, value) with status in {"optimal", "infeasible",
    "unbounded"}; x is None unless optimal.  Two-phase dense simplex with
    Bland's rule, fully deterministic.
    """
    nfree = len(objective)
    nslack = len(a_ub)
    rows = [list(map(Fraction, r)) + [ZERO] * nslack for r in a_eq]
    rhs = [Fraction(x) for x in b_eq]
    for k, r in enumerate(a_ub):
        row = list(map(Fraction, r)) + [ZERO] * nslack
        row[nfree + k] = ONE
        rows.append(row)
        rhs.append(Fraction(b_ub[k]))
    # split free variables x = u - v, then append slack block unchanged
    def split(row):
        return [x for pair in ((c, -c) for c in row[:nfree]) for x in pair] + row[nfree:]

    rows = [split(r) for r in rows]
    ncore = 2 * nfree + nslack
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: artificials on every row
    ncols = ncore + m
    tableau = []
    basis = []
    for i in range(m):
        row = rows[i] + [ZERO] * m + [rhs[i]]
        row[ncore + i] = ONE
        tableau.append(row)
        basis.append(ncore + i)
    obj1 = [ZERO] * ncols + [ZERO]
    for j in range(ncore, ncols):
        obj1[j] = -ONE
    tableau.append(obj1)
    for i in range(m):
        tableau[-1] = [x + y for x, y in zip(tableau[-1], tableau[i])]
    status = _run_simplex(tableau, basis, ncols)
    assert status == "optimal"  # phase 1 is bounded above by 0
    if tableau[-1][-1] != 0:
        return "infeasible", None, None
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= ncore:
            col = next((j for j in range(ncore) if tableau[i][j] != 0), None)
            if col is None:
                del tableau[i], basis[i]
                continue
            _pivot(tableau, basis, i, col)
        i += 1
    # phase 2
    tableau = [row[:ncore] + [row[-1]] for row in tableau[:-1]]
    obj_free = [Fraction(x) for x in objective]
    obj2 = [x for pair in ((c, -c) for c in obj_free) for x in pair] \
        + [ZERO] * nslack + [ZERO]
    tableau.append(obj2)
    for i, bi in enumerate(basis):
        if tableau[-1][bi] != 0:
            f = tableau[-1][bi]
            tableau[-1] = [x - f * y for x, y in zip(tableau[-1], tableau[i])]
    status = _run_simplex(tableau, basis, ncore)
    if status != "optimal":
        return status, None, None
    xsplit = [ZERO] * ncore
    for i, bi in enumerate(basis):
        xsplit[bi] = tableau[i][-1]
    x = tuple(xsplit[2 * k] - xsplit[2 * k + 1] for k in range(nfree))
    return "optimal", x, dot(vec(obj_free), x)


def separating_functional(points: Sequence[Sequence[Fraction]],
                          inside: Sequence[int], outside: Sequence[int],
                          ) -> Optional[tuple[tuple[int, ...], int]]:
    """Exact supporting functional that is tight on ``inside`` and strictly
    below on ``outside``.

    Returns integral content-1 ``(c, delta)`` with c.x = delta on inside
    points and c.x < delta on outside points, or None if no such functional
    exists.  Deterministic: the LP maximizes the separation margin with
    Bland pivoting in exact affine coordinates of the point set.
    """
    inside = list(inside)
    outside = list(outside)
    if set(inside) & set(outside):
        raise ValueError("inside and outside must be disjoint")
    if not inside and not outside:
        raise ValueError("need at least one point index")
    pts = mat(points)
    chart = affine_chart(pts)
    d = chart.dim
    # variables: c_1..c_d, delta, s ; maximize s
    nv = d + 2
    a_eq = [list(chart.coords[i]) + [-ONE, ZERO] for i in inside]
    b_eq = [ZERO] * len(inside)
    a_ub = [list(chart.coords[j]) + [-ONE, ONE] for j in outside]
    b_ub = [ZERO] * len(outside)
    a_ub.append([ZERO] * d + [ZERO, ONE])  # s <= 1
    b_ub.append(ONE)
    objective = [ZERO] * (d + 1) + [ONE]
    status, x, value = lp_maximize(objective, a_eq, b_eq, a_ub, b_ub)
    assert status == "optimal", status  # feasible (all zeros) and bounded by 1
    if value <= 0:
        return None
    c_chart, delta_chart = vec(x[:d]), x[d]
    c_amb, delta_amb = chart.pull_back_functional(c_chart, delta_chart)
    c_int, delta_int = normalize_integer_functional(c_amb, delta_amb)
    for i in inside:
        assert dot(vec(c_int), pts[i]) == delta_int
    for j in outside:
        assert dot(vec(c_int), pts[j]) < delta_int
    return c_int, delta_int
