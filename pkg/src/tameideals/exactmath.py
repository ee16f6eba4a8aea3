"""Exact integer/rational linear algebra and rational feasibility.

Everything here works over :class:`fractions.Fraction` and Python integers.
numpy appears only as a fast *exact* screen for integer dot products (int64,
guarded against overflow); no floating point value ever decides a verdict.

The LP kernel is a phase-one simplex with Bland's rule.  It either returns a
nonnegative solution of ``A x = b`` or a Farkas certificate ``y`` with
``y.A <= 0`` and ``y.b > 0``.  Both public feasibility routines are built on
it, and both run it with column generation so that only a handful of columns
ever enter the tableau even when there are thousands of generators.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]

_INT64_SAFE = 2**62


class DimensionError(ValueError):
    """Operands have incompatible lengths/shapes."""


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------

def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError(f"det needs a square matrix, got {n} rows of lengths "
                             f"{sorted({len(r) for r in m})}")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def clear_denominators(v: Sequence[Fraction]) -> IntVec:
    """Smallest positive integer multiple of a rational vector."""
    d = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def solve_in_span(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[RatVec]:
    """Coefficients c with sum(c_j * columns[j]) == target, for linearly independent columns.

    Returns None when target is outside the rational span.  The columns must be
    linearly independent; the representation is then unique.
    """
    k = len(columns)
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("solve_in_span: columns are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in range(k))


def rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular square integer matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("inverse needs a square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# phase-one simplex
# ---------------------------------------------------------------------------

def _phase_one(columns: Sequence[Sequence], b: Sequence) -> tuple[bool, tuple]:
    """Bland-rule phase one for ``sum_j x_j columns[j] = b, x >= 0``.

    Returns ``(True, x)`` or ``(False, y)`` where y is a Farkas certificate
    for the original (unflipped) rows: ``y . column <= 0`` for every column
    and ``y . b > 0``.
    """
    r = len(b)
    m = len(columns)
    signs = [1 if Fraction(bi) >= 0 else -1 for bi in b]
    # tableau rows: m structural columns, r artificial columns, rhs
    tab = []
    for i in range(r):
        s = signs[i]
        row = [Fraction(s * columns[j][i]) for j in range(m)]
        row.extend(Fraction(int(i == k)) for k in range(r))
        row.append(Fraction(s * b[i]))
        tab.append(row)
    basis = [m + i for i in range(r)]
    width = m + r + 1
    # reduced costs for "minimise the sum of artificials"
    cost = [Fraction(0)] * width
    for row in tab:
        for j in range(m):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    while True:
        enter = next((j for j in range(m + r) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(r):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen: phase one is bounded below by zero
            raise RuntimeError("phase one reported unbounded")
        prow = tab[leave]
        pv = prow[enter]
        if pv != 1:
            prow = [x / pv for x in prow]
            tab[leave] = prow
        nz = [j for j in range(width) if prow[j] != 0]
        for i in range(r):
            if i != leave:
                f = tab[i][enter]
                if f != 0:
                    row = tab[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        f = cost[enter]
        for j in nz:
            cost[j] -= f * prow[j]
        basis[leave] = enter

    infeasibility = -cost[-1]
    if infeasibility == 0:
        x = [Fraction(0)] * m
        for i, j in enumerate(basis):
            if j < m:
                x[j] = tab[i][-1]
        return True, tuple(x)
    # dual values of the flipped rows are 1 - reduced cost of their artificial
    y = tuple(signs[i] * (1 - cost[m + i]) for i in range(r))
    return False, y


# ---------------------------------------------------------------------------
# exact screening of many integer columns against one rational functional
# ---------------------------------------------------------------------------

def as_matrix(vectors: Sequence[Sequence[int]]):
    """Pack integer vectors for screening; object dtype if int64 could overflow."""
    if len(vectors) == 0:
        return np.zeros((0, 0), dtype=np.int64)
    peak = max(abs(int(x)) for v in vectors for x in v)
    dtype = np.int64 if peak < 2**30 else object
    return np.array([list(v) for v in vectors], dtype=dtype)


def scores(mat, y_int: Sequence[int]):
    """Exact ``mat @ y_int`` (one entry per row of mat)."""
    if mat.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    peak_y = max((abs(v) for v in y_int), default=0)
    if mat.dtype != object and peak_y * (2**30) * max(1, mat.shape[1]) < _INT64_SAFE:
        return mat @ np.array(y_int, dtype=np.int64)
    return mat.astype(object) @ np.array(list(y_int), dtype=object)


def _column_generation(mat, b: Sequence[int], start: Sequence[int], batch: int) -> tuple[bool, object]:
    """Phase one over the rows of ``mat`` (one column of the system per row).

    Only a growing working set of columns is ever put in a tableau; columns
    outside it are screened against the current Farkas certificate.  Returns
    the same pair as :func:`_phase_one`, with x expanded to all columns.
    """
    m = mat.shape[0]
    active = list(dict.fromkeys(int(j) for j in start))
    in_active = np.zeros(m, dtype=bool)
    in_active[active] = True
    while True:
        ok, out = _phase_one([[int(x) for x in mat[j]] for j in active], b)
        if ok:
            x = [Fraction(0)] * m
            for j, v in zip(active, out):
                x[j] = v
            return True, tuple(x)
        s = scores(mat, clear_denominators(out))
        bad = np.nonzero((s > 0) & ~in_active)[0]
        if bad.size == 0:
            return False, out
        if bad.size > batch:
            # most violated first, index order breaks ties
            bad = sorted(bad.tolist(), key=lambda j: (-s[j], j))[:batch]
        else:
            bad = bad.tolist()
        active.extend(bad)
        in_active[bad] = True


def _as_checked_matrix(gens, n: Optional[int] = None):
    if isinstance(gens, np.ndarray):
        mat = gens
        if mat.ndim != 2:
            raise DimensionError("generator matrix must be two-dimensional")
    else:
        gens = list(gens)
        if n is None and not gens:
            raise DimensionError("empty generator list with unknown dimension")
        width = len(gens[0]) if gens else n
        for g in gens:
            if len(g) != width:
                raise DimensionError(f"generator {tuple(g)} has length {len(g)}, expected {width}")
        mat = as_matrix(gens) if gens else np.zeros((0, width), dtype=np.int64)
    if n is not None and mat.shape[0] and mat.shape[1] != n:
        raise DimensionError(f"generators have length {mat.shape[1]}, expected {n}")
    return mat


def _default_start(mat, count: int) -> list[int]:
    """Seed columns: the shortest ones (L1 norm), index order breaking ties."""
    if mat.shape[0] <= count:
        return list(range(mat.shape[0]))
    norms = np.abs(mat).sum(axis=1) if mat.dtype != object else np.array(
        [sum(abs(int(x)) for x in row) for row in mat])
    return sorted(np.argsort(norms, kind="stable")[:count].tolist())


def nonneg_rational_solve(gens, target: Sequence[int], start: Optional[Sequence[int]] = None
                          ) -> Optional[RatVec]:
    """Nonnegative rational coefficients lam with ``sum lam_i gens_i == target``.

    ``gens`` is a sequence of integer vectors or a 2-D integer array (one
    generator per row).  Returns None when no such combination exists.
    ``start`` optionally seeds the working set of columns (e.g. a known basis).
    """
    n = len(target)
    mat = _as_checked_matrix(gens, n)
    if mat.shape[0] == 0:
        return () if all(t == 0 for t in target) else None
    if start is None:
        start = _default_start(mat, 2 * n + 2)
    ok, out = _column_generation(mat, [int(t) for t in target], start, batch=2 * n + 2)
    return out if ok else None


def find_separating_functional(gens, start: Optional[Sequence[int]] = None) -> Optional[RatVec]:
    """Rational w with ``w . g >= 1`` for every generator, or None if none exists.

    None is returned exactly when 0 lies in the convex hull of ``gens``, i.e.
    when some nontrivial nonnegative combination of the generators vanishes.
    The search runs on the dual side: feasibility of ``sum lam_g (g, 1) = (0, 1)``,
    whose Farkas certificate yields w.
    """
    mat = _as_checked_matrix(gens)
    if mat.shape[0] == 0:
        raise ValueError("no generators")
    n = mat.shape[1]
    if (~mat.astype(bool)).all(axis=1).any():
        raise ValueError("zero vector among generators; filter it out first")
    lifted = np.hstack([mat, np.ones((mat.shape[0], 1), dtype=mat.dtype)])
    b = [0] * n + [1]
    if start is None:
        start = _default_start(mat, 2 * n + 2)
    start = list(dict.fromkeys(int(j) for j in start))
    # one exact round on the seed columns settles most instances outright
    ok, out = _phase_one([[int(x) for x in lifted[j]] for j in start], b)
    if ok:
        return None
    if not (scores(lifted, clear_denominators(out)) > 0).any():
        return _functional_from(out, n)
    ok, out = _column_generation(lifted, b, start, batch=2 * n + 2)
    if ok:
        return None
    if out[n] <= 0 or (scores(lifted, clear_denominators(out)) > 0).any():
        raise ArithmeticError(f"invalid Farkas certificate {out}")
    return _functional_from(out, n)


def _functional_from(y, n: int) -> RatVec:
    return tuple(-yi / y[n] for yi in y[:n])
