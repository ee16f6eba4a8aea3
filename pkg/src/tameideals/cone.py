"""Ideal tangent cones, Newton-polyhedron vertices and chart classification.

For a cloud point ``a`` of a monomial ideal the ideal tangent cone is the
monoid generated by the differences ``a' - a`` (``a'`` another cloud point)
together with the standard basis vectors.  The chart of the blowup at ``a``
is smooth exactly when this monoid is pointed with ``n`` minimal generators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exactmath as em
from .ideal import ExponentVector, MonomialIdeal, support_contains

IntVec = tuple[int, ...]


class ConsistencyError(AssertionError):
    """A mathematical invariant that must hold was found violated."""


class ChartKind(str, enum.Enum):
    SMOOTH = "smooth"
    SINGULAR = "singular"
    TORUS = "torus"
    COVERED = "covered"


@dataclass(frozen=True)
class ChartClass:
    kind: ChartKind
    generators: Optional[tuple[IntVec, ...]] = None

    @property
    def is_smooth(self) -> bool:
        return self.kind is ChartKind.SMOOTH


def _unit_vectors(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _sorted_rows(mat: np.ndarray) -> np.ndarray:
    """Distinct nonzero rows in lexicographic order."""
    if mat.shape[0] == 0:
        return mat
    mat = np.unique(mat, axis=0)
    return mat[mat.any(axis=1)]


class IdealTangentCone:
    """The monoid ``N<generators>``; pointedness and minimal generators are cached.

    ``generators`` always contains the standard basis vectors.
    """

    def __init__(self, n: int, generators, base: Optional[Sequence[int]] = None):
        mat = np.asarray(generators, dtype=np.int64).reshape(-1, n)
        self.n = n
        self.base = tuple(base) if base is not None else None
        self.matrix = _sorted_rows(np.vstack([mat, _unit_vectors(n)]))
        self._generators: Optional[tuple[IntVec, ...]] = None
        self._pointed: Optional[bool] = None
        self._witness: Optional[tuple[Fraction, ...]] = None
        self._minimal: Optional[tuple[IntVec, ...]] = None
        self._minimal_rows: Optional[list[int]] = None
        self._facet_rows = None

    @property
    def generators(self) -> tuple[IntVec, ...]:
        if self._generators is None:
            self._generators = tuple(tuple(int(x) for x in row) for row in self.matrix)
        return self._generators

    def __repr__(self):
        return f"IdealTangentCone(n={self.n}, base={self.base}, {self.matrix.shape[0]} generators)"

    # -- pointedness -------------------------------------------------------

    def is_pointed(self) -> bool:
        if self._pointed is None:
            w = em.find_separating_functional(self.matrix, start=self._seed_columns())
            self._pointed = w is not None
            self._witness = w
        return self._pointed

    @property
    def witness(self) -> Optional[tuple[Fraction, ...]]:
        """Rational w with ``w . g >= 1`` on every generator (None if not pointed)."""
        self.is_pointed()
        return self._witness

    def _seed_columns(self) -> list[int]:
        # the shortest generators; unit vectors are among them
        norms = np.abs(self.matrix).sum(axis=1)
        order = np.argsort(norms, kind="stable")
        return sorted(order[: 2 * self.n + 2].tolist())

    def _require_pointed(self, what: str):
        if not self.is_pointed():
            raise ValueError(f"{what} needs a pointed cone; the cone at {self.base} is not pointed")

    def integer_witness(self) -> IntVec:
        """The witness scaled to a primitive integer vector (``w . g >= 1`` still holds)."""
        self._require_pointed("integer_witness")
        return em.clear_denominators(self._witness)

    # -- minimal generators ------------------------------------------------

    def minimal_generators(self) -> tuple[IntVec, ...]:
        """The unique minimal generating set, sorted lexicographically."""
        if self._minimal is None:
            self._require_pointed("minimal_generators")
            self._minimal = tuple(sorted(_minimal_generators(self.matrix, self.integer_witness())))
        return self._minimal

    def is_simplicial(self) -> bool:
        if not self.is_pointed():
            return False
        mins = self.minimal_generators()
        if len(mins) != self.n:
            return False
        d = em.det(mins)
        if abs(d) != 1:
            raise ConsistencyError(f"simplicial cone at {self.base} has det {d}")
        for g in mins:
            if not em.is_primitive(g):
                raise ConsistencyError(f"minimal generator {g} at {self.base} is not primitive")
        return True

    # -- membership --------------------------------------------------------

    def in_nspan(self, v: Sequence[int], method: str = "auto") -> bool:
        """Is v a nonnegative integer combination of the generators?

        ``method="descent"`` forces the memoised descent along the witness;
        ``"auto"`` reads coordinates directly when the minimal generators form
        a basis (their coefficients are then unique).
        """
        self._require_pointed("in_nspan")
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise em.DimensionError(f"vector {v} does not have length {self.n}")
        mins = self.minimal_generators()
        if method == "auto" and len(mins) == self.n:
            coords = em.solve_in_span(mins, v)
            return all(c >= 0 and c.denominator == 1 for c in coords)
        if method not in ("auto", "descent"):
            raise ValueError(f"unknown method {method!r}")
        return _sweep_member(v, mins, self.integer_witness())

    def _facets(self):
        """Inward facet normals of a simplicial cone, each checked against all
        generators (so a negative value on v certifies v outside), or None."""
        if self._facet_rows is None:
            if not (self.is_pointed() and len(self.minimal_generators()) == self.n):
                self._facet_rows = False
                return None
            mins = self.minimal_generators()
            d = em.det(mins)
            if d == 0:
                self._facet_rows = False
                return None
            inv = em.inverse(mins)  # v = c @ mins, c = v @ inv
            sign = 1 if d > 0 else -1
            # column j of inv scaled by |d| is an integral normal vanishing on the other rows
            normals = em.as_matrix([[int(inv[i][j] * d) * sign for i in range(self.n)]
                                    for j in range(self.n)])
            if (_exact_scores_matrix(self.matrix, normals) < 0).any():
                raise ConsistencyError(f"generator outside the cone of the minimal generators at {self.base}")
            self._facet_rows = normals
        return self._facet_rows if self._facet_rows is not False else None

    def in_nspan_many(self, vs: Sequence[Sequence[int]]) -> list[bool]:
        """Breadth-first monoid membership for a batch of vectors."""
        self._require_pointed("in_nspan_many")
        vs = [tuple(int(x) for x in v) for v in vs]
        for v in vs:
            if len(v) != self.n:
                raise em.DimensionError(f"vector {v} does not have length {self.n}")
        return _sweep_members(vs, self.minimal_generators(), self.integer_witness())

    def real_cone_contains(self, v: Sequence[int]) -> bool:
        """Is v a nonnegative *rational* combination of the generators?"""
        if len(v) != self.n:
            raise em.DimensionError(f"vector {tuple(v)} does not have length {self.n}")
        facets = self._facets()
        if facets is not None:
            return bool((_exact_scores(facets, v) >= 0).all())
        start = None
        if self._minimal is not None:
            if self._minimal_rows is None:
                index = {g: i for i, g in enumerate(self.generators)}
                self._minimal_rows = [index[g] for g in self._minimal]
            start = self._minimal_rows
        return em.nonneg_rational_solve(self.matrix, v, start=start) is not None


def _exact_scores(normals: np.ndarray, v: Sequence[int]) -> np.ndarray:
    return em.scores(normals, [int(x) for x in v])


def _exact_scores_matrix(mat: np.ndarray, normals: np.ndarray) -> np.ndarray:
    """``mat @ normals.T`` exactly."""
    return np.column_stack([em.scores(mat, [int(x) for x in row]) for row in normals])


def _descent_member(v: IntVec, gens: Sequence[IntVec], w: IntVec, memo: dict) -> bool:
    """v in N<gens>, given integral w with w.g >= 1 for all gens.

    Each step subtracts a generator, lowering w.v by at least one, so the
    search terminates; intermediate vectors are memoised.
    """
    if not any(v):
        return True
    level = em.dot(w, v)
    if level <= 0:
        return False
    hit = memo.get(v)
    if hit is not None:
        return hit
    result = False
    for g in gens:
        if g == v:
            result = True
            break
    else:
        for g in gens:
            if em.dot(w, g) <= level:
                rest = tuple(x - y for x, y in zip(v, g))
                if _descent_member(rest, gens, w, memo):
                    result = True
                    break
    memo[v] = result
    return result


def _sweep_member(v: IntVec, gens: Sequence[IntVec], w: IntVec) -> bool:
    return _sweep_members([v], gens, w)[0]


def _sweep_members(vs: Sequence[IntVec], gens: Sequence[IntVec], w: IntVec) -> list[bool]:
    """Same question as :func:`_descent_member` for many vectors, breadth first.

    Everything reachable from each v by subtracting generators is generated
    level by level (the w-level drops by at least one per step).  Rows carry
    the index of the vector they came from in an extra last column.
    """
    n = len(w)
    big = em.as_matrix(list(gens) + list(vs) + [w]).dtype == object
    dtype = object if big else np.int64
    g = np.hstack([np.array(gens, dtype=dtype).reshape(-1, n), np.zeros((len(gens), 1), dtype=dtype)])
    wv = np.array(list(w) + [0], dtype=dtype)
    found = [not any(v) for v in vs]
    frontier = np.array([list(v) + [i] for i, v in enumerate(vs) if any(v)], dtype=dtype).reshape(-1, n + 1)
    while frontier.shape[0]:
        step = (frontier[:, None, :] - g[None, :, :]).reshape(-1, n + 1)
        hit = ~step[:, :n].any(axis=1)
        if hit.any():
            for i in set(int(x) for x in step[hit, n]):
                found[i] = True
        step = step[((step @ wv) > 0)]
        if step.shape[0]:
            step = step[~np.isin(step[:, n], [i for i, f in enumerate(found) if f])]
        frontier = _distinct_rows(step) if step.shape[0] else step
    return found


def _distinct_rows(rows: np.ndarray) -> np.ndarray:
    if rows.dtype != object:
        lo = rows.min(axis=0)
        span = rows.max(axis=0) - lo + 1
        if float(np.prod(span.astype(float))) < 2.0**62:
            # pack each row into one integer (mixed radix) and dedupe that
            radix = np.concatenate([[1], np.cumprod(span[:-1])])
            _, keep = np.unique((rows - lo) @ radix, return_index=True)
            return rows[keep]
        return np.unique(rows, axis=0)
    return np.array(sorted(set(map(tuple, rows.tolist()))), dtype=object)


def _basis_filter(basis: Sequence[IntVec], cand: np.ndarray) -> np.ndarray:
    """Boolean mask: rows of cand with nonnegative integral coordinates in ``basis``."""
    d = em.det(basis)
    inv = em.inverse(basis)  # rows of basis are the generators: v = c @ basis
    adj = np.array([[int(x * d) for x in row] for row in inv], dtype=object)
    peak = max(abs(int(x)) for x in adj.flat) if adj.size else 0
    if peak * (2**31) * len(basis) < 2**62:
        scaled = cand @ adj.astype(np.int64)
    else:
        scaled = cand.astype(object) @ adj
    sgn = 1 if d > 0 else -1
    return ((scaled % abs(d)) == 0).all(axis=1) & ((scaled * sgn) >= 0).all(axis=1)


def _minimal_generators(mat: np.ndarray, w: IntVec) -> list[IntVec]:
    """Minimal generators of N<rows of mat>, for a pointed monoid with witness w.

    Candidates are scanned by increasing w-level.  A candidate can only be a
    sum of at least two generators of strictly lower level, so it is redundant
    iff it lies in the span of the minimal generators found so far.
    """
    n = mat.shape[1]
    levels = mat @ np.array(w, dtype=np.int64)
    order = np.lexsort(tuple(mat[:, j] for j in reversed(range(n))) + (levels,))
    cand = mat[order]
    minimal: list[IntVec] = []
    independent = True
    i = 0
    total = cand.shape[0]
    while i < total:
        if independent and len(minimal) == n:
            # unique coordinates: one vectorised sweep finds the next new generator
            ok = _basis_filter(minimal, cand[i:])
            bad = np.nonzero(~ok)[0]
            if bad.size == 0:
                break
            i += int(bad[0])
            minimal.append(tuple(int(x) for x in cand[i]))
            independent = False
            i += 1
            continue
        g = tuple(int(x) for x in cand[i])
        if independent:
            coords = em.solve_in_span(minimal, g) if minimal else (None if any(g) else ())
            if coords is None:
                minimal.append(g)
            elif not all(c >= 0 and c.denominator == 1 for c in coords):
                minimal.append(g)
                independent = False
            i += 1
            continue
        # dependent set: cheap sufficient test against a basis, then descent
        rest = cand[i:]
        basis = _some_basis(minimal, n)
        redundant = _basis_filter(basis, rest) if basis is not None else np.zeros(rest.shape[0], bool)
        memo: dict = {}
        for j in range(rest.shape[0]):
            if redundant[j]:
                continue
            g = tuple(int(x) for x in rest[j])
            if not _descent_member(g, minimal, w, memo):
                minimal.append(g)
                memo = {}
        break
    return minimal


def _some_basis(vectors: Sequence[IntVec], n: int) -> Optional[list[IntVec]]:
    basis: list[IntVec] = []
    for v in vectors:
        if em.rank(basis + [v]) > len(basis):
            basis.append(v)
            if len(basis) == n:
                return basis
    return None


# ---------------------------------------------------------------------------
# module-level API
# ---------------------------------------------------------------------------

def _cloud_matrix(I: MonomialIdeal) -> np.ndarray:
    return np.array(I.cloud, dtype=np.int64).reshape(len(I.cloud), I.n)


def tangent_cone(I: MonomialIdeal, a: Sequence[int], _cloud: Optional[np.ndarray] = None) -> IdealTangentCone:
    """The ideal tangent cone of I at a support point a."""
    a = tuple(int(x) for x in a)
    if not support_contains(I, a):
        raise ValueError(f"{a} is not in the support of the ideal")
    cloud = _cloud_matrix(I) if _cloud is None else _cloud
    return IdealTangentCone(I.n, cloud - np.array(a, dtype=np.int64), base=a)


def is_pointed(c: IdealTangentCone) -> bool:
    return c.is_pointed()


def minimal_generators(c: IdealTangentCone) -> tuple[IntVec, ...]:
    return c.minimal_generators()


def is_simplicial(c: IdealTangentCone) -> bool:
    return c.is_simplicial()


def in_nspan(c: IdealTangentCone, v: Sequence[int]) -> bool:
    return c.in_nspan(v)


def real_cone_contains(c: IdealTangentCone, v: Sequence[int]) -> bool:
    return c.real_cone_contains(v)


def _midpoint_nonvertices(cloud: np.ndarray, near: int = 10) -> np.ndarray:
    """Mask of cloud points a with ``b + c <= 2a`` for cloud points ``(b, c) != (a, a)``.

    Such an a sits in ``(b + c)/2 + R^n_+`` and so is not a vertex.  Only the
    ``near`` closest c are tried, so this is a sufficient test, not a decision.
    """
    out = np.zeros(cloud.shape[0], dtype=bool)
    for i, a in enumerate(cloud):
        twice = 2 * a
        below = cloud[(cloud <= twice).all(axis=1)]
        if below.shape[0] < 2:
            continue
        dist = np.abs(below - a).sum(axis=1)
        cs = below[np.argsort(dist, kind="stable")[1:near + 1]]  # [0] is a itself
        rest = twice - cs
        out[i] = (below[None, :, :] <= rest[:, None, :]).all(axis=2).any()
    return out


def vertex_cones(I: MonomialIdeal) -> dict[ExponentVector, IdealTangentCone]:
    """Pointed tangent cones keyed by vertex (pointedness already decided)."""
    cloud = _cloud_matrix(I)
    skip = _midpoint_nonvertices(cloud)
    out = {}
    for a, skipped in zip(I.cloud, skip):
        if skipped:
            continue
        c = tangent_cone(I, a, cloud)
        if c.is_pointed():
            out[a] = c
    return out


def vertices(I: MonomialIdeal) -> list[ExponentVector]:
    """Cloud points whose tangent cone is pointed: the vertices of N(I), sorted."""
    return list(vertex_cones(I))


def classify_cone(c: IdealTangentCone, I: MonomialIdeal) -> ChartClass:
    """Chart class of ``c.base`` given its (already built) tangent cone."""
    a = c.base
    if c.is_pointed():
        mins = c.minimal_generators()
        kind = ChartKind.SMOOTH if c.is_simplicial() else ChartKind.SINGULAR
        return ChartClass(kind, mins)
    if all(x >= 1 for x in a):
        neighbours = []
        for i in range(I.n):
            for step in (1, -1):
                b = list(a)
                b[i] += step
                neighbours.append(b)
        if all(support_contains(I, b) for b in neighbours):
            return ChartClass(ChartKind.TORUS)
    return ChartClass(ChartKind.COVERED)


def classify_chart(I: MonomialIdeal, a: Sequence[int]) -> ChartClass:
    """Smooth / Singular at vertices, Torus or Covered elsewhere in the support."""
    return classify_cone(tangent_cone(I, a), I)
