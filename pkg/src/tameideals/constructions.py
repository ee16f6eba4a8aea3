"""Families of tame ideals: Rosenberg ideals, building-set products,
pairwise-sum smoothing and permutohedral ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .cone import ConsistencyError
from .ideal import (CoordinateCloud, ExponentVector, MonomialIdeal, ideal_sum, intersect,
                    maximal_ideal, power, product, product_all, radical)
from .tameness import is_tame


class ResourceGuardError(ValueError):
    """The requested instance is larger than the default limits allow."""


def coordinate_ideal(n: int, indices: Iterable[int]) -> MonomialIdeal:
    return CoordinateCloud(n, indices).ideal()


def _unit_vector(n: int, i: int, scale: int = 1) -> tuple[int, ...]:
    return tuple(scale if j == i else 0 for j in range(n))


# ---------------------------------------------------------------------------
# Rosenberg
# ---------------------------------------------------------------------------

def _check_axes_range(n: int, s: int):
    if not 1 < s < n:
        raise ValueError(f"need 1 < s < n, got n={n}, s={s}")


def axes_ideal(n: int, s: int) -> MonomialIdeal:
    """Intersection of the ideals (x_1, .., x_n without x_i) for i = 1..s."""
    _check_axes_range(n, s)
    result = None
    for i in range(1, s + 1):
        J = coordinate_ideal(n, [j for j in range(1, n + 1) if j != i])
        result = J if result is None else intersect(result, J)
    closed = MonomialIdeal.from_points(
        [tuple(int(t in (i, j)) for t in range(1, n + 1)) for i, j in itertools.combinations(range(1, s + 1), 2)]
        + [_unit_vector(n, i - 1) for i in range(s + 1, n + 1)], n)
    if result != closed:
        raise ConsistencyError(f"axes ideal {result} differs from {closed}")
    return result


def rosenberg_ideal(n: int, s: int) -> MonomialIdeal:
    return intersect(axes_ideal(n, s), power(maximal_ideal(n), 3))


def rosenberg_vertices(n: int, s: int) -> list[ExponentVector]:
    """Expected vertices: 2e_i + e_j (i <= s, j != i) and 3e_i (i > s), sorted."""
    _check_axes_range(n, s)
    out = set()
    for i in range(s):
        for j in range(n):
            if j != i:
                v = [0] * n
                v[i] += 2
                v[j] += 1
                out.add(tuple(v))
    for i in range(s, n):
        out.add(_unit_vector(n, i, 3))
    return sorted(out)


# ---------------------------------------------------------------------------
# building sets of coordinate subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BuildingFamily:
    n: int
    sets: tuple[frozenset[int], ...]

    def __init__(self, n: int, sets: Iterable[Iterable[int]]):
        fs = [frozenset(int(i) for i in s) for s in sets]
        for s in fs:
            if not s:
                raise ValueError("empty set in family")
            if min(s) < 1 or max(s) > n:
                raise ValueError(f"{sorted(s)} is not a subset of 1..{n}")
        if len(set(fs)) != len(fs):
            raise ValueError("duplicate sets in family")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sets", tuple(sorted(fs, key=lambda s: (len(s), sorted(s)))))

    def __contains__(self, s):
        return frozenset(s) in set(self.sets)

    def __len__(self):
        return len(self.sets)

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


def arrangement_closure(f: BuildingFamily, limit: Optional[int] = None) -> BuildingFamily:
    """Close the family under unions of pairs.

    ``limit`` bounds the size of the result; exceeding it raises
    :class:`ResourceGuardError`.
    """
    members = set(f.sets)
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in list(members):
                u = a | b
                if u not in members:
                    members.add(u)
                    new.append(u)
                    if limit is not None and len(members) > limit:
                        raise ResourceGuardError(f"closure exceeds {limit} sets")
        frontier = new
    return BuildingFamily(f.n, members)


def _union_closed_on_overlaps(sets: Sequence[frozenset]) -> bool:
    members = set(sets)
    return all(a | b in members for a, b in itertools.combinations(sets, 2) if a & b)


def _maximal_members_form(f: BuildingFamily, closure: BuildingFamily) -> bool:
    """Every C in the closure is the disjoint union of the maximal members inside it."""
    for c in closure.sets:
        inside = [g for g in f.sets if g <= c]
        maximal = [g for g in inside if not any(g < h for h in inside)]
        if sum(len(g) for g in maximal) != len(c) or frozenset().union(*maximal) != c:
            return False
    return True


def _decompositions(u: frozenset, members: set) -> Iterable[list[frozenset]]:
    """Partitions of u into at least two blocks taken from members."""
    blocks = [m for m in members if m < u]

    def rec(rest: frozenset, chosen: list):
        if not rest:
            yield list(chosen)
            return
        pivot = min(rest)
        for b in blocks:
            if pivot in b and b <= rest:
                chosen.append(b)
                yield from rec(rest - b, chosen)
                chosen.pop()

    yield from rec(u, [])


def irreducible_members(closure: BuildingFamily) -> list[frozenset[int]]:
    """Members of a union-closed family admitting no decomposition.

    A decomposition of U splits it into disjoint members U_1..U_k (k >= 2)
    such that every member A inside U meets each U_i in a member or not at all.
    """
    members = set(closure.sets)
    out = []
    for u in closure.sets:
        below = [a for a in members if a <= u]
        decomposable = False
        for parts in _decompositions(u, members):
            if all(not (a & p) or (a & p) in members for a in below for p in parts):
                decomposable = True
                break
        if not decomposable:
            out.append(u)
    return out


def is_building_set(f: BuildingFamily, cross_check: bool = True) -> bool:
    """Union of any two overlapping members is again a member.

    With ``cross_check`` the answer is compared against the maximal-members
    form and against irreducibility plus closure under non-direct sums;
    a disagreement raises :class:`ConsistencyError`.
    """
    fast = _union_closed_on_overlaps(f.sets)
    if not cross_check:
        return fast
    closure = arrangement_closure(f)
    by_max = _maximal_members_form(f, closure)
    members = set(f.sets)
    by_def = fast and all(u in members for u in irreducible_members(closure))
    if not fast == by_max == by_def:
        raise ConsistencyError(
            f"building set tests disagree on {f.as_lists()}: union={fast}, maximal={by_max}, definition={by_def}")
    return fast


def building_product(f: BuildingFamily) -> MonomialIdeal:
    if not is_building_set(f):
        raise ValueError(f"{f.as_lists()} is not a building set")
    return product_all([coordinate_ideal(f.n, s) for s in f.sets], f.n)


# ---------------------------------------------------------------------------
# pairwise sums
# ---------------------------------------------------------------------------

def _as_ideals(ideals: Sequence) -> list[MonomialIdeal]:
    return [x.ideal() if isinstance(x, CoordinateCloud) else x for x in ideals]


def pairwise_sum_product(ideals: Sequence) -> MonomialIdeal:
    """Product of I_i + I_j over all pairs i < j."""
    ideals = _as_ideals(ideals)
    if len(ideals) < 2:
        raise ValueError("need at least two ideals")
    return product_all([ideal_sum(a, b) for a, b in itertools.combinations(ideals, 2)])


def smooth_product(ideals: Sequence, verify: bool = True) -> MonomialIdeal:
    """prod I_i times prod_{i<j} (I_i + I_j); same zero set as prod I_i, and tame."""
    ideals = _as_ideals(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    plain = product_all(ideals)
    result = plain if len(ideals) == 1 else product(plain, pairwise_sum_product(ideals))
    if verify:
        if radical(result) != radical(plain):
            raise ConsistencyError(f"radical changed: {radical(result)} vs {radical(plain)}")
        if not is_tame(result).tame:
            raise ConsistencyError(f"{result} is not tame")
    return result


# ---------------------------------------------------------------------------
# permutohedral ideals
# ---------------------------------------------------------------------------

MAX_PERMUTOHEDRAL_N = 6
MAX_POLYNOMIAL_N = 5


@dataclass(frozen=True)
class PermutohedronSpec:
    n: int
    k: int

    def __post_init__(self):
        if not 2 <= self.k <= self.n:
            raise ValueError(f"need 2 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def base(self) -> ExponentVector:
        head = tuple(comb(self.n - 1 - i, self.k - 1) for i in range(self.n - self.k + 1))
        return head + (0,) * (self.k - 1)

    @property
    def vertex_count(self) -> int:
        return factorial(self.n) // factorial(self.k - 1)


def permutohedral_ideal(spec: PermutohedronSpec, force: bool = False) -> MonomialIdeal:
    """Product of (x_i : i in S) over all k-subsets S, in lexicographic order."""
    if spec.n > MAX_PERMUTOHEDRAL_N and not force:
        raise ResourceGuardError(f"n={spec.n} exceeds {MAX_PERMUTOHEDRAL_N}")
    result = MonomialIdeal.unit(spec.n)
    for s in itertools.combinations(range(1, spec.n + 1), spec.k):
        result = product(result, coordinate_ideal(spec.n, s))
    return result


def _distinct_permutations(v: Sequence[int]) -> Iterable[tuple[int, ...]]:
    values = sorted(set(v))
    counts = {x: list(v).count(x) for x in values}
    out: list[int] = []

    def rec():
        if len(out) == len(v):
            yield tuple(out)
            return
        for x in values:
            if counts[x]:
                counts[x] -= 1
                out.append(x)
                yield from rec()
                out.pop()
                counts[x] += 1

    yield from rec()


def permutohedron_vertices(spec: PermutohedronSpec) -> list[ExponentVector]:
    return sorted(_distinct_permutations(spec.base))


def permutation_polynomial_maxvectors(n: int, k: int, force: bool = False) -> set[ExponentVector]:
    """Exponents with coefficient exactly 1 in prod over k-subsets of (x_i1 + .. + x_ik)."""
    PermutohedronSpec(n, k)
    if n > MAX_POLYNOMIAL_N and not force:
        raise ResourceGuardError(f"n={n} exceeds {MAX_POLYNOMIAL_N}")
    poly: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for s in itertools.combinations(range(n), k):
        nxt: dict[tuple[int, ...], int] = {}
        for e, c in poly.items():
            for i in s:
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                nxt[f] = nxt.get(f, 0) + c
        poly = nxt
    return {e for e, c in poly.items() if c == 1}
