"""Tameness reports and the quick criteria for products of coordinate ideals.

An ideal is tame when every vertex of its Newton polyhedron has a
simplicial tangent cone.  :func:`is_tame` is the ground truth; the
coordinate-ideal criteria below are sufficient shortcuts that the test
suite cross-checks against it.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from . import exactmath as em
from .cone import (ChartClass, ChartKind, ConsistencyError, IdealTangentCone,
                   classify_cone, vertex_cones)
from .ideal import CoordinateCloud, ExponentVector, MonomialIdeal, power, product_all


@dataclass
class TamenessReport:
    ideal: MonomialIdeal
    vertices: list[ExponentVector]
    charts: list[tuple[ExponentVector, ChartClass]]
    tame: bool
    witness: Optional[ExponentVector] = None
    cones: dict = field(default_factory=dict, repr=False, compare=False)

    def chart(self, vertex: Sequence[int]) -> ChartClass:
        v = tuple(vertex)
        for a, cls in self.charts:
            if a == v:
                return cls
        raise KeyError(f"{v} is not a vertex")

    def to_dict(self) -> dict:
        return {
            "tame": self.tame,
            "vertices": [list(a) for a in self.vertices],
            "witness": list(self.witness) if self.witness is not None else None,
            "charts": [
                {
                    "vertex": list(a),
                    "class": cls.kind.value,
                    "minimal_generators": [list(g) for g in cls.generators]
                    if cls.generators is not None else None,
                }
                for a, cls in self.charts
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def is_tame(I: MonomialIdeal) -> TamenessReport:
    """Classify the chart at every vertex and aggregate."""
    cones = vertex_cones(I)
    charts = [(a, classify_cone(c, I)) for a, c in sorted(cones.items())]
    bad = [a for a, cls in charts if cls.kind is not ChartKind.SMOOTH]
    return TamenessReport(
        ideal=I,
        vertices=[a for a, _ in charts],
        charts=charts,
        tame=not bad,
        witness=min(bad) if bad else None,
        cones=cones,
    )


# ---------------------------------------------------------------------------
# consistency of smooth charts
# ---------------------------------------------------------------------------

def _sample_points(gens: Sequence[tuple[int, ...]], n: int, count: int, rng: random.Random):
    pts = []
    for j in range(count):
        if j % 2 == 0:
            v = [0] * n
            for g in gens:
                c = rng.randint(0, 1)
                v = [x + c * y for x, y in zip(v, g)]
            if j % 4 == 2:
                i = rng.randrange(n)
                v[i] += rng.choice((-1, 1))
        else:
            v = [rng.randint(-1, 1) for _ in range(n)]
        pts.append(tuple(v))
    return pts


def verify_chart(cone: IdealTangentCone, samples: int = 50, seed: int = 0) -> None:
    """Re-check a smooth chart: unimodular primitive basis, and on sampled
    lattice points rational-cone membership agrees with monoid membership.

    Raises :class:`ConsistencyError` on any violation.
    """
    if not cone.is_simplicial():
        raise ConsistencyError(f"chart at {cone.base} is not simplicial")
    gens = cone.minimal_generators()
    d = em.det(gens)
    if abs(d) != 1:
        raise ConsistencyError(f"det {d} at {cone.base}")
    if not all(em.is_primitive(g) for g in gens):
        raise ConsistencyError(f"non-primitive generator at {cone.base}")
    rng = random.Random(hash((seed, cone.base)) & 0xFFFFFFFF)
    pts = _sample_points(gens, cone.n, samples, rng)
    for v, lattice in zip(pts, cone.in_nspan_many(pts)):
        real = cone.real_cone_contains(v)
        if lattice != real:
            raise ConsistencyError(
                f"at {cone.base}: {v} real-cone membership {real} but lattice membership {lattice}")


def verify_report(report: TamenessReport, samples: int = 50, seed: int = 0) -> int:
    """Run :func:`verify_chart` on every smooth chart; returns how many were checked."""
    checked = 0
    for a, cls in report.charts:
        if cls.kind is ChartKind.SMOOTH:
            verify_chart(report.cones[a], samples, seed)
            checked += 1
    return checked


# ---------------------------------------------------------------------------
# coordinate-ideal criteria
# ---------------------------------------------------------------------------

class TriVerdict(str, enum.Enum):
    TAME = "tame"
    NOT_TAME = "not tame"
    UNKNOWN = "unknown"


IdealLike = Union[CoordinateCloud, MonomialIdeal]


def _variables(x: IdealLike) -> frozenset[int]:
    if isinstance(x, CoordinateCloud):
        return frozenset(i - 1 for i in x.indices)
    return x.variables()


def transverse(I: IdealLike, J: IdealLike) -> bool:
    """Disjoint sets of variables."""
    if I.n != J.n:
        raise em.DimensionError(f"{I.n} vs {J.n} variables")
    return not (_variables(I) & _variables(J))


def coord_pair_tame(I: CoordinateCloud, J: CoordinateCloud) -> bool:
    a, b = I.indices, J.indices
    return not (a & b) or a <= b or b <= a


def _triple_match(I: frozenset, J: frozenset, K: frozenset) -> bool:
    if not (I & J) and not (J & K) and not (I & K):
        return True
    if K == I | J:
        return True
    if I <= J | K and J <= K | I and K <= I | J:
        return True
    return I <= J and not (J & K)


def coord_triple_tame(I: CoordinateCloud, J: CoordinateCloud, K: CoordinateCloud,
                      fallback: bool = False) -> TriVerdict:
    """Pattern criteria for a product of three coordinate ideals.

    Tame if some criterion matches under some relabelling, Unknown otherwise.
    With ``fallback`` the Unknown case is settled by :func:`is_tame`.
    """
    sets = (I.indices, J.indices, K.indices)
    for p in itertools.permutations(sets):
        if _triple_match(*p):
            return TriVerdict.TAME
    if not fallback:
        return TriVerdict.UNKNOWN
    report = is_tame(product_all([I.ideal(), J.ideal(), K.ideal()]))
    return TriVerdict.TAME if report.tame else TriVerdict.NOT_TAME


def check_power_invariance(I: MonomialIdeal, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be at least 2")
    return is_tame(I).tame == is_tame(power(I, k)).tame


def check_transverse_product(ideals: Iterable[IdealLike]) -> bool:
    ideals = [x.ideal() if isinstance(x, CoordinateCloud) else x for x in ideals]
    if not ideals:
        raise ValueError("need at least one ideal")
    for a, b in itertools.combinations(ideals, 2):
        if not transverse(a, b):
            raise ValueError(f"{a} and {b} are not transverse")
    for x in ideals:
        if not is_tame(x).tame:
            raise ValueError(f"factor {x} is not tame")
    return is_tame(product_all(ideals)).tame
