import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tameideals import exactmath as em
from tameideals.cone import (ChartKind, IdealTangentCone, classify_chart, in_nspan, is_pointed,
                             is_simplicial, minimal_generators, real_cone_contains, tangent_cone,
                             vertex_cones, vertices)
from tameideals.constructions import rosenberg_ideal
from tameideals.ideal import MonomialIdeal, parse_ideal
from tameideals.tameness import verify_chart

CROSS = "(x1^2, x1*x2, x1*x3, x2*x3)"


def ideals(n_min=1, n_max=4, top=5, size=6):
    return st.integers(n_min, n_max).flatmap(lambda d: st.lists(
        st.tuples(*[st.integers(0, top)] * d), min_size=1, max_size=size).map(
        lambda pts, d=d: MonomialIdeal.from_points(pts, d)))


def vertices_2d(cloud):
    """Oracle for n = 2: a is no vertex iff a >= t*p + (1-t)*q for other points p, q."""
    out = []
    for a in cloud:
        others = [p for p in cloud if p != a]
        covered = False
        for p, q in itertools.combinations_with_replacement(others, 2):
            lo, hi = Fraction(0), Fraction(1)
            for i in range(2):
                # t*p_i + (1-t)*q_i <= a_i  <=>  t*(p_i - q_i) <= a_i - q_i
                d, r = p[i] - q[i], a[i] - q[i]
                if d > 0:
                    hi = min(hi, Fraction(r, d))
                elif d < 0:
                    lo = max(lo, Fraction(r, d))
                elif r < 0:
                    lo, hi = Fraction(1), Fraction(0)
            if lo <= hi:
                covered = True
                break
        if not covered:
            out.append(a)
    return out


def bounded_nspan(v, gens, half=4):
    """Is v a sum of at most 2*half generators?  Meet in the middle."""
    sums = {tuple([0] * len(v))}
    frontier = set(sums)
    for _ in range(half):
        frontier = {tuple(x + y for x, y in zip(s, g)) for s in frontier for g in gens}
        sums |= frontier
    return any(tuple(x - y for x, y in zip(v, s)) in sums for s in sums)


class TestTangentCone:
    def test_generators(self):
        c = tangent_cone(parse_ideal(CROSS), (0, 1, 1))
        assert set(c.generators) == {(2, -1, -1), (1, 0, -1), (1, -1, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}
        c = tangent_cone(parse_ideal("(x1, x2)"), (1, 0))
        assert set(c.generators) == {(-1, 1), (1, 0), (0, 1)}
        c = tangent_cone(parse_ideal("(x1^2, x1*x2, x2^2)"), (1, 1))
        assert set(c.generators) == {(1, -1), (-1, 1), (1, 0), (0, 1)}

    def test_outside_support(self):
        with pytest.raises(ValueError):
            tangent_cone(parse_ideal("(x1^2, x2^2)"), (1, 1))

    def test_pointedness(self):
        assert not is_pointed(tangent_cone(parse_ideal("(x1^2, x1*x2, x2^2)"), (1, 1)))
        c = tangent_cone(parse_ideal(CROSS), (0, 1, 1))
        assert is_pointed(c)
        assert all(em.dot(c.witness, g) >= 1 for g in c.generators)
        assert is_pointed(tangent_cone(parse_ideal("(x1, x2)"), (1, 0)))

    def test_non_pointed_has_no_minimal_generators(self):
        c = tangent_cone(parse_ideal("(x1^2, x1*x2, x2^2)"), (1, 1))
        assert c.witness is None
        with pytest.raises(ValueError):
            minimal_generators(c)
        with pytest.raises(ValueError):
            in_nspan(c, (0, 0))


class TestVertices:
    def test_two_dim_examples(self):
        I = parse_ideal("(x1^2, x1*x2, x2^3)")
        assert vertices(I) == vertices_2d(I.cloud) == [(0, 3), (1, 1), (2, 0)]
        J = parse_ideal("(x1^2, x1*x2, x2^2)")
        assert vertices(J) == vertices_2d(J.cloud) == [(0, 2), (2, 0)]

    def test_i32(self):
        I = parse_ideal("(x1, x2)", 3) * parse_ideal("(x1, x3)", 3) * parse_ideal("(x2, x3)", 3)
        assert set(vertices(I)) == set(itertools.permutations((2, 1, 0)))
        assert (1, 1, 1) in I.cloud

    @given(ideals(n_min=2, n_max=2, top=6, size=7))
    def test_two_dim_oracle(self, I):
        assert vertices(I) == vertices_2d(I.cloud)

    @settings(max_examples=60)
    @given(ideals())
    def test_hull_oracle(self, I):
        expected = []
        for a in I.cloud:
            gens = [tuple(x - y for x, y in zip(b, a)) + (1,) for b in I.cloud if b != a]
            gens += [tuple(int(i == j) for j in range(I.n)) + (1,) for i in range(I.n)]
            if em.nonneg_rational_solve(gens, (0,) * I.n + (1,)) is None:
                expected.append(a)
        assert vertices(I) == expected

    def test_unit_ideal(self):
        assert vertices(MonomialIdeal.unit(3)) == [(0, 0, 0)]


class TestMinimalGenerators:
    def test_cross(self):
        c = tangent_cone(parse_ideal(CROSS), (0, 1, 1))
        assert set(minimal_generators(c)) == {(1, -1, 0), (1, 0, -1), (0, 1, 0), (0, 0, 1)}
        assert not is_simplicial(c)

    def test_line(self):
        c = tangent_cone(parse_ideal("(x1, x2)"), (1, 0))
        assert set(minimal_generators(c)) == {(-1, 1), (1, 0)}
        assert is_simplicial(c)

    def test_rosenberg_charts(self):
        R = rosenberg_ideal(3, 2)
        c = tangent_cone(R, (0, 0, 3))
        assert set(minimal_generators(c)) == {(0, 0, 1), (1, 0, -1), (0, 1, -1)}
        assert is_simplicial(tangent_cone(R, (2, 1, 0)))

    @settings(max_examples=60)
    @given(ideals(), st.randoms(use_true_random=False))
    def test_unique_under_shuffle(self, I, rnd):
        for a, c in vertex_cones(I).items():
            gens = list(c.generators)
            rnd.shuffle(gens)
            assert IdealTangentCone(I.n, gens).minimal_generators() == c.minimal_generators()

    @settings(max_examples=60)
    @given(ideals(n_max=3, top=4))
    def test_antichain_and_spanning(self, I):
        for a, c in vertex_cones(I).items():
            mins = c.minimal_generators()
            base = IdealTangentCone(I.n, mins)
            assert base.minimal_generators() == mins
            assert all(base.in_nspan_many(c.generators))
            for g in mins:
                rest = [h for h in mins if h != g]
                if rest:
                    others = IdealTangentCone(I.n, rest)
                    # unit vectors are always added, so only test genuine removals
                    if g not in others.generators:
                        assert not others.in_nspan(g)

    @settings(max_examples=60)
    @given(ideals())
    def test_simplicial_is_unimodular(self, I):
        for a, c in vertex_cones(I).items():
            if is_simplicial(c):
                gens = minimal_generators(c)
                assert abs(em.det(gens)) == 1
                assert all(em.is_primitive(g) for g in gens)


class TestMembership:
    def test_in_nspan_examples(self):
        c = tangent_cone(parse_ideal(CROSS), (0, 1, 1))
        assert in_nspan(c, (1, 0, 0))
        assert not in_nspan(c, (0, -1, 1))
        assert in_nspan(c, (0, 0, 0))
        assert in_nspan(c, (2, -1, -1))
        assert c.in_nspan((1, 0, 0), method="descent")
        with pytest.raises(ValueError):
            c.in_nspan((1, 0, 0), method="guess")
        with pytest.raises(em.DimensionError):
            in_nspan(c, (1, 0))

    def test_real_cone_examples(self):
        c = tangent_cone(parse_ideal("(x1^2, x2^2)"), (2, 0))
        assert real_cone_contains(c, (-1, 1))
        assert not in_nspan(c, (-1, 1))
        assert all(real_cone_contains(c, g) for g in c.generators)
        assert not real_cone_contains(c, (-1, 0))

    @settings(max_examples=40)
    @given(ideals(n_max=3))
    def test_lattice_equality_on_simplicial_cones(self, I):
        for a, c in vertex_cones(I).items():
            if is_simplicial(c):
                verify_chart(c, samples=50)

    @settings(max_examples=40)
    @given(ideals(n_max=3))
    def test_auto_and_descent_agree(self, I):
        rng = random.Random(0)
        for a, c in vertex_cones(I).items():
            pts = [tuple(rng.randint(-3, 3) for _ in range(I.n)) for _ in range(15)]
            auto = [c.in_nspan(v) for v in pts]
            assert auto == [c.in_nspan(v, method="descent") for v in pts]
            assert auto == c.in_nspan_many(pts)

    @settings(max_examples=40)
    @given(ideals(n_max=3, top=3, size=4))
    def test_non_vertex_cone_covers_vertex_cones(self, I):
        cones = vertex_cones(I)
        for a in I.cloud:
            if a in cones:
                continue
            gens = tangent_cone(I, a).generators
            for v, c in cones.items():
                for g in c.generators:
                    assert bounded_nspan(g, gens), (a, v, g)


class TestClassify:
    def test_examples(self):
        cls = classify_chart(parse_ideal(CROSS), (0, 1, 1))
        assert cls.kind is ChartKind.SINGULAR and len(cls.generators) == 4
        assert classify_chart(parse_ideal("(x1, x2)"), (1, 1)).kind is ChartKind.TORUS
        assert classify_chart(parse_ideal("(x1^2, x1*x2, x2^2)"), (1, 1)).kind is ChartKind.COVERED
        smooth = classify_chart(parse_ideal("(x1, x2)"), (1, 0))
        assert smooth.is_smooth and set(smooth.generators) == {(-1, 1), (1, 0)}

    def test_torus_needs_positive_point(self):
        # every neighbour with a nonnegative entry lies in the support, but (0, 2) - e1 does not exist
        assert classify_chart(parse_ideal("(x2)", 2), (0, 2)).kind is ChartKind.COVERED
