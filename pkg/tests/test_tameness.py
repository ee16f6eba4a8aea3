import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from tameideals.cone import ChartKind, ConsistencyError, tangent_cone
from tameideals.ideal import CoordinateCloud, MonomialIdeal, parse_ideal, power, product_all
from tameideals.tameness import (TriVerdict, check_power_invariance, check_transverse_product,
                                 coord_pair_tame, coord_triple_tame, is_tame, transverse,
                                 verify_chart, verify_report)


def clouds(n):
    return st.sets(st.integers(1, n), min_size=1, max_size=n).map(lambda s: CoordinateCloud(n, s))


def small_ideals(n_max=3, top=3, size=4):
    return st.integers(1, n_max).flatmap(lambda d: st.lists(
        st.tuples(*[st.integers(0, top)] * d), min_size=1, max_size=size).map(
        lambda pts, d=d: MonomialIdeal.from_points(pts, d)))


class TestReport:
    def test_cross(self):
        r = is_tame(parse_ideal("(x1^2, x1*x2, x1*x3, x2*x3)"))
        assert not r.tame
        assert r.witness == (0, 1, 1)
        assert r.chart((0, 1, 1)).kind is ChartKind.SINGULAR
        with pytest.raises(KeyError):
            r.chart((5, 5, 5))

    def test_maximal_ideal(self):
        r = is_tame(parse_ideal("(x1, x2)"))
        assert r.tame and r.witness is None
        assert r.vertices == [(0, 1), (1, 0)]

    def test_json_schema(self):
        r = is_tame(parse_ideal("(x1^2, x1*x2, x1*x3, x2*x3)"))
        d = json.loads(r.to_json())
        assert set(d) == {"tame", "vertices", "witness", "charts"}
        assert d["tame"] is False and d["witness"] == [0, 1, 1]
        assert [c["vertex"] for c in d["charts"]] == d["vertices"]
        for c in d["charts"]:
            assert set(c) == {"vertex", "class", "minimal_generators"}
        assert r.to_json() == is_tame(parse_ideal("(x2*x3, x1*x3, x1*x2, x1^2)")).to_json()

    @settings(max_examples=40)
    @given(small_ideals())
    def test_report_shape(self, I):
        r = is_tame(I)
        assert [a for a, _ in r.charts] == r.vertices
        assert r.tame == all(c.is_smooth for _, c in r.charts)
        assert r.tame == (r.witness is None)
        if not r.tame:
            bad = [a for a, c in r.charts if not c.is_smooth]
            assert r.witness == min(bad)
        json.loads(r.to_json())

    @settings(max_examples=40)
    @given(small_ideals(), st.integers(1, 2))
    def test_embedding_invariance(self, I, extra):
        assert is_tame(I).tame == is_tame(I.embed(I.n + extra)).tame


class TestVerify:
    def test_report(self):
        r = is_tame(parse_ideal("(x1^2, x1*x2, x2^3)"))
        assert verify_report(r) == 3

    def test_singular_chart_rejected(self):
        c = tangent_cone(parse_ideal("(x1^2, x1*x2, x1*x3, x2*x3)"), (0, 1, 1))
        with pytest.raises(ConsistencyError):
            verify_chart(c)


class TestCoordinateCriteria:
    def test_transverse(self):
        assert transverse(parse_ideal("(x1, x2)", 4), parse_ideal("(x3^2, x3*x4)", 4))
        assert not transverse(parse_ideal("(x1, x2)", 3), parse_ideal("(x2, x3)", 3))
        assert transverse(CoordinateCloud(3, [1]), CoordinateCloud(3, [2, 3]))

    def test_pair(self):
        assert coord_pair_tame(CoordinateCloud(3, [1, 2]), CoordinateCloud(3, [3]))
        assert coord_pair_tame(CoordinateCloud(3, [1]), CoordinateCloud(3, [1, 2]))
        assert not coord_pair_tame(CoordinateCloud(3, [1, 2]), CoordinateCloud(3, [2, 3]))

    def test_triple_examples(self):
        c = lambda *s: CoordinateCloud(4, s)
        assert coord_triple_tame(c(1, 2), c(2, 3), c(1, 2, 3)) is TriVerdict.TAME
        assert coord_triple_tame(c(1), c(2), c(3)) is TriVerdict.TAME
        assert coord_triple_tame(c(1, 2), c(2, 3), c(1, 3)) is TriVerdict.TAME
        assert coord_triple_tame(c(1), c(1, 2), c(3, 4)) is TriVerdict.TAME
        assert coord_triple_tame(c(1, 2), c(2, 3), c(3, 4)) is TriVerdict.UNKNOWN
        assert coord_triple_tame(c(1, 2), c(2, 3), c(3, 4), fallback=True) is TriVerdict.NOT_TAME

    @settings(max_examples=30)
    @given(st.integers(2, 6).flatmap(lambda n: st.tuples(clouds(n), clouds(n), clouds(n))))
    def test_triple_soundness(self, triple):
        verdict = coord_triple_tame(*triple)
        if verdict is TriVerdict.TAME:
            assert is_tame(product_all([c.ideal() for c in triple])).tame

    @settings(max_examples=30)
    @given(st.integers(2, 5).flatmap(lambda n: st.lists(clouds(n), min_size=1, max_size=4)))
    def test_nested_product(self, family):
        chain = sorted({c.indices for c in family}, key=len)
        assume(all(a <= b for a, b in zip(chain, chain[1:])))
        assert is_tame(product_all([c.ideal() for c in family])).tame

    @settings(max_examples=30)
    @given(st.integers(2, 5).flatmap(lambda n: st.tuples(clouds(n), clouds(n))))
    def test_pair_matches_is_tame(self, pair):
        I, J = pair
        assert coord_pair_tame(I, J) == is_tame(I.ideal() * J.ideal()).tame


class TestInvariance:
    def test_power_examples(self):
        assert check_power_invariance(parse_ideal("(x1^2, x1*x2, x1*x3, x2*x3)"), 2)
        assert check_power_invariance(parse_ideal("(x1, x2*x3)"), 3)
        with pytest.raises(ValueError):
            check_power_invariance(parse_ideal("(x1, x2)"), 1)

    def test_transverse_product(self):
        assert check_transverse_product([parse_ideal("(x1, x2)", 4), parse_ideal("(x3^2, x3*x4, x4^3)", 4)])
        assert check_transverse_product([CoordinateCloud(5, [1, 2]), CoordinateCloud(5, [3, 4, 5])])
        with pytest.raises(ValueError):
            check_transverse_product([parse_ideal("(x1, x2)", 3), parse_ideal("(x2, x3)", 3)])
        with pytest.raises(ValueError):
            check_transverse_product([parse_ideal("(x1^2, x1*x2, x1*x3, x2*x3)", 4), parse_ideal("(x4)", 4)])

    @settings(max_examples=25)
    @given(small_ideals(n_max=2), small_ideals(n_max=2))
    def test_tame_factors_in_disjoint_variables(self, I, J):
        n = I.n + J.n
        left = MonomialIdeal.from_points([a + (0,) * J.n for a in I.cloud], n)
        right = MonomialIdeal.from_points([(0,) * I.n + b for b in J.cloud], n)
        assume(is_tame(left).tame and is_tame(right).tame)
        assert is_tame(left * right).tame

    @settings(max_examples=25)
    @given(small_ideals(n_max=3, top=2, size=3), st.integers(2, 3))
    def test_power_random(self, I, k):
        assert is_tame(I).tame == is_tame(power(I, k)).tame
