from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import assert_local_global
from shortcut_lab.cycles import INF, antipodal_ratio
from shortcut_lab.generators import generate
from shortcut_lab.graphs import DiscreteCircle, DistanceOracle
from shortcut_lab.ngon import (
    NGonEmbedding,
    bilipschitz_constant,
    cycle_to_ngon,
    lambda_candidates,
    ngon_to_cycle,
    predicted_inverse_k,
    search_ngon,
)

F = Fraction


def setup(spec):
    g = generate(spec)
    return g, DistanceOracle(g)


class TestBilipschitz:
    def test_square_in_c12(self):
        g, o = setup("cycle:12")
        assert bilipschitz_constant((0, 3, 6, 9), F(3), o) == 1
        assert bilipschitz_constant((0, 3, 6, 9), F(2), o) == F(3, 2)

    def test_repeated_point_is_infinite(self):
        g, o = setup("cycle:6")
        assert bilipschitz_constant((0, 2, 0), F(1), o) == INF

    @settings(max_examples=40, deadline=None)
    @given(st.integers(6, 14), st.data())
    def test_matches_independent_distortion(self, m, data):
        g, o = setup(f"cycle:{m}")
        pts = data.draw(st.lists(st.integers(0, m - 1), min_size=3, max_size=6, unique=True))
        lam = data.draw(st.fractions(F(1, 2), F(5), max_denominator=6))
        dist = {u: {v: o.distance(u, v) for v in range(m)} for u in range(m)}
        assert bilipschitz_constant(pts, lam, o) == oracles.distortion(dist, pts, lam)

    def test_lambda_candidates_descend(self):
        g, o = setup("path:4")
        assert lambda_candidates(o, 4) == [3, 2, F(3, 2), 1, F(1, 2)]


class TestSearch:
    def test_square_in_c12(self):
        g, o = setup("cycle:12")
        emb = search_ngon(g, o, 4, F(1))
        assert emb.vertices == (0, 3, 6, 9) and emb.lam == 3 and emb.k_achieved == 1

    def test_path_holds_triangles_only_above_root_two(self):
        # d(a, c) = d(a, b) + d(b, c) forces 2 lam / K <= K lam
        g, o = setup("path:9")
        assert search_ngon(g, o, 3, F(4, 3)) is None
        emb = search_ngon(g, o, 3, F(3, 2))
        assert emb.vertices == (0, 4, 8) and emb.lam == 6

    def test_triangle(self):
        g, o = setup("cycle:3")
        emb = search_ngon(g, o, 3, F(1))
        assert emb.lam == 1 and emb.vertices == (0, 1, 2)

    def test_too_many_points(self):
        g, o = setup("cycle:4")
        assert search_ngon(g, o, 5, F(2)) is None

    def test_threads_do_not_change_the_answer(self):
        g, o = setup("grid:3x3")
        assert search_ngon(g, o, 4, F(3, 2), workers=1) == search_ngon(g, o, 4, F(3, 2), workers=2)

    @pytest.mark.parametrize("n, K", [(2, F(2)), (4, F(1, 2))])
    def test_validation(self, n, K):
        g, o = setup("cycle:6")
        with pytest.raises(ValueError):
            search_ngon(g, o, n, K)


class TestConversions:
    def test_stitching_the_octagon_of_c24(self):
        g, o = setup("cycle:24")
        emb = search_ngon(g, o, 8, F(1))
        st_ = ngon_to_cycle(emb, F(11, 10), o)
        assert st_.circle.vertices == tuple(range(24))
        assert st_.segment_lengths == (3,) * 8 and not st_.fallbacks
        assert st_.predicted_inverse_K == predicted_inverse_k(8, F(11, 10), F(3)) == F(131, 2904)
        assert st_.guarantee_applies and st_.guarantee_holds
        assert_local_global(st_.circle, o, st_.report.k_value, "all")

    def test_fallback_lengths_are_recorded(self):
        g, o = setup("grid:3x2")
        emb = NGonEmbedding((0, 4, 5, 1), 4, F(3, 2), bilipschitz_constant((0, 4, 5, 1), F(3, 2), o))
        st_ = ngon_to_cycle(emb, F(3), o)
        assert st_.fallbacks and st_.predicted_inverse_K < 0 and not st_.guarantee_applies
        assert st_.guarantee_holds is None
        assert sum(st_.segment_lengths) == len(st_.circle)

    def test_stitching_needs_L_above_K(self):
        g, o = setup("cycle:12")
        emb = search_ngon(g, o, 3, F(3, 2))
        with pytest.raises(ValueError, match="must exceed"):
            ngon_to_cycle(emb, emb.k_achieved, o)

    @pytest.mark.parametrize("m, n", [(12, 4), (13, 8), (20, 6), (27, 5), (32, 16)])
    def test_resampled_ngon_within_rounded_bound(self, m, n):
        g, o = setup(f"cycle:{m}")
        circle = DiscreteCircle(tuple(range(m)))
        sn = cycle_to_ngon(circle, antipodal_ratio(circle, o, "all"), n, o)
        assert sn.predicted_K == 1
        assert sn.within_bound
        assert sn.positions[0] == 0 and len(set(sn.positions)) == n

    def test_rounding_can_exceed_the_naive_slack(self):
        # sampling C_13 at eight points moves some samples by half a step
        g, o = setup("cycle:13")
        circle = DiscreteCircle(tuple(range(13)))
        sn = cycle_to_ngon(circle, antipodal_ratio(circle, o, "all"), 8, o)
        assert sn.embedding.k_achieved == F(13, 8) > 1 + F(8, 13)
        assert sn.within_bound

    def test_resampling_preconditions(self):
        g, o = setup("grid:3x2")
        circle = DiscreteCircle((0, 2, 4, 5, 3, 1))
        rep = antipodal_ratio(circle, o, "all")
        with pytest.raises(ValueError, match="below 1"):
            cycle_to_ngon(circle, rep, 6, o)
        with pytest.raises(ValueError):
            cycle_to_ngon(circle, rep, 2, o)
        line = DiscreteCircle((0, 1, 0, 1))
        with pytest.raises(ValueError, match="collapsed"):
            cycle_to_ngon(line, antipodal_ratio(line, DistanceOracle(generate("path:2")), "all"), 3,
                          DistanceOracle(generate("path:2")))
