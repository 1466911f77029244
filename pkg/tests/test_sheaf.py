import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pearsoncos import NormProfile, PearsonCosError, UndefinedMeasureError
from pearsoncos.measures import cosine, pearson
from pearsoncos.sheaf import (
    cloud,
    cos_from_jaccard,
    envelope,
    identity_residual,
    invert_cos,
    jaccard_from_cos,
    line_params,
    outside_band,
    predict_r,
    predict_r_from_jaccard,
)
from pearsoncos.vectors import norm_ratio

from conftest import nonneg_vector_pairs, random_matrix, table1_profiles, table2_profiles
from oracles import line_value, pearson_raw_sums

S = math.sqrt
MIN279 = (S(18), S(20), 279)
MAX279 = (S(64), S(60), 279)
MIN24 = (2.3184046, 2.4077981, 24)
MAX24 = (3.0858543, 3.0789273, 24)


class TestLineParams:
    def test_n279_min(self):
        line = line_params(*MIN279)
        assert line.cos_at_r0 == pytest.approx(0.068006, abs=1e-6)
        assert line.r_at_cos0 == pytest.approx(-0.0729762, abs=1e-7)

    def test_n279_max(self):
        assert line_params(*MAX279).cos_at_r0 == pytest.approx(0.2221066, abs=1e-7)

    def test_n24_min(self):
        assert line_params(*MIN24).r_at_cos0 == pytest.approx(-0.3031765, abs=1e-7)

    def test_against_closed_form(self):
        for a, b, n in (MIN279, MAX279, MIN24, MAX24):
            line = line_params(a, b, n)
            assert predict_r(line, 0.0) == pytest.approx(line_value(a, b, n, 0.0), abs=1e-15)
            assert line.r_at_cos0 == pytest.approx(-line.slope * line.cos_at_r0, rel=1e-15)
            assert line.slope > 0 and line.r_at_cos0 < 0 and line.cos_at_r0 > 0

    @pytest.mark.parametrize("a, b, n", [(3.0, 2.0, 9), (2.0, S(9), 9), (4.0, 1.5, 9)])
    def test_constant_vector_ratio_rejected(self, a, b, n):
        with pytest.raises(UndefinedMeasureError, match="constant-vector ratio"):
            line_params(a, b, n)

    def test_ratio_below_one_rejected(self):
        with pytest.raises(PearsonCosError):
            line_params(0.5, 1.5, 9)


class TestPredictInvert:
    def test_predict_examples(self):
        assert predict_r(line_params(*MIN279), 0.1) == pytest.approx(0.0343323, abs=1e-6)
        assert predict_r(line_params(*MAX279), 0.2) == pytest.approx(-0.028424, abs=1e-6)
        line = line_params(*MIN24)
        assert predict_r(line, line.cos_at_r0) == 0.0

    def test_invert_examples(self):
        line = line_params(*MAX24)
        assert invert_cos(line, 0.0) == pytest.approx(line.a * line.b / line.n, rel=1e-15)
        assert invert_cos(line, 0.0) == pytest.approx(0.39588, abs=1e-5)
        assert invert_cos(line, predict_r(line, 0.37)) == pytest.approx(0.37, abs=1e-12)

    def test_domain_checks(self):
        line = line_params(*MIN24)
        with pytest.raises(PearsonCosError):
            predict_r(line, 1.5)
        with pytest.raises(PearsonCosError):
            invert_cos(line, -2.0)

    def test_not_clamped(self):
        # lines from ratio pairs that no real data realises can leave [-1, 1]
        line = line_params(1.0, 1.0, 2)
        assert predict_r(line, 1.0) == pytest.approx(1.0)
        assert predict_r(line_params(1.0, 1.0, 3), 0.0) < -0.4
        assert predict_r(line_params(1.0, 1.7, 3), 1.0) > 2.0

    @given(st.integers(2, 500), st.data())
    def test_round_trip(self, n, data):
        a = data.draw(st.floats(1.0, math.sqrt(n) * 0.999))
        b = data.draw(st.floats(1.0, math.sqrt(n) * 0.999))
        c = data.draw(st.floats(0.0, 1.0))
        line = line_params(a, b, n)
        r = predict_r(line, c)
        assume(-1.0 <= r <= 1.0)
        assert abs(invert_cos(line, r) - c) <= 1e-12


class TestEnvelope:
    def test_table1(self):
        env = envelope(table1_profiles(), 279)
        assert env.ab_min == pytest.approx(18.973666, abs=1e-6)
        assert env.ab_max == pytest.approx(61.967734, abs=1e-6)
        assert env.max_pair == ("Narin", "Schubert")
        # Croft and Blair share the smallest ratio; the lower line pairs it
        # with the next distinct value (Dervin, sqrt(20))
        assert env.min_pair == ("Blair", "Dervin")
        assert env.min_line.slope < env.max_line.slope

    def test_table2(self):
        env = envelope(table2_profiles(), 24)
        assert env.ab_min == pytest.approx(5.5822502, abs=1e-7)
        assert env.ab_max == pytest.approx(9.501121, abs=1e-6)
        assert env.min_pair == ("Cooper", "van Raan")
        assert env.max_pair == ("Croft", "Tijssen")
        assert env.min_line.slope < env.max_line.slope

    def test_one_hot_pair(self):
        profs = [NormProfile("x", 1, 1, 1.0, 4), NormProfile("y", 1, 1, 1.0, 4)]
        env = envelope(profs, 4)
        assert env.ab_min == env.ab_max == 1.0
        assert env.min_line == env.max_line

    def test_tied_maximum_uses_both_entities(self):
        profs = [NormProfile(k, 0, 0, r, 30) for k, r in (("p", 2.0), ("q", 3.0), ("s", 3.0))]
        env = envelope(profs, 30)
        assert env.ab_max == 9.0
        assert env.ab_min == 6.0

    def test_order_independent(self):
        profs = table1_profiles()
        assert envelope(profs, 279) == envelope(profs[::-1], 279)

    def test_too_few(self):
        with pytest.raises(PearsonCosError):
            envelope(table1_profiles()[:1], 279)


class TestCloud:
    def test_toy(self, toy):
        (p,) = cloud(toy)
        assert p.pair == ("A", "B")
        assert p.cos == pytest.approx(0.5, abs=1e-15)
        assert p.r == pytest.approx(-0.5, abs=1e-15)

    def test_count_and_order(self, occurrence279):
        pts = cloud(occurrence279)
        assert len(pts) == 276
        assert [p.pair for p in pts] == sorted(p.pair for p in pts)
        assert all(p.pair[0] < p.pair[1] for p in pts)
        assert max(identity_residual(p, 279) for p in pts) <= 1e-10

    def test_outside_band_is_a_count(self, occurrence279):
        pts = cloud(occurrence279)
        env = envelope(
            [NormProfile(v.label, 0, 0, norm_ratio(v), 279) for v in occurrence279.vectors()], 279
        )
        assert 0 <= outside_band(pts, env) <= len(pts)


@given(nonneg_vector_pairs())
def test_master_identity(pair):
    x, y = pair
    n = len(x)
    line = line_params(norm_ratio(x), norm_ratio(y), n)
    assert abs(pearson(x, y) - predict_r(line, cosine(x, y))) <= 1e-10
    # and against the raw-sum definition evaluated exactly
    assert abs(pearson_raw_sums(x, y) - predict_r(line, cosine(x, y))) <= 1e-10


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_cloud_points_lie_on_their_lines(seed):
    m = random_matrix(np.random.default_rng(seed))
    try:
        pts = cloud(m)
    except PearsonCosError:
        return
    n = m.vector_length()
    for p in pts:
        assert identity_residual(p, n) <= 1e-10


class TestShape:
    def test_slope_increases_with_matched_ratio(self):
        slopes = [line_params(a, a, 50).slope for a in np.linspace(1, 7, 30)]
        assert all(s1 < s2 for s1, s2 in zip(slopes, slopes[1:]))

    def test_intercepts_shrink_with_n(self):
        lines = [line_params(2.0, 2.5, n) for n in (10, 30, 100, 1000, 10**6)]
        for l1, l2 in zip(lines, lines[1:]):
            assert abs(l2.r_at_cos0) < abs(l1.r_at_cos0)
            assert l2.cos_at_r0 < l1.cos_at_r0

    def test_slope_tends_to_one(self):
        assert line_params(2.0, 2.0, 10**6).slope - 1 < 1e-4


class TestJaccardRelations:
    def test_fixed_points(self):
        assert jaccard_from_cos(0.0) == 0.0 and jaccard_from_cos(1.0) == 1.0
        assert cos_from_jaccard(0.0) == 0.0 and cos_from_jaccard(1.0) == 1.0
        assert jaccard_from_cos(0.5) == pytest.approx(1 / 3, abs=1e-16)
        assert cos_from_jaccard(1 / 3) == pytest.approx(0.5, abs=1e-16)

    def test_predict_from_jaccard(self):
        line = line_params(*MIN279)
        assert predict_r_from_jaccard(line, 1 / 3) == pytest.approx(0.4635662, abs=1e-5)
        assert predict_r_from_jaccard(line, 1.0) == predict_r(line, 1.0)
        j0 = jaccard_from_cos(line.cos_at_r0)
        assert predict_r_from_jaccard(line, j0) == pytest.approx(0.0, abs=1e-15)

    @given(st.floats(0.0, 1.0))
    def test_inverse_pair(self, c):
        assert abs(cos_from_jaccard(jaccard_from_cos(c)) - c) <= 1e-14
        assert abs(jaccard_from_cos(cos_from_jaccard(c)) - c) <= 1e-14

    @given(st.floats(1e-9, 1 - 1e-9))
    def test_jaccard_below_cosine(self, c):
        assert jaccard_from_cos(c) < c

    def test_convex(self):
        grid = np.linspace(0, 1, 201)
        j = np.array([jaccard_from_cos(c) for c in grid])
        assert np.all(np.diff(j, 2) > 0)
