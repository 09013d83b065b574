import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialvote import (DomainError, ModelParams, StoryParams, StoryState, exposure_rates,
                        fan_increment, list_position, page_visibility, vote_rate)

from conftest import quad_visibility

# quadrature of the IG(0.6, 0.6) density over (1, inf), frozen
VISIBILITY_AT_2 = 0.15919270293121704
FANS_AT_2 = 33.1842173137693


class TestPageVisibility:
    def test_top_of_list(self):
        assert page_visibility(1, 0.6, 0.6) == 1.0

    def test_golden_value_at_page_two(self):
        assert page_visibility(2, 0.6, 0.6) == pytest.approx(VISIBILITY_AT_2, abs=1e-12)

    def test_vanishes_deep_in_list(self):
        for p in (50, 80, 200, 1e6):
            assert page_visibility(p, 0.6, 0.6) < 1e-9
        assert page_visibility(math.inf) == 0.0

    def test_matches_quadrature_on_grid(self):
        grid = np.round(np.arange(1.0, 20.0001, 0.1), 10)
        ours = np.array([page_visibility(p) for p in grid])
        ref = np.array([quad_visibility(p) for p in grid])
        assert np.max(np.abs(ours - ref)) < 1e-6
        assert np.all(np.diff(ours) < 0)

    @pytest.mark.parametrize("mu,lam", [(0.3, 1.5), (2.0, 0.4), (1.0, 1.0)])
    def test_other_parameters_match_quadrature(self, mu, lam):
        for p in (1.05, 1.7, 3.0, 9.0):
            assert page_visibility(p, mu, lam) == pytest.approx(quad_visibility(p, mu, lam), abs=1e-9)

    @pytest.mark.parametrize("args", [(0.5, 0.6, 0.6), (2, 0, 0.6), (2, 0.6, -1)])
    def test_domain_errors(self, args):
        with pytest.raises(DomainError):
            page_visibility(*args)


class TestListPosition:
    def test_submission_is_top(self, params):
        assert list_position(0, None, params)[0] == 1.0

    def test_upcoming_growth(self, params):
        assert list_position(100, None, params)[0] == pytest.approx(7.0)

    def test_front_growth(self, params):
        q, p = list_position(500, 300, params)
        assert p == pytest.approx(1.6)
        assert q == pytest.approx(1 + 0.06 * 300)

    def test_promotion_after_t_rejected(self, params):
        with pytest.raises(DomainError):
            list_position(10, 20, params)


class TestExposure:
    def test_fresh_story_without_fans(self, params):
        k = exposure_rates(StoryState(0.0, 1.0, 0.0), StoryParams(0.1, 0), params)
        assert (k.k_front, k.k_new, k.k_friends) == (0.0, pytest.approx(3.0), 0.0)

    def test_friends_rate(self, params):
        k = exposure_rates(StoryState(0.0, 1.0, 100.0), StoryParams(0.1, 100), params)
        assert k.k_friends == pytest.approx(0.2)

    def test_window_expired(self, params):
        k = exposure_rates(StoryState(1441.0, 30.0, 5.0), StoryParams(0.1, 0), params)
        assert k.k_new == 0 and k.k_front == 0
        assert k.k_friends == pytest.approx(0.01)

    def test_vote_rate_examples(self, params):
        story = StoryParams(0.1, 100)
        assert vote_rate(StoryState(0.0, 1.0, 100.0), story, params) == pytest.approx(0.32)
        promoted = StoryState(50.0, 45.0, 0.0, promoted_at=50.0)
        assert vote_rate(promoted, StoryParams(0.2, 0), params) == pytest.approx(2.0)
        assert vote_rate(StoryState(10.0, 3.0, 40.0), StoryParams(0.0, 0), params) == 0.0

    def test_promotion_is_sticky(self, params):
        # the regime flag, not N vs h, decides which list is visible
        k = exposure_rates(StoryState(60.0, 2.0, 0.0, promoted_at=30.0), StoryParams(0.1), params)
        assert k.k_front > 0 and k.k_new == 0


class TestFanIncrement:
    def test_first_vote(self, params):
        assert fan_increment(1, params) == 51.0

    def test_second_vote(self, params):
        assert fan_increment(2, params) == pytest.approx(FANS_AT_2, rel=1e-6)

    def test_decreasing(self, params):
        vals = [fan_increment(n, params) for n in range(1, 500)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_domain(self, params):
        with pytest.raises(DomainError):
            fan_increment(0.5, params)


def test_default_params_match_table():
    p = ModelParams.default()
    assert p == ModelParams()
    assert p.to_dict() == {"nu": 10.0, "c": 0.3, "omega": 0.002, "mu": 0.6, "lambda": 0.6,
                           "a": 51.0, "b": 0.62, "h": 40, "v_upcoming": 0.06,
                           "v_front": 0.003, "upcoming_window": 1440.0}


def test_params_json_roundtrip(tmp_path):
    p = ModelParams(h=25, c=0.5)
    path = tmp_path / "p.json"
    path.write_text(p.to_json())
    assert ModelParams.from_json(path) == p


@pytest.mark.parametrize("bad", [dict(c=1.0), dict(c=0), dict(nu=-1), dict(h=2.5), dict(mu=0)])
def test_params_invariants(bad):
    with pytest.raises(DomainError):
        ModelParams(**bad)


def test_unknown_param_key_rejected():
    with pytest.raises(DomainError):
        ModelParams.from_dict({"nu": 1, "gamma": 2})


states = st.builds(
    lambda t, n, s, frac, promoted: StoryState(t, n, s, t * frac if promoted else None),
    st.floats(0, 3000), st.floats(1, 1e4), st.floats(0, 1e5), st.floats(0, 1), st.booleans())


@settings(max_examples=300, deadline=None)
@given(state=states, r=st.floats(0, 1), fans=st.integers(0, 10_000))
def test_outputs_finite_nonnegative_and_gates_exclusive(state, r, fans):
    story = StoryParams(r, fans)
    k = exposure_rates(state, story)
    for v in (k.k_front, k.k_new, k.k_friends, vote_rate(state, story)):
        assert math.isfinite(v) and v >= 0
    assert k.k_front == 0 or k.k_new == 0


@settings(max_examples=200, deadline=None)
@given(state=states, r=st.floats(1e-6, 0.5))
def test_vote_rate_homogeneous_in_r(state, r):
    one = vote_rate(state, StoryParams(r, 10))
    two = vote_rate(state, StoryParams(2 * r, 10))
    assert two == pytest.approx(2 * one, rel=1e-12, abs=1e-300)


@settings(max_examples=200, deadline=None)
@given(p=st.floats(1, 500), dp=st.floats(1e-3, 5))
def test_visibility_monotone(p, dp):
    a, b = page_visibility(p), page_visibility(p + dp)
    assert 0 <= b <= a <= 1
