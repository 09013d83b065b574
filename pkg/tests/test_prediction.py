import math

import numpy as np
import pytest

from socialvote import (NEVER, ModelParams, Prediction, StoryParams, Trajectory,
                        classify_success, predict, promotion_boundary, simulate, solve)
from socialvote.exceptions import DomainError
from socialvote.prediction import forecast, promotes


def test_first_four_samples_predict_final(params):
    res = solve(StoryParams(0.3, 200), params)
    tr = res.trajectory
    early = Trajectory(tr.times[::30], tr.votes[::30]).head(4)
    p = predict(early, 200, params)
    assert p.predicted_final_votes == pytest.approx(res.final_votes, rel=0.05)
    assert p.predicted_promoted and p.predicted_promotion_time == pytest.approx(res.promoted_at, abs=1)


def test_sub_boundary_story(params):
    r = 0.5 * promotion_boundary(0, params)
    tr = solve(StoryParams(r, 0), params).trajectory
    p = predict(Trajectory(tr.times[::30], tr.votes[::30]).head(6), 0, params)
    assert not p.predicted_promoted and p.sub_boundary
    assert p.predicted_final_votes < params.h
    assert p.predicted_promotion_time is None


def test_fixed_point_on_own_output(params):
    res = solve(StoryParams(0.12, 40), params)
    tr = res.trajectory
    p = predict(Trajectory(tr.times[::60], tr.votes[::60]), 40, params)
    assert p.predicted_final_votes == pytest.approx(res.final_votes, rel=1e-3)


def test_prediction_monotone_in_r(params):
    finals = [forecast(r, 25, params).predicted_final_votes for r in np.geomspace(0.01, 1, 25)]
    assert all(b >= a for a, b in zip(finals, finals[1:]))


def test_predict_from_stream_prefix(params):
    s = simulate(StoryParams(0.3, 20), params, 2880, seed=9)
    p = predict(s, first_k=20, params=params)
    assert p.fit.n_obs == 20
    assert p.to_dict()["sub_boundary"] == (not p.predicted_promoted)


def test_trajectory_needs_fans(params):
    with pytest.raises(DomainError):
        predict(Trajectory([0, 10], [1, 3]), None, params)


def test_prediction_invariant():
    with pytest.raises(DomainError):
        Prediction(0.1, 10.0, True, None, 2880)


class TestBoundary:
    def test_nonincreasing_in_fans(self, params):
        b = [promotion_boundary(S, params) for S in (0, 10, 100, 1000)]
        assert all(y <= x for x, y in zip(b, b[1:]))
        assert b[0] > b[-1]

    def test_brackets_promotion(self, params):
        for S in (0, 50, 700):
            r_min = promotion_boundary(S, params)
            assert promotes(r_min, S, params)
            assert not promotes(r_min * (1 - 2e-4), S, params)

    def test_never(self):
        p = ModelParams(h=100_000)
        assert promotion_boundary(0, p) == NEVER == math.inf

    def test_bracket_floor(self):
        p = ModelParams(h=1)
        assert promotion_boundary(0, p) == 1e-4

    def test_negative_fans(self, params):
        with pytest.raises(DomainError):
            promotion_boundary(-1, params)


class TestClassifySuccess:
    @pytest.mark.parametrize("votes,expected", [(506, True), (505, False), (0, False)])
    def test_strict_threshold(self, votes, expected):
        assert classify_success(votes) is expected

    def test_custom_threshold(self):
        p = Prediction(0.2, 120.0, True, 30.0, 2880)
        assert classify_success(p, threshold_votes=100) and not classify_success(p)
