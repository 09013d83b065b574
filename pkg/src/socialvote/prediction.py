"""Forecasts of final popularity and promotion from early vote histories."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .estimation import R_MAX, R_MIN, FitResult, _stream_fans, fit_r
from .exceptions import DomainError
from .params import ModelParams, StoryParams
from .solver import DEFAULT_HORIZON, DEFAULT_STEP, Trajectory, VoteEventStream, solve

SUCCESS_THRESHOLD = 505
NEVER = math.inf

History = Union[Trajectory, VoteEventStream]


@dataclass(frozen=True)
class Prediction:
    r_hat: float
    predicted_final_votes: float
    predicted_promoted: bool
    predicted_promotion_time: Optional[float]
    horizon: float
    fit: Optional[FitResult] = None

    def __post_init__(self):
        if self.predicted_promoted != (self.predicted_promotion_time is not None):
            raise DomainError("promotion time must be given iff the story is predicted promoted")

    @property
    def sub_boundary(self) -> bool:
        """The early fit puts the story below the promotion boundary."""
        return not self.predicted_promoted

    def to_dict(self) -> dict:
        out = {
            "r_hat": self.r_hat,
            "predicted_final_votes": self.predicted_final_votes,
            "predicted_promoted": self.predicted_promoted,
            "predicted_promotion_time": self.predicted_promotion_time,
            "horizon": self.horizon,
            "sub_boundary": self.sub_boundary,
        }
        if self.fit is not None:
            out["fit"] = self.fit.to_dict()
        return out


def forecast(r_hat: float, submitter_fans: int, params: Optional[ModelParams] = None,
             horizon: float = DEFAULT_HORIZON, step: float = DEFAULT_STEP,
             fit: Optional[FitResult] = None) -> Prediction:
    """Run the model forward from submission with a known ``r``."""
    res = solve(StoryParams(r_hat, submitter_fans), params, horizon, step)
    return Prediction(
        r_hat=r_hat,
        predicted_final_votes=res.final_votes,
        predicted_promoted=res.promoted,
        predicted_promotion_time=res.promoted_at,
        horizon=horizon,
        fit=fit,
    )


def predict(early: History, submitter_fans: Optional[int] = None,
            params: Optional[ModelParams] = None, horizon: float = DEFAULT_HORIZON,
            first_k: Optional[int] = None, step: float = DEFAULT_STEP) -> Prediction:
    """Fit ``r`` on an early history and forecast votes at ``horizon``.

    ``early`` is either an observed trajectory or an event stream; for a
    stream only its first ``first_k`` votes are used (all of them when
    ``first_k`` is None). For a trajectory ``first_k`` keeps the first
    samples.
    """
    if isinstance(early, VoteEventStream):
        fans = _stream_fans(early, submitter_fans)
        k = len(early) if first_k is None else first_k
        if len(early) < k:
            raise DomainError(f"stream has {len(early)} events, fewer than k={k}")
        obs = early.to_trajectory(k)
    else:
        if submitter_fans is None:
            raise DomainError("submitter_fans is required for a trajectory")
        fans = int(submitter_fans)
        obs = early if first_k is None else early.head(first_k)
    fit = fit_r(obs, fans, params, horizon, step)
    return forecast(fit.r_hat, fans, params, horizon, step, fit)


def promotes(r: float, submitter_fans: int, params: Optional[ModelParams] = None,
             step: float = DEFAULT_STEP) -> bool:
    """Whether the deterministic model promotes ``(r, S)`` inside the window."""
    params = params or ModelParams()
    res = solve(StoryParams(r, submitter_fans), params, params.upcoming_window, step)
    return res.promoted


def promotion_boundary(submitter_fans: int, params: Optional[ModelParams] = None,
                       horizon: float = 1440.0, rel_tol: float = 1e-4,
                       step: float = DEFAULT_STEP) -> float:
    """Smallest ``r`` that reaches the promotion threshold within ``horizon``.

    Bisection in ``log r`` over ``[1e-4, 1]``. Returns :data:`NEVER`
    (infinity) when even ``r = 1`` fails to promote, and ``1e-4`` when the
    lower end of the bracket already promotes.
    """
    if submitter_fans < 0:
        raise DomainError("submitter_fans must be >= 0")
    params = params or ModelParams()
    horizon = min(horizon, params.upcoming_window)

    def ok(r):
        return solve(StoryParams(r, submitter_fans), params, horizon, min(step, horizon)).promoted

    if not ok(R_MAX):
        return NEVER
    if ok(R_MIN):
        return R_MIN
    lo, hi = R_MIN, R_MAX
    while hi / lo - 1.0 > rel_tol:
        mid = math.sqrt(lo * hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def classify_success(prediction: Union[Prediction, float],
                     threshold_votes: float = SUCCESS_THRESHOLD) -> bool:
    """True when the forecast is strictly above ``threshold_votes``."""
    votes = (prediction.predicted_final_votes if isinstance(prediction, Prediction)
             else float(prediction))
    return votes > threshold_votes
