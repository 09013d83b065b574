"""Least-squares recovery of story interestingness from vote histories."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .exceptions import DegenerateInputError, DomainError
from .params import ModelParams, StoryParams
from .solver import DEFAULT_HORIZON, DEFAULT_STEP, Trajectory, VoteEventStream, solve

R_MIN = 1e-4
R_MAX = 1.0
SCAN_POINTS = 50
REL_TOL = 1e-4

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitResult:
    r_hat: float
    rms_error: float
    rms_relative_error: float
    n_obs: int

    def to_dict(self) -> dict:
        return asdict(self)


def golden_section(f: Callable[[float], float], lo: float, hi: float,
                   tol: float) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[lo, hi]`` until the bracket is
    narrower than ``tol``. Returns ``(x_best, f(x_best))``."""
    a, b = min(lo, hi), max(lo, hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


class _Objective:
    """RMS mismatch between the model and observations as a function of r."""

    def __init__(self, obs: Trajectory, submitter_fans: int,
                 params: ModelParams, step: float):
        self.times = obs.times
        self.votes = obs.votes
        self.fans = submitter_fans
        self.params = params
        t_end = float(obs.times[-1])
        self.horizon = t_end
        self.step = min(step, t_end)

    def model(self, r: float) -> np.ndarray:
        res = solve(StoryParams(r, self.fans), self.params, self.horizon, self.step)
        return res.votes_at(self.times)

    def __call__(self, r: float) -> float:
        diff = self.model(r) - self.votes
        return math.sqrt(float(np.mean(diff * diff)))


def fit_r(observations: Trajectory, submitter_fans: int,
          params: Optional[ModelParams] = None, horizon: float = DEFAULT_HORIZON,
          step: float = DEFAULT_STEP) -> FitResult:
    """Interestingness minimising the RMS gap between model and observed votes.

    The search scans ``log r`` over ``[1e-4, 1]`` on a 50-point grid, then
    refines the best grid cell by golden-section search to a relative
    tolerance of 1e-4. Observations after ``horizon`` are rejected.

    Raises
    ------
    DomainError
        Fewer than two observations, or observations beyond ``horizon``.
    DegenerateInputError
        Every observation is a single vote, which carries no information
        about ``r``.
    """
    params = params or ModelParams()
    if len(observations) < 2:
        raise DomainError("need at least two observations")
    if observations.times[-1] > horizon:
        raise DomainError(f"observation at t={observations.times[-1]:g} beyond horizon {horizon:g}")
    if np.all(observations.votes == 1):
        raise DegenerateInputError("all observations equal 1; r is not identifiable")

    objective = _Objective(observations, submitter_fans, params, step)
    log_obj = lambda x: objective(math.exp(x))  # noqa: E731

    grid = np.linspace(math.log(R_MIN), math.log(R_MAX), SCAN_POINTS)
    values = [log_obj(x) for x in grid]
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, SCAN_POINTS - 1)]
    x_best, f_best = golden_section(log_obj, lo, hi, math.log1p(REL_TOL))
    if values[i] < f_best:
        x_best, f_best = grid[i], values[i]
    r_hat = min(math.exp(x_best), R_MAX)

    model = objective.model(r_hat)
    rel = (model - observations.votes) / observations.votes
    return FitResult(
        r_hat=r_hat,
        rms_error=f_best,
        rms_relative_error=math.sqrt(float(np.mean(rel * rel))),
        n_obs=len(observations),
    )


def fit_r_from_events(events: VoteEventStream, k: Optional[int] = None,
                      params: Optional[ModelParams] = None,
                      horizon: float = DEFAULT_HORIZON,
                      submitter_fans: Optional[int] = None,
                      step: float = DEFAULT_STEP) -> FitResult:
    """Fit ``r`` to the step trajectory of the first ``k`` votes.

    ``submitter_fans`` defaults to the fan count echoed in the stream.
    """
    k = len(events) if k is None else k
    if k < 2:
        raise DomainError("k must be >= 2")
    if len(events) < k:
        raise DomainError(f"stream has {len(events)} events, fewer than k={k}")
    fans = _stream_fans(events, submitter_fans)
    return fit_r(events.to_trajectory(k), fans, params, horizon, step)


def _stream_fans(events: VoteEventStream, submitter_fans: Optional[int]) -> int:
    if submitter_fans is not None:
        return int(submitter_fans)
    if events.story is None:
        raise DomainError("stream carries no story header; pass submitter_fans")
    return events.story.submitter_fans


def fit_lognormal(r_values: Sequence[float]) -> tuple[float, float]:
    """Maximum-likelihood ``(mean, sd)`` of ``log r`` (sd with ``ddof=0``)."""
    x = np.asarray(r_values, dtype=float)
    if x.size < 2:
        raise DomainError("need at least two values")
    if np.any(~(x > 0)):
        raise DomainError("lognormal fit needs strictly positive values")
    logs = np.log(x)
    mean = float(np.mean(logs))
    return mean, float(np.sqrt(np.mean((logs - mean) ** 2)))


def lognormal_standard_errors(sd_log: float, n: int) -> tuple[float, float]:
    """Asymptotic standard errors of the two lognormal MLEs."""
    return sd_log / math.sqrt(n), sd_log / math.sqrt(2.0 * n)
