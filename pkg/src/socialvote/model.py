"""Pure evaluation of the vote-rate model.

Every function here is stateless. The solver and the stochastic simulator
inline the same arithmetic through :func:`visibility_fn` for speed, but the
public functions below are the reference definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .exceptions import DomainError
from .params import ModelParams, StoryParams


@dataclass(frozen=True)
class StoryState:
    """Instantaneous state of a story ``t`` minutes after submission."""

    t: float
    votes: float = 1.0
    fan_pool: float = 0.0
    promoted_at: Optional[float] = None

    def __post_init__(self):
        if not self.t >= 0:
            raise DomainError(f"t must be >= 0, got {self.t!r}")
        if not self.votes >= 1:
            raise DomainError(f"votes must be >= 1, got {self.votes!r}")
        if not self.fan_pool >= 0:
            raise DomainError(f"fan_pool must be >= 0, got {self.fan_pool!r}")
        if self.promoted_at is not None and not 0 <= self.promoted_at <= self.t:
            raise DomainError("promoted_at must lie in [0, t]")


@dataclass(frozen=True)
class ExposureRates:
    """Users per minute who see the story on each interface."""

    k_front: float
    k_new: float
    k_friends: float

    @property
    def total(self) -> float:
        return self.k_front + self.k_new + self.k_friends


def _ig_survival(x: float, mu: float, lam: float, boost: float) -> float:
    # P(X > x) for X ~ IG(mean=mu, shape=lam); boost = 2*lam/mu.
    alpha = math.sqrt(lam / (2.0 * x))
    first = math.erfc(alpha * (x - mu) / mu)
    tail = math.erfc(alpha * (x + mu) / mu)
    second = math.exp(boost + math.log(tail)) if tail > 0.0 else 0.0
    value = 0.5 * (first - second)
    if value < 0.0:
        return 0.0
    return 1.0 if value > 1.0 else value


def visibility_fn(mu: float, lam: float) -> Callable[[float], float]:
    """Return ``f(p)``, the page-visibility curve for fixed ``mu``/``lam``.

    No argument checking is done on ``p``; positions at or above the top of
    the list (``p <= 1``) are fully visible.
    """
    boost = 2.0 * lam / mu

    def f(p: float) -> float:
        if p <= 1.0:
            return 1.0
        return _ig_survival(p - 1.0, mu, lam, boost)

    return f


def page_visibility(p: float, mu: float = 0.6, lam: float = 0.6) -> float:
    """Fraction of visitors who browse at least to list depth ``p``.

    The number of pages a visitor reads beyond the first follows an
    inverse-Gaussian law with mean ``mu`` and shape ``lam``; the visibility
    at depth ``p`` is its survival function at ``p - 1``.

    Raises
    ------
    DomainError
        If ``p < 1`` or ``mu``/``lam`` is not positive.
    """
    if not p >= 1:
        raise DomainError(f"page position must be >= 1, got {p!r}")
    if not (mu > 0 and lam > 0):
        raise DomainError("mu and lambda must be positive")
    if math.isinf(p):
        return 0.0
    return visibility_fn(mu, lam)(p)


def list_position(t: float, promoted_at: Optional[float] = None,
                  params: Optional[ModelParams] = None) -> tuple[float, float]:
    """Return ``(q, p)``: the story's page on the upcoming and front lists.

    Before promotion ``p`` is reported as 1 (the story has not entered the
    front list); after promotion ``q`` stays where the story left the
    upcoming list.
    """
    params = params or ModelParams()
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    if promoted_at is None:
        return 1.0 + params.v_upcoming * t, 1.0
    if not 0 <= promoted_at <= t:
        raise DomainError("promoted_at must lie in [0, t]")
    return (1.0 + params.v_upcoming * promoted_at,
            1.0 + params.v_front * (t - promoted_at))


def exposure_rates(state: StoryState, story: StoryParams,
                   params: Optional[ModelParams] = None) -> ExposureRates:
    """Front, upcoming and friends exposure rates at ``state``.

    The front/upcoming gates follow ``state.promoted_at`` rather than
    comparing votes to ``h``, so promotion is sticky once it happens. The
    upcoming list stays open while ``t <= upcoming_window``.
    """
    params = params or ModelParams()
    q, p = list_position(state.t, state.promoted_at, params)
    k_front = k_new = 0.0
    if state.promoted_at is not None:
        k_front = params.nu * page_visibility(p, params.mu, params.lambda_)
    elif state.t <= params.upcoming_window:
        k_new = params.c * params.nu * page_visibility(q, params.mu, params.lambda_)
    return ExposureRates(k_front, k_new, params.omega * state.fan_pool)


def vote_rate(state: StoryState, story: StoryParams,
              params: Optional[ModelParams] = None) -> float:
    """Expected votes per minute: ``r`` times the total exposure rate."""
    return story.r * exposure_rates(state, story, params).total


def fan_increment(votes: float, params: Optional[ModelParams] = None) -> float:
    """Expected number of new fans exposed by the vote that brings the
    count to ``votes``: ``a * votes**-b``."""
    params = params or ModelParams()
    if not votes >= 1:
        raise DomainError(f"votes must be >= 1, got {votes!r}")
    return params.a * votes ** (-params.b)
