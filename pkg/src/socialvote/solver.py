"""Deterministic and stochastic solutions of the vote dynamics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _rk4
from .exceptions import DomainError, StepSizeError
from .model import visibility_fn
from .params import ModelParams, StoryParams

DEFAULT_HORIZON = 2880.0
DEFAULT_STEP = 1.0
MAX_STEP = 1.0
ENSEMBLE_GRID = 10.0


class Trajectory:
    """Time-ordered ``(t, votes)`` samples.

    Times must be strictly increasing and votes nondecreasing and >= 1.
    Solver output always starts at ``(0, 1)``; observed histories are not
    required to.
    """

    def __init__(self, times: Sequence[float], votes: Sequence[float]):
        t = np.asarray(times, dtype=float).ravel()
        v = np.asarray(votes, dtype=float).ravel()
        if t.shape != v.shape:
            raise DomainError("times and votes must have the same length")
        if t.size == 0:
            raise DomainError("trajectory is empty")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise DomainError("trajectory contains non-finite values")
        if t[0] < 0:
            raise DomainError("times must be >= 0")
        if np.any(np.diff(t) <= 0):
            raise DomainError("times must be strictly increasing")
        if np.any(np.diff(v) < 0):
            raise DomainError("votes must be nondecreasing")
        if np.any(v < 1):
            raise DomainError("votes must be >= 1")
        self.times = t
        self.votes = v
        self.times.flags.writeable = False
        self.votes.flags.writeable = False

    @classmethod
    def from_unsorted(cls, times: Sequence[float], votes: Sequence[float]) -> "Trajectory":
        """Build from samples in any order (sorted by time, then votes)."""
        t = np.asarray(times, dtype=float).ravel()
        v = np.asarray(votes, dtype=float).ravel()
        order = np.lexsort((v, t))
        return cls(t[order], v[order])

    def __len__(self) -> int:
        return self.times.size

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return zip(self.times.tolist(), self.votes.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trajectory):
            return NotImplemented
        return np.array_equal(self.times, other.times) and np.array_equal(self.votes, other.votes)

    def __repr__(self) -> str:
        return f"Trajectory(n={len(self)}, t_end={self.times[-1]:g}, final={self.votes[-1]:g})"

    def head(self, k: int) -> "Trajectory":
        """First ``k`` samples."""
        if k < 1:
            raise DomainError("k must be >= 1")
        return Trajectory(self.times[:k], self.votes[:k])

    def at(self, t: float) -> float:
        """Step (sample-and-hold) value at time ``t``."""
        i = np.searchsorted(self.times, t, side="right") - 1
        return float(self.votes[max(i, 0)])

    @property
    def final(self) -> float:
        return float(self.votes[-1])


@dataclass(frozen=True)
class SolveResult:
    trajectory: Trajectory
    promoted_at: Optional[float]
    final_votes: float
    final_fan_pool: float
    fan_pool: np.ndarray = field(repr=False, compare=False)
    _nodes: tuple = field(repr=False, compare=False, default=())

    @property
    def promoted(self) -> bool:
        return self.promoted_at is not None

    def votes_at(self, t) -> np.ndarray:
        """Dense-output N(t) from cubic Hermite interpolation of the RK4 steps."""
        q = np.atleast_1d(np.asarray(t, dtype=float))
        out = _rk4.hermite_eval(q, *self._nodes)
        return out if np.ndim(t) else float(out[0])


def _check_horizon(horizon: float, step: float) -> None:
    if not (horizon > 0 and math.isfinite(horizon)):
        raise DomainError(f"horizon must be positive, got {horizon!r}")
    if not step > 0:
        raise StepSizeError(f"step must be positive, got {step!r}")
    if step > MAX_STEP:
        raise StepSizeError(f"step {step!r} exceeds the {MAX_STEP} min accuracy limit")
    if step > horizon:
        raise StepSizeError("step must not exceed the horizon")


def solve(story: StoryParams, params: Optional[ModelParams] = None,
          horizon: float = DEFAULT_HORIZON, step: float = DEFAULT_STEP) -> SolveResult:
    """Integrate the rate equations for votes and fan pool.

    Starts from one vote and ``s(0) = S``. Fixed-step RK4; the promotion
    time is located by bisection inside the crossing step and the upcoming
    window end is a forced step boundary. Samples are reported every
    ``step`` minutes up to ``horizon``.
    """
    params = params or ModelParams()
    _check_horizon(horizon, step)
    gt, gn, gs, tp, *nodes = _rk4.integrate(
        float(story.r), float(story.submitter_fans), _rk4.pack_params(params),
        float(horizon), float(step))
    return SolveResult(
        trajectory=Trajectory(gt, gn),
        promoted_at=None if tp < 0 else float(tp),
        final_votes=float(gn[-1]),
        final_fan_pool=float(gs[-1]),
        fan_pool=gs,
        _nodes=tuple(nodes),
    )


@dataclass(frozen=True)
class VoteEvent:
    t: float
    index: int
    via_friends: bool

    def to_dict(self) -> dict:
        return {"t": self.t, "index": self.index, "via_friends": self.via_friends}


@dataclass
class VoteEventStream:
    """Per-vote events of one simulated (or observed) story.

    ``story`` echoes the generating parameters; it is ``None`` for observed
    histories whose interestingness is unknown.
    """

    story: Optional[StoryParams]
    events: list[VoteEvent]
    horizon: float
    promoted_at: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not self.events:
            raise DomainError("stream has no events")
        first = self.events[0]
        if first.index != 1 or first.t != 0 or first.via_friends:
            raise DomainError("first event must be the submitter's vote at t=0")
        prev_t = 0.0
        for k, ev in enumerate(self.events, start=1):
            if ev.index != k:
                raise DomainError("event indices must be contiguous from 1")
            if ev.t < prev_t:
                raise DomainError("events must be time-ordered")
            prev_t = ev.t
        if prev_t > self.horizon:
            raise DomainError("event beyond the horizon")

    def __len__(self) -> int:
        return len(self.events)

    @property
    def final_votes(self) -> int:
        return len(self.events)

    @property
    def times(self) -> np.ndarray:
        return np.array([ev.t for ev in self.events])

    def head(self, k: int) -> "VoteEventStream":
        if k < 1:
            raise DomainError("k must be >= 1")
        return VoteEventStream(self.story, self.events[:k], self.horizon,
                               self.promoted_at, self.seed)

    def to_trajectory(self, k: Optional[int] = None) -> Trajectory:
        """Step trajectory ``(t_i, i)`` of the first ``k`` events.

        Simultaneous events collapse onto the highest index at that time.
        """
        evs = self.events if k is None else self.events[:k]
        t = np.array([ev.t for ev in evs])
        n = np.arange(1, len(evs) + 1, dtype=float)
        keep = np.append(np.diff(t) > 0, True)
        return Trajectory(t[keep], n[keep])

    def count_at(self, t: float) -> int:
        return int(np.searchsorted(self.times, t, side="right"))


def _uniforms(rng: np.random.Generator, block: int = 1024) -> Iterator[float]:
    while True:
        yield from rng.random(block).tolist()


def simulate(story: StoryParams, params: Optional[ModelParams] = None,
             horizon: float = DEFAULT_HORIZON, seed: int = 0) -> VoteEventStream:
    """Draw one vote-event history from the stochastic model.

    Votes arrive as an inhomogeneous Poisson process whose intensity is the
    vote rate at the current integer vote count. Between votes the intensity
    can only decrease (positions sink, the fan pool decays, the upcoming
    window may close), so thinning against the intensity at the last
    candidate point is exact.
    """
    params = params or ModelParams()
    if not (horizon > 0 and math.isfinite(horizon)):
        raise DomainError(f"horizon must be positive, got {horizon!r}")
    rng = np.random.default_rng(seed)
    uni = _uniforms(rng)
    vis = visibility_fn(params.mu, params.lambda_)
    r = story.r
    nu, c, omega = params.nu, params.c, params.omega
    a, b, h = params.a, params.b, params.h
    v_up, v_front, window = params.v_upcoming, params.v_front, params.upcoming_window

    events = [VoteEvent(0.0, 1, False)]
    t = 0.0
    n = 1
    s = float(story.submitter_fans)
    promoted_at = None

    def interface_rate(tc: float) -> float:
        if promoted_at is not None:
            return nu * vis(1.0 + v_front * (tc - promoted_at))
        if tc <= window:
            return c * nu * vis(1.0 + v_up * tc)
        return 0.0

    if r > 0:
        while True:
            bound = r * (interface_rate(t) + omega * s)
            tc = t
            accepted = False
            while bound > 0:
                tc += -math.log(1.0 - next(uni)) / bound
                if tc > horizon:
                    break
                s_c = s * math.exp(-omega * (tc - t))
                k_int = interface_rate(tc)
                k_fr = omega * s_c
                lam = r * (k_int + k_fr)
                if next(uni) * bound <= lam:
                    accepted = True
                    break
                bound = lam
            if not accepted:
                break
            via_friends = next(uni) * (k_int + k_fr) < k_fr
            # forward-Euler reading of ds = a N^-b dN: count before this vote
            s = s_c + a * n ** (-b)
            n += 1
            t = tc
            events.append(VoteEvent(t, n, via_friends))
            if promoted_at is None and n >= h and t <= window:
                promoted_at = t
    return VoteEventStream(story, events, float(horizon), promoted_at, seed)


def derive_seeds(seed: int, n: int) -> list[int]:
    """``n`` independent child seeds of ``seed`` (stable across runs)."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(ch.generate_state(1, dtype=np.uint64)[0]) for ch in children]


def ensemble_mean(story: StoryParams, params: Optional[ModelParams] = None,
                  horizon: float = DEFAULT_HORIZON, n_runs: int = 100,
                  seed: int = 0, grid: float = ENSEMBLE_GRID) -> Trajectory:
    """Pointwise mean of ``n_runs`` simulated cumulative-vote paths."""
    if n_runs < 1:
        raise DomainError("n_runs must be >= 1")
    times = np.arange(0.0, horizon + 1e-9, grid)
    total = np.zeros_like(times)
    for run_seed in derive_seeds(seed, n_runs):
        stream = simulate(story, params, horizon, run_seed)
        total += np.searchsorted(stream.times, times, side="right")
    return Trajectory(times, total / n_runs)
