"""Synthetic story populations and vote-event datasets drawn from the model."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .exceptions import DomainError
from .io import dump_json, read_streams, stream_to_jsonl
from .params import ModelParams, StoryParams
from .solver import DEFAULT_HORIZON, VoteEventStream, derive_seeds, simulate

MANIFEST = "manifest.json"


@dataclass(frozen=True)
class FanSpec:
    """Distribution of submitter fan counts.

    ``kind`` is one of ``constant`` (uses ``value``), ``uniform`` (integers
    in ``[low, high]``) or ``powerlaw`` (``P(S=k) ~ k**-exponent`` on
    ``[k_min, cap]``).
    """

    kind: str = "powerlaw"
    value: int = 0
    low: int = 0
    high: int = 100
    exponent: float = 2.0
    k_min: int = 1
    cap: int = 10_000

    def __post_init__(self):
        if self.kind not in ("constant", "uniform", "powerlaw"):
            raise DomainError(f"unknown fan distribution {self.kind!r}")
        if self.kind == "constant" and self.value < 0:
            raise DomainError("constant fan count must be >= 0")
        if self.kind == "uniform" and not 0 <= self.low <= self.high:
            raise DomainError("uniform fans need 0 <= low <= high")
        if self.kind == "powerlaw" and not (0 < self.k_min <= self.cap and self.exponent > 0):
            raise DomainError("power-law fans need 0 < k_min <= cap and exponent > 0")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "constant":
            return np.full(n, self.value, dtype=np.int64)
        if self.kind == "uniform":
            return rng.integers(self.low, self.high, size=n, endpoint=True)
        k = np.arange(self.k_min, self.cap + 1)
        w = k.astype(float) ** -self.exponent
        cdf = np.cumsum(w) / w.sum()
        return k[np.searchsorted(cdf, rng.random(n), side="right").clip(max=k.size - 1)]


@dataclass(frozen=True)
class PopulationSpec:
    n_stories: int = 200
    mean_log: float = -1.67
    sd_log: float = 0.47
    fans: FanSpec = field(default_factory=FanSpec)
    horizon: float = DEFAULT_HORIZON
    seed: int = 0

    def __post_init__(self):
        if self.n_stories < 1:
            raise DomainError("n_stories must be >= 1")
        if self.sd_log < 0:
            raise DomainError("sd_log must be >= 0")
        if not self.horizon > 0:
            raise DomainError("horizon must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PopulationSpec":
        d = dict(d)
        fans = d.pop("fans", None)
        return cls(fans=FanSpec(**fans) if fans else FanSpec(), **d)

    @classmethod
    def from_json(cls, path) -> "PopulationSpec":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _population_rng(spec: PopulationSpec) -> np.random.Generator:
    # distinct entropy pool from the per-story simulation seeds
    return np.random.default_rng([spec.seed, 0x5EED])


def sample_population(spec: PopulationSpec) -> list[StoryParams]:
    """Draw ``(r, S)`` per story; ``r`` is lognormal truncated to ``(0, 1]``
    by rejection."""
    rng = _population_rng(spec)
    r = np.exp(rng.normal(spec.mean_log, spec.sd_log, spec.n_stories))
    bad = r > 1.0
    while bad.any():
        r[bad] = np.exp(rng.normal(spec.mean_log, spec.sd_log, int(bad.sum())))
        bad = r > 1.0
    fans = spec.fans.sample(rng, spec.n_stories)
    return [StoryParams(float(ri), int(si)) for ri, si in zip(r, fans)]


def story_seeds(spec: PopulationSpec) -> list[int]:
    return derive_seeds(spec.seed, spec.n_stories)


def generate_dataset(spec: PopulationSpec,
                     params: Optional[ModelParams] = None) -> list[VoteEventStream]:
    """One simulated stream per sampled story, in story order."""
    stories = sample_population(spec)
    return [simulate(story, params, spec.horizon, seed)
            for story, seed in zip(stories, story_seeds(spec))]


@dataclass
class Dataset:
    manifest: dict
    streams: list[VoteEventStream]

    @property
    def final_votes(self) -> np.ndarray:
        return np.array([s.final_votes for s in self.streams], dtype=float)

    @property
    def promoted(self) -> np.ndarray:
        return np.array([s.promoted_at is not None for s in self.streams])


def build_manifest(spec: PopulationSpec, params: ModelParams,
                   streams: list[VoteEventStream]) -> dict:
    return {
        "spec": spec.to_dict(),
        "params": params.to_dict(),
        "stories": [
            {
                "file": f"story_{i:05d}.jsonl",
                "seed": s.seed,
                "r": s.story.r,
                "submitter_fans": s.story.submitter_fans,
                "promoted_at": s.promoted_at,
                "final_votes": s.final_votes,
            }
            for i, s in enumerate(streams)
        ],
    }


def write_dataset(out_dir, spec: PopulationSpec, params: Optional[ModelParams] = None,
                  streams: Optional[list[VoteEventStream]] = None) -> Dataset:
    """Generate (unless given) and write streams plus ``manifest.json``."""
    params = params or ModelParams()
    if streams is None:
        streams = generate_dataset(spec, params)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = build_manifest(spec, params, streams)
    for entry, stream in zip(manifest["stories"], streams):
        stream.validate()
        (out / entry["file"]).write_text(stream_to_jsonl(stream))
    dump_json(manifest, out / MANIFEST)
    return Dataset(manifest, streams)


def read_dataset(path) -> Dataset:
    path = Path(path)
    manifest = json.loads((path / MANIFEST).read_text())
    streams = []
    for entry in manifest["stories"]:
        (stream,) = read_streams(path / entry["file"])
        streams.append(stream)
    return Dataset(manifest, streams)
