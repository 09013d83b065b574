"""Site-wide model constants and per-story parameters."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any

from .exceptions import DomainError

# ``lambda`` is a Python keyword; the attribute is ``lambda_`` but the
# serialized key stays ``lambda``.
_JSON_RENAMES = {"lambda_": "lambda"}
_JSON_RENAMES_INV = {v: k for k, v in _JSON_RENAMES.items()}


@dataclass(frozen=True)
class ModelParams:
    """Constants shared by every story.

    Attributes
    ----------
    nu : float
        Rate at which general users visit the site (users / min).
    c : float
        Fraction of visitors that go on to browse the upcoming list.
    omega : float
        Rate at which fans return to the site (1 / min).
    mu, lambda_ : float
        Mean and shape of the inverse-Gaussian page-depth distribution.
    a, b : float
        Prefactor and exponent of the new-fans-per-vote rule ``a * N**-b``.
    h : int
        Promotion threshold in votes.
    v_upcoming, v_front : float
        Speed (pages / min) at which a story sinks down each list.
    upcoming_window : float
        Minutes a story may stay in the upcoming list.
    """

    nu: float = 10.0
    c: float = 0.3
    omega: float = 0.002
    mu: float = 0.6
    lambda_: float = 0.6
    a: float = 51.0
    b: float = 0.62
    h: int = 40
    v_upcoming: float = 0.06
    v_front: float = 0.003
    upcoming_window: float = 1440.0

    def __post_init__(self):
        for name in ("nu", "omega", "mu", "lambda_", "a", "b",
                     "v_upcoming", "v_front", "upcoming_window"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value!r}")
        if not 0 < self.c < 1:
            raise DomainError(f"c must lie in (0, 1), got {self.c!r}")
        if int(self.h) != self.h or self.h < 1:
            raise DomainError(f"h must be a positive integer, got {self.h!r}")
        object.__setattr__(self, "h", int(self.h))

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return {_JSON_RENAMES.get(k, k): v for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ModelParams":
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, value in data.items():
            name = _JSON_RENAMES_INV.get(key, key)
            if name not in known:
                raise DomainError(f"unknown model parameter {key!r}")
            kwargs[name] = value
        return cls(**kwargs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, path: str | Path) -> "ModelParams":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def default(cls) -> "ModelParams":
        """Load the bundled ``default_params.json``."""
        text = resources.files("socialvote.data").joinpath("default_params.json").read_text()
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class StoryParams:
    """Story-specific inputs: interestingness ``r`` and submitter fan count."""

    r: float
    submitter_fans: int = 0

    def __post_init__(self):
        # r == 0 is allowed so the degenerate dynamics can be exercised.
        if not (math.isfinite(self.r) and 0 <= self.r <= 1):
            raise DomainError(f"r must lie in [0, 1], got {self.r!r}")
        if int(self.submitter_fans) != self.submitter_fans or self.submitter_fans < 0:
            raise DomainError(f"submitter_fans must be a nonnegative integer, got {self.submitter_fans!r}")
        object.__setattr__(self, "submitter_fans", int(self.submitter_fans))

    def to_dict(self) -> dict[str, Any]:
        return {"r": self.r, "submitter_fans": self.submitter_fans}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StoryParams":
        return cls(r=float(data["r"]), submitter_fans=int(data.get("submitter_fans", 0)))


def resolve_params(params: ModelParams | None) -> ModelParams:
    return ModelParams() if params is None else params
