"""Agreement metrics between predicted and actual final votes."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DegenerateInputError
from .prediction import SUCCESS_THRESHOLD


@dataclass(frozen=True)
class Confusion:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total if self.total else math.nan


@dataclass(frozen=True)
class EvalReport:
    """Regression and classification scores for one predictor.

    ``pearson_correlation``, ``linear_fit_slope`` and ``linear_fit_r2`` are
    None when undefined (constant predictions, or a classifier-only
    evaluation). The linear fit regresses predicted on actual votes.
    """

    n_stories: int
    pearson_correlation: Optional[float]
    rms_error: Optional[float]
    rms_relative_error: Optional[float]
    linear_fit_slope: Optional[float]
    linear_fit_r2: Optional[float]
    confusion: Confusion = field(default_factory=Confusion)
    success_threshold: float = SUCCESS_THRESHOLD
    notes: dict = field(default_factory=dict)

    @property
    def accuracy(self) -> float:
        return self.confusion.accuracy

    def to_dict(self) -> dict:
        d = asdict(self)
        d["confusion"]["accuracy"] = self.accuracy
        d["accuracy"] = self.accuracy
        return d


def confusion(predicted_success: Sequence[bool], actual_success: Sequence[bool]) -> Confusion:
    p = np.asarray(predicted_success, dtype=bool)
    a = np.asarray(actual_success, dtype=bool)
    return Confusion(tp=int(np.sum(p & a)), fp=int(np.sum(p & ~a)),
                     tn=int(np.sum(~p & ~a)), fn=int(np.sum(~p & a)))


def evaluate(predicted: Sequence[float], actual: Sequence[float],
             success_threshold: float = SUCCESS_THRESHOLD) -> EvalReport:
    """Score predicted final votes against actual ones.

    Raises
    ------
    DegenerateInputError
        Fewer than two pairs, or no variance in the actual values.
    """
    y = np.asarray(predicted, dtype=float)
    x = np.asarray(actual, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateInputError("predicted and actual must be 1-d and the same length")
    if x.size < 2:
        raise DegenerateInputError("need at least two pairs")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    if sxx == 0:
        raise DegenerateInputError("actual values have zero variance")
    sxy = float(xc @ yc)

    corr = r2 = None
    if syy > 0:
        corr = max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
        r2 = corr * corr
    slope = sxy / sxx

    diff = y - x
    rms = math.sqrt(float(np.mean(diff * diff)))
    pos = x > 0
    rel = diff[pos] / x[pos]
    rel_rms = math.sqrt(float(np.mean(rel * rel))) if rel.size else None

    return EvalReport(
        n_stories=int(x.size),
        pearson_correlation=corr,
        rms_error=rms,
        rms_relative_error=rel_rms,
        linear_fit_slope=slope,
        linear_fit_r2=r2,
        confusion=confusion(y > success_threshold, x > success_threshold),
        success_threshold=success_threshold,
    )


def evaluate_classifier(predicted_success: Sequence[bool], actual: Sequence[float],
                        success_threshold: float = SUCCESS_THRESHOLD) -> EvalReport:
    """Classification-only report for predictors that output a yes/no."""
    x = np.asarray(actual, dtype=float)
    return EvalReport(
        n_stories=int(x.size),
        pearson_correlation=None,
        rms_error=None,
        rms_relative_error=None,
        linear_fit_slope=None,
        linear_fit_r2=None,
        confusion=confusion(predicted_success, x > success_threshold),
        success_threshold=success_threshold,
    )
