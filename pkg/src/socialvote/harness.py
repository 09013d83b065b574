"""Dataset-level evaluation of the predictors."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .baselines import InfluenceFeatures, classify, extrapolate, train_tree
from .estimation import fit_lognormal, fit_r, lognormal_standard_errors
from .exceptions import DegenerateInputError, DomainError
from .metrics import EvalReport, evaluate, evaluate_classifier
from .params import ModelParams
from .prediction import SUCCESS_THRESHOLD, predict
from .solver import Trajectory
from .synthgen import Dataset

METHODS = ("model", "extrapolate", "tree")
DEFAULT_FIRST_K = {"model": 20, "extrapolate": 20, "tree": 10}


def _params(ds: Dataset, params: Optional[ModelParams]) -> ModelParams:
    if params is not None:
        return params
    return ModelParams.from_dict(ds.manifest["params"]) if "params" in ds.manifest else ModelParams()


def _horizon(ds: Dataset) -> float:
    return float(ds.manifest["spec"]["horizon"])


def evaluate_dataset(ds: Dataset, method: str = "model", first_k: Optional[int] = None,
                     params: Optional[ModelParams] = None, seed: int = 0,
                     train_frac: float = 0.5,
                     threshold: float = SUCCESS_THRESHOLD) -> EvalReport:
    """Score one predictor on every story with at least ``first_k`` votes.

    ``tree`` trains on a seeded random ``train_frac`` of the eligible
    stories and reports accuracy on the rest; it always uses the first 10
    votes for its fan-vote feature.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
    k = DEFAULT_FIRST_K[method] if first_k is None else first_k
    params = _params(ds, params)
    horizon = _horizon(ds)
    eligible = [s for s in ds.streams if len(s) >= k]
    notes = {"method": method, "first_k": k, "n_skipped": len(ds.streams) - len(eligible)}
    actual = np.array([s.final_votes for s in eligible], dtype=float)

    if method == "model":
        preds = [predict(s, params=params, horizon=horizon, first_k=k) for s in eligible]
        report = evaluate([p.predicted_final_votes for p in preds], actual, threshold)
        notes["n_sub_boundary"] = sum(p.sub_boundary for p in preds)
    elif method == "extrapolate":
        preds = [extrapolate(s.to_trajectory(k), horizon) for s in eligible]
        report = evaluate(preds, actual, threshold)
    else:
        if not 0 < train_frac < 1:
            raise DomainError("train_frac must lie in (0, 1)")
        order = np.random.default_rng(seed).permutation(len(eligible))
        n_train = int(round(train_frac * len(eligible)))
        train_idx, test_idx = np.sort(order[:n_train]), np.sort(order[n_train:])
        if test_idx.size == 0:
            raise DegenerateInputError("no stories left for testing")
        rows = [InfluenceFeatures.from_stream(eligible[i], bool(actual[i] > threshold))
                for i in train_idx]
        tree = train_tree(rows)
        guesses = [classify(tree, InfluenceFeatures.from_stream(eligible[i])) for i in test_idx]
        report = evaluate_classifier(guesses, actual[test_idx], threshold)
        notes.update(n_train=int(n_train), seed=seed, tree_depth=tree.depth())
    report.notes.update(notes)
    return report


def sampled_history(stream, every: float) -> Trajectory:
    """Cumulative votes read off the stream every ``every`` minutes."""
    times = np.arange(0.0, stream.horizon + 1e-9, every)
    return Trajectory(times, [stream.count_at(t) for t in times])


def r_distribution(ds: Dataset, every: float = 30.0, promoted_only: bool = True,
                   params: Optional[ModelParams] = None) -> dict:
    """Fit ``r`` to each story's full history and a lognormal to the fits."""
    params = _params(ds, params)
    horizon = _horizon(ds)
    stories = []
    for entry, stream in zip(ds.manifest["stories"], ds.streams):
        promoted = stream.promoted_at is not None
        if promoted_only and not promoted:
            continue
        try:
            fit = fit_r(sampled_history(stream, every), stream.story.submitter_fans,
                        params, horizon)
        except DegenerateInputError:
            continue
        stories.append({
            "file": entry["file"],
            "r_true": stream.story.r,
            "r_hat": fit.r_hat,
            "submitter_fans": stream.story.submitter_fans,
            "promoted": promoted,
            "final_votes": stream.final_votes,
            "rms_error": fit.rms_error,
            "rms_relative_error": fit.rms_relative_error,
        })
    out = {"stories": stories, "lognormal": None}
    if len(stories) >= 2:
        mean_log, sd_log = fit_lognormal([s["r_hat"] for s in stories])
        se_mean, se_sd = lognormal_standard_errors(sd_log, len(stories))
        out["lognormal"] = {"mean_log": mean_log, "sd_log": sd_log,
                            "se_mean_log": se_mean, "se_sd_log": se_sd,
                            "n": len(stories)}
    return out
