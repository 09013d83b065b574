"""Input checks shared by the estimator classes."""

from __future__ import annotations

from typing import Any, Optional, Sequence

import numpy as np

from .exceptions import DomainError, NotFittedError
from .solver import Trajectory, VoteEventStream


def check_histories(X: Any, first_k: Optional[int] = None,
                    min_len: int = 2) -> list[tuple[Trajectory, int]]:
    """Normalise a batch of story histories to ``(trajectory, fans)`` pairs.

    Each item of ``X`` is either a :class:`VoteEventStream` (fans taken from
    its header) or a ``(Trajectory, submitter_fans)`` pair. ``first_k``
    truncates to the first votes (streams) or first samples (trajectories).
    """
    if isinstance(X, (VoteEventStream, Trajectory)):
        raise DomainError("expected a sequence of histories, got a single history")
    out = []
    for i, item in enumerate(X):
        if isinstance(item, VoteEventStream):
            if item.story is None:
                raise DomainError(f"item {i}: stream has no story header")
            k = len(item) if first_k is None else first_k
            if len(item) < k:
                raise DomainError(f"item {i}: {len(item)} votes, need {k}")
            traj, fans = item.to_trajectory(k), item.story.submitter_fans
        else:
            try:
                traj, fans = item
            except (TypeError, ValueError):
                raise DomainError(f"item {i}: expected a stream or (trajectory, fans) pair") from None
            if not isinstance(traj, Trajectory):
                traj = Trajectory(*np.asarray(traj, dtype=float).T)
            if first_k is not None:
                traj = traj.head(first_k)
        if len(traj) < min_len:
            raise DomainError(f"item {i}: need at least {min_len} samples")
        if int(fans) != fans or fans < 0:
            raise DomainError(f"item {i}: submitter fans must be a nonnegative integer")
        out.append((traj, int(fans)))
    if not out:
        raise DomainError("no histories given")
    return out


def check_feature_matrix(X: Any, n_features: int = 2) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != n_features:
        raise DomainError(f"expected an (n, {n_features}) feature matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DomainError("feature matrix contains non-finite values")
    return X


def check_positive_1d(x: Sequence[float], min_size: int = 1) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size < min_size:
        raise DomainError(f"need at least {min_size} values")
    if not np.all(x > 0):
        raise DomainError("values must be strictly positive")
    return x


def check_is_fitted(est: Any, attribute: str) -> None:
    if not hasattr(est, attribute):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")
