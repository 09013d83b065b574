"""Comparison predictors: rate extrapolation and a fan-vote decision tree."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .exceptions import DegenerateInputError, DomainError
from .solver import DEFAULT_HORIZON, Trajectory, VoteEventStream

FEATURES = ("fan_votes_first10", "submitter_fans")


def extrapolate(early: Trajectory, horizon: float = DEFAULT_HORIZON) -> float:
    """Extend the least-squares vote rate of ``early`` out to ``horizon``.

    The forecast never falls below the last observed count.
    """
    if len(early) < 2:
        raise DomainError("need at least two samples")
    t, v = early.times, early.votes
    tc = t - t.mean()
    denom = float(tc @ tc)
    if denom == 0:
        raise DegenerateInputError("all sample times are equal")
    slope = float(tc @ (v - v.mean())) / denom
    last_t, last_v = float(t[-1]), float(v[-1])
    return max(last_v + slope * (horizon - last_t), last_v)


def fan_vote_count(events: VoteEventStream, k: int = 10) -> int:
    """Friends-interface votes among votes 2..k (the submitter's is excluded)."""
    return sum(ev.via_friends for ev in events.events[1:k])


@dataclass(frozen=True)
class InfluenceFeatures:
    fan_votes_in_first_10: int
    submitter_fans: int
    success: Optional[bool] = None

    def __post_init__(self):
        if not 0 <= self.fan_votes_in_first_10 <= 10:
            raise DomainError("fan_votes_in_first_10 must lie in [0, 10]")
        if self.submitter_fans < 0:
            raise DomainError("submitter_fans must be >= 0")

    def as_row(self) -> tuple[int, int]:
        return self.fan_votes_in_first_10, self.submitter_fans

    @classmethod
    def from_stream(cls, stream: VoteEventStream, success: Optional[bool] = None,
                    submitter_fans: Optional[int] = None) -> "InfluenceFeatures":
        fans = submitter_fans if submitter_fans is not None else stream.story.submitter_fans
        return cls(fan_vote_count(stream, 10), fans, success)


@dataclass
class Node:
    """Tree node. Leaves have ``feature is None``."""

    value: bool
    counts: tuple[int, int]
    feature: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional["Node"] = None
    right: Optional["Node"] = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        d = {"value": self.value, "counts": list(self.counts)}
        if not self.is_leaf:
            d.update(feature=FEATURES[self.feature], threshold=self.threshold,
                     left=self.left.to_dict(), right=self.right.to_dict())
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Node":
        node = cls(bool(d["value"]), tuple(d["counts"]))
        if "feature" in d:
            node.feature = FEATURES.index(d["feature"])
            node.threshold = float(d["threshold"])
            node.left = cls.from_dict(d["left"])
            node.right = cls.from_dict(d["right"])
        return node


@dataclass
class DecisionTree:
    root: Node
    max_depth: int
    min_leaf: int

    def depth(self) -> int:
        def walk(n):
            return 0 if n.is_leaf else 1 + max(walk(n.left), walk(n.right))
        return walk(self.root)

    def to_json(self) -> str:
        return json.dumps({"max_depth": self.max_depth, "min_leaf": self.min_leaf,
                           "features": list(FEATURES), "root": self.root.to_dict()},
                          indent=2)

    @classmethod
    def from_json(cls, text: str) -> "DecisionTree":
        d = json.loads(text)
        return cls(Node.from_dict(d["root"]), int(d["max_depth"]), int(d["min_leaf"]))


def _gini(n_true: int, n: int) -> float:
    if n == 0:
        return 0.0
    p = n_true / n
    return 2.0 * p * (1.0 - p)


def _leaf(y: np.ndarray) -> Node:
    n_true = int(y.sum())
    n_false = int(y.size - n_true)
    # ties go to "not successful"
    return Node(value=n_true > n_false, counts=(n_false, n_true))


def _best_split(X: np.ndarray, y: np.ndarray, min_leaf: int):
    n = y.size
    parent = _gini(int(y.sum()), n)
    best = None  # (gain, feature, threshold)
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs, ys = X[order, f], y[order]
        left_true = np.cumsum(ys)
        total_true = int(left_true[-1])
        for i in range(min_leaf, n - min_leaf + 1):
            if xs[i - 1] == xs[i]:
                continue
            nl, nr = i, n - i
            lt = int(left_true[i - 1])
            child = (nl * _gini(lt, nl) + nr * _gini(total_true - lt, nr)) / n
            gain = parent - child
            threshold = (xs[i - 1] + xs[i]) / 2.0
            # strictly better only, so earlier feature / lower threshold wins ties
            if gain > 1e-12 and (best is None or gain > best[0] + 1e-12):
                best = (gain, f, float(threshold))
    return best


def _grow(X, y, depth, max_depth, min_leaf) -> Node:
    node = _leaf(y)
    if depth >= max_depth or min(node.counts) == 0 or y.size < 2 * min_leaf:
        return node
    split = _best_split(X, y, min_leaf)
    if split is None:
        return node
    _, f, thr = split
    mask = X[:, f] <= thr
    node.feature, node.threshold = f, thr
    node.left = _grow(X[mask], y[mask], depth + 1, max_depth, min_leaf)
    node.right = _grow(X[~mask], y[~mask], depth + 1, max_depth, min_leaf)
    return node


def _as_arrays(dataset) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    labels = []
    for item in dataset:
        if item.success is None:
            raise DomainError("training rows need a success label")
        rows.append(item.as_row())
        labels.append(bool(item.success))
    return np.array(rows, dtype=float).reshape(-1, 2), np.array(labels, dtype=bool)


def train_tree(dataset: Sequence[InfluenceFeatures], max_depth: int = 3,
               min_leaf: int = 5) -> DecisionTree:
    """Greedy CART induction on Gini impurity.

    Rows are sorted canonically first, so the result does not depend on
    input order. A split sends ``x <= threshold`` left; thresholds are
    midpoints between adjacent distinct values.
    """
    X, y = _as_arrays(dataset)
    return train_tree_arrays(X, y, max_depth, min_leaf)


def train_tree_arrays(X: np.ndarray, y: np.ndarray, max_depth: int = 3,
                      min_leaf: int = 5) -> DecisionTree:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=bool)
    if y.size == 0 or y.all() or not y.any():
        raise DegenerateInputError("training set must contain both classes")
    if max_depth < 0 or min_leaf < 1:
        raise DomainError("max_depth must be >= 0 and min_leaf >= 1")
    order = np.lexsort((y, X[:, 1], X[:, 0]))
    X, y = X[order], y[order]
    return DecisionTree(_grow(X, y, 0, max_depth, min_leaf), max_depth, min_leaf)


def classify(tree: DecisionTree, features: Union[InfluenceFeatures, Sequence[float]]) -> bool:
    x = features.as_row() if isinstance(features, InfluenceFeatures) else tuple(features)
    node = tree.root
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.value


def features_to_csv(rows: Sequence[InfluenceFeatures]) -> str:
    buf = io.StringIO()
    buf.write("fan_votes_first10,submitter_fans,success\n")
    for r in rows:
        label = "" if r.success is None else str(bool(r.success)).lower()
        buf.write(f"{r.fan_votes_in_first_10},{r.submitter_fans},{label}\n")
    return buf.getvalue()


def features_from_csv(text: str) -> list[InfluenceFeatures]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["fan_votes_first10", "submitter_fans", "success"]:
        raise DomainError("feature CSV must have header fan_votes_first10,submitter_fans,success")
    out = []
    for row in reader:
        label = row["success"].strip().lower()
        if label not in ("", "true", "false"):
            raise DomainError(f"bad success label {row['success']!r}")
        out.append(InfluenceFeatures(int(row["fan_votes_first10"]), int(row["submitter_fans"]),
                                     None if label == "" else label == "true"))
    return out
