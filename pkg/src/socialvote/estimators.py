"""scikit-learn compatible wrappers around the model and the baselines.

Story-level estimators take ``X`` as a sequence of histories: event streams,
or ``(Trajectory, submitter_fans)`` pairs. The model itself has no
population-level parameters, so ``fit`` on those only validates input and
records per-story fits; all the work happens per story in ``predict``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin, TransformerMixin

from .baselines import DecisionTree, classify, extrapolate, train_tree_arrays
from .estimation import fit_lognormal, fit_r, lognormal_standard_errors
from .params import ModelParams
from .prediction import SUCCESS_THRESHOLD, forecast
from .solver import DEFAULT_HORIZON, DEFAULT_STEP
from .validation import (check_feature_matrix, check_histories, check_is_fitted,
                         check_positive_1d)


class _HistoryModel(BaseEstimator):
    def __init__(self, params=None, horizon=DEFAULT_HORIZON, first_k=None, step=DEFAULT_STEP):
        self.params = params
        self.horizon = horizon
        self.first_k = first_k
        self.step = step

    def _fits(self, X):
        params = self.params or ModelParams()
        return [(fit_r(traj, fans, params, self.horizon, self.step), fans)
                for traj, fans in check_histories(X, self.first_k)]

    def _forecasts(self, X):
        check_is_fitted(self, "r_hat_")
        params = self.params or ModelParams()
        return [forecast(f.r_hat, fans, params, self.horizon, self.step, f)
                for f, fans in self._fits(X)]

    def fit(self, X, y=None):
        fits = self._fits(X)
        self.fit_results_ = [f for f, _ in fits]
        self.r_hat_ = np.array([f.r_hat for f in self.fit_results_])
        return self


class InterestingnessEstimator(TransformerMixin, _HistoryModel):
    """Transform histories into least-squares interestingness estimates."""

    def transform(self, X):
        check_is_fitted(self, "r_hat_")
        return np.array([[f.r_hat] for f, _ in self._fits(X)])


class VoteModelRegressor(RegressorMixin, _HistoryModel):
    """Predict final votes by fitting ``r`` and running the model forward."""

    def predict_full(self, X):
        return self._forecasts(X)

    def predict(self, X):
        return np.array([p.predicted_final_votes for p in self.predict_full(X)])

    def predict_promotion(self, X):
        return np.array([p.predicted_promoted for p in self.predict_full(X)])


class ModelSuccessClassifier(ClassifierMixin, _HistoryModel):
    """Success (> ``threshold`` final votes) as forecast by the model."""

    def __init__(self, params=None, horizon=DEFAULT_HORIZON, first_k=10,
                 step=DEFAULT_STEP, threshold=SUCCESS_THRESHOLD):
        super().__init__(params, horizon, first_k, step)
        self.threshold = threshold

    def fit(self, X, y=None):
        super().fit(X, y)
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X):
        return np.array([p.predicted_final_votes > self.threshold
                         for p in self._forecasts(X)])


class ExtrapolationRegressor(RegressorMixin, BaseEstimator):
    """Linear extrapolation of the early vote rate to the horizon."""

    def __init__(self, horizon=DEFAULT_HORIZON, first_k=None):
        self.horizon = horizon
        self.first_k = first_k

    def fit(self, X, y=None):
        check_histories(X, self.first_k)
        self.fitted_ = True
        return self

    def predict(self, X):
        check_is_fitted(self, "fitted_")
        return np.array([extrapolate(traj, self.horizon)
                         for traj, _ in check_histories(X, self.first_k)])


class InfluenceTreeClassifier(ClassifierMixin, BaseEstimator):
    """Gini decision tree over ``[fan_votes_in_first_10, submitter_fans]``."""

    def __init__(self, max_depth=3, min_leaf=5):
        self.max_depth = max_depth
        self.min_leaf = min_leaf

    def fit(self, X, y):
        X = check_feature_matrix(X)
        y = np.asarray(y, dtype=bool).ravel()
        if y.size != X.shape[0]:
            raise ValueError("X and y have inconsistent lengths")
        self.tree_: DecisionTree = train_tree_arrays(X, y, self.max_depth, self.min_leaf)
        self.classes_ = np.array([False, True])
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "tree_")
        X = check_feature_matrix(X)
        return np.array([classify(self.tree_, row) for row in X], dtype=bool)


class LognormalFit(BaseEstimator):
    """Maximum-likelihood lognormal fit of interestingness values."""

    def fit(self, X, y=None):
        r = check_positive_1d(X, min_size=2)
        self.mean_log_, self.sd_log_ = fit_lognormal(r)
        self.stderr_ = lognormal_standard_errors(self.sd_log_, r.size)
        self.n_samples_ = r.size
        return self

    def sample(self, n, random_state=None):
        check_is_fitted(self, "mean_log_")
        rng = np.random.default_rng(random_state)
        return np.exp(rng.normal(self.mean_log_, self.sd_log_, n))
