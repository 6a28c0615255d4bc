"""scikit-learn style wrapper around the endpoint tables."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .estimators import Method, Tail, confidence_to_alpha, endpoint_table


class BinomialIntervalEstimator(TransformerMixin, BaseEstimator):
    """Map binomial observations to confidence intervals.

    Input rows are ``(x, n)`` pairs, or a single column of success counts
    when ``n_trials`` is set. Nothing is learned from the data: ``fit``
    validates parameters and precomputes the endpoint tables for every trial
    count seen, and ``transform`` looks the intervals up.

    Parameters
    ----------
    method : str, default="olc"
        Any name accepted by :meth:`Method.parse`.
    confidence : float, default=0.95
        Two-sided confidence ``1 - 2*alpha``. With a one-sided ``tail``,
        the bound is computed at one-tail level ``alpha = (1 - confidence) / 2``
        as well, so the one-sided bound matches the corresponding end of the
        two-sided interval.
    tail : {"two-sided", "upper", "lower"}, default="two-sided"
        ``"upper"`` returns ``(0, u_x)`` and ``"lower"`` returns ``(l_x, 1)``.
    n_trials : int or None, default=None
        Fixed number of trials; when None, ``X`` must have two columns.
    """

    def __init__(self, method="olc", confidence=0.95, tail="two-sided", n_trials=None):
        self.method = method
        self.confidence = confidence
        self.tail = tail
        self.n_trials = n_trials

    def _split(self, X):
        X = check_array(X, dtype=None, ensure_min_features=1)
        if not np.all(np.isfinite(X)) or np.any(X != np.round(X)):
            raise ValueError("X must contain integer counts")
        X = X.astype(np.int64)
        if self.n_trials is None:
            if X.shape[1] != 2:
                raise ValueError("X must have columns (x, n) when n_trials is None")
            x, n = X[:, 0], X[:, 1]
        else:
            if X.shape[1] != 1:
                raise ValueError("X must have a single column of counts when n_trials is set")
            x = X[:, 0]
            n = np.full_like(x, int(self.n_trials))
        if np.any(n < 1) or np.any(x < 0) or np.any(x > n):
            raise ValueError("counts must satisfy 0 <= x <= n and n >= 1")
        return x, n

    def _tables(self, n):
        alpha = self.alpha_
        tables = {}
        for tail in (Tail.LOWER, Tail.UPPER):
            if self.tail in ("two-sided", tail.value):
                tables[tail] = endpoint_table(self.method_, int(n), alpha, tail)
        return tables

    def fit(self, X, y=None):
        if self.tail not in ("two-sided", "upper", "lower"):
            raise ValueError(f"tail must be 'two-sided', 'upper' or 'lower', got {self.tail!r}")
        self.method_ = Method.parse(self.method)
        self.alpha_ = confidence_to_alpha(self.confidence)
        if self.n_trials is not None and int(self.n_trials) < 1:
            raise ValueError("n_trials must be a positive integer")
        _, n = self._split(X)
        self.tables_ = {int(k): self._tables(k) for k in np.unique(n)}
        self.n_features_in_ = 1 if self.n_trials is not None else 2
        return self

    def transform(self, X):
        """Return an ``(n_samples, 2)`` array of ``(lower, upper)`` limits."""
        check_is_fitted(self, "tables_")
        x, n = self._split(X)
        out = np.empty((len(x), 2))
        for row, (xi, ni) in enumerate(zip(x, n)):
            ni = int(ni)
            if ni not in self.tables_:
                self.tables_[ni] = self._tables(ni)
            tables = self.tables_[ni]
            lower = tables[Tail.LOWER][xi] if Tail.LOWER in tables else 0.0
            upper = tables[Tail.UPPER][xi] if Tail.UPPER in tables else 1.0
            out[row] = lower, upper
        return out
