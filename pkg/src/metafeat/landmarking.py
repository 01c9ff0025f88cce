"""Landmarking: cross-validated scores of simple learners."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import binarize, rescale_minmax
from .summary import MeasureResult
from .tree import induce_cart, induce_from_dataset

MEASURES = ("bestNode", "eliteNN", "linearDiscr", "naiveBayes", "oneNN", "randomNode", "worstNode")
METRICS = ("accuracy", "balanced_accuracy", "kappa")


class ClassTooSmall(UserWarning):
    pass


@dataclass(frozen=True)
class FoldPlan:
    assignment: np.ndarray
    k: int
    seed: int

    def split(self, fold: int):
        test = np.flatnonzero(self.assignment == fold)
        train = np.flatnonzero(self.assignment != fold)
        return train, test

    def __iter__(self):
        return (self.split(f) for f in range(self.k))


def make_folds(y, k: int, seed: int = 0) -> FoldPlan:
    """Stratified fold assignment.

    Each class is shuffled and dealt round-robin, continuing where the
    previous class stopped, so per-class and overall fold sizes differ by at
    most one.
    """
    y = np.asarray(y)
    n = len(y)
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of instances ({n})")
    rng = np.random.default_rng(seed)
    classes, counts = np.unique(y, return_counts=True)
    if np.any(counts < k):
        warnings.warn(f"some classes have fewer than {k} instances; folds will miss them", ClassTooSmall)
    assignment = np.empty(n, dtype=int)
    offset = 0
    for cls in classes:
        idx = rng.permutation(np.flatnonzero(y == cls))
        assignment[idx] = (offset + np.arange(len(idx))) % k
        offset += len(idx)
    return FoldPlan(assignment, k, seed)


def score(predictions, truths, metric: str = "accuracy") -> float:
    predictions = np.asarray(predictions)
    truths = np.asarray(truths)
    if metric == "accuracy":
        return float(np.mean(predictions == truths))
    if metric == "balanced_accuracy":
        recalls = [np.mean(predictions[truths == c] == c) for c in np.unique(truths)]
        return float(np.mean(recalls))
    if metric == "kappa":
        labels = np.union1d(predictions, truths)
        p_o = np.mean(predictions == truths)
        p_e = sum(np.mean(predictions == c) * np.mean(truths == c) for c in labels)
        if p_e >= 1.0:
            return 0.0
        return float((p_o - p_e) / (1.0 - p_e))
    raise ValueError(f"unknown metric {metric!r}")


def one_nn(X_train, y_train, X_test) -> np.ndarray:
    """1-nearest-neighbour labels; distance ties go to the lowest training index."""
    out = np.empty(len(X_test), dtype=int)
    sq_train = np.sum(X_train ** 2, axis=1)
    for start in range(0, len(X_test), 256):
        block = X_test[start:start + 256]
        dist = np.sum(block ** 2, axis=1)[:, None] - 2.0 * block @ X_train.T + sq_train[None, :]
        out[start:start + 256] = y_train[np.argmin(dist, axis=1)]
    return out


class NaiveBayes:
    """Gaussian likelihoods for numeric attributes, Laplace-smoothed frequencies for categorical ones."""

    def __init__(self, columns_train, y_train, q, n_categories):
        self.q = q
        self.present = np.unique(y_train)
        counts = np.bincount(y_train, minlength=q)
        self.log_prior = np.full(q, -np.inf)
        self.log_prior[self.present] = np.log(counts[self.present] / len(y_train))
        self.params = []
        for col, phi in zip(columns_train, n_categories):
            if col.dtype == object:
                tables = {}
                for c in self.present:
                    vals, cnt = np.unique(col[y_train == c], return_counts=True)
                    tables[c] = (dict(zip(vals.tolist(), cnt.tolist())), counts[c] + phi)
                self.params.append(("cat", tables))
            else:
                mu = np.zeros(q)
                var = np.ones(q)
                for c in self.present:
                    xc = col[y_train == c]
                    mu[c] = xc.mean()
                    var[c] = xc.var()
                floor = 1e-9 * max(np.var(col), 1.0)
                self.params.append(("num", (mu, var + floor)))

    def predict(self, columns_test) -> np.ndarray:
        n = len(columns_test[0])
        logp = np.tile(self.log_prior, (n, 1))
        for col, (kind, par) in zip(columns_test, self.params):
            if kind == "num":
                mu, var = par
                logp += -0.5 * np.log(2 * np.pi * var)[None, :] - (col[:, None] - mu[None, :]) ** 2 / (2 * var[None, :])
            else:
                for c in self.present:
                    table, denom = par[c]
                    logp[:, c] += np.log(np.array([table.get(v, 0) + 1 for v in col.tolist()]) / denom)
        return np.argmax(logp, axis=1)


class SingularCovariance(ArithmeticError):
    pass


def linear_discriminant(X_train, y_train, q, X_test) -> np.ndarray:
    """Pooled-covariance LDA; raises SingularCovariance when the pooled matrix is rank deficient."""
    present = np.unique(y_train)
    n, p = X_train.shape
    if n - len(present) <= 0:
        raise SingularCovariance("not enough instances")
    means = {c: X_train[y_train == c].mean(axis=0) for c in present}
    centered = np.vstack([X_train[y_train == c] - means[c] for c in present])
    pooled = centered.T @ centered / (n - len(present))
    if p == 0 or np.linalg.matrix_rank(pooled) < p:
        raise SingularCovariance("pooled covariance is singular")
    inv = np.linalg.inv(pooled)
    scores = np.empty((len(X_test), len(present)))
    for j, c in enumerate(present):
        w = inv @ means[c]
        prior = np.mean(y_train == c)
        scores[:, j] = X_test @ w - 0.5 * means[c] @ w + np.log(prior)
    return present[np.argmax(scores, axis=1)]


def _numeric_view(dataset, drop_redundant_dummy=False):
    """Binarized, min-max scaled matrix plus the source attribute of each column."""
    cols, owner = [], []
    for j, col in enumerate(dataset.columns):
        if col.is_numeric:
            cols.append(col.values)
            owner.append(j)
        else:
            cats = col.categories[:-1] if drop_redundant_dummy and col.distinct_count > 1 else col.categories
            for k, _ in enumerate(cats):
                cols.append((col.codes == k).astype(float))
                owner.append(j)
    if not cols:
        return np.empty((dataset.n, 0)), np.array([], dtype=int)
    X = np.column_stack(cols)
    lo, span = X.min(axis=0), np.ptp(X, axis=0)
    X = (X - lo) / np.where(span > 0, span, 1.0)
    return X, np.array(owner)


def _stump_score(column, y, q, train, test, metric):
    tree = induce_cart([column[train]], y[train], q, min_split=2, complexity=0.0, max_depth=1)
    pred = tree.predict([column[test]])
    return score(pred, y[test], metric)


def extract_landmarking(dataset, folds: int = 10, metric: str = "accuracy", seed: int = 0,
                        importance=None) -> list:
    """Per-fold scores for the seven landmarkers.

    ``importance`` is the attribute importance of a tree induced on the
    whole dataset; it is computed here when not supplied.
    """
    y, q, d = dataset.y, dataset.q, dataset.d
    if importance is None:
        importance = induce_from_dataset(dataset).importance
    importance = np.asarray(importance, dtype=float)
    plan = make_folds(y, folds, seed)
    rng = np.random.default_rng(seed)
    random_attr = int(rng.integers(d)) if d else 0
    best_attr = int(np.argmax(importance)) if d else 0
    worst_attr = int(np.argmin(importance)) if d else 0
    elite = np.flatnonzero(importance > importance.mean())
    if elite.size == 0:
        elite = np.array([best_attr])

    X, owner = _numeric_view(dataset)
    X_lda, _ = _numeric_view(dataset, drop_redundant_dummy=True)
    elite_cols = np.isin(owner, elite)
    raw_cols = [c.values for c in dataset.columns]
    n_categories = [c.distinct_count for c in dataset.columns]

    scores = {name: [] for name in MEASURES}
    lda_failed = []
    for fold, (train, test) in enumerate(plan):
        yt, ys = y[train], y[test]
        if d == 0:
            for name in MEASURES:
                scores[name].append(score(np.full(len(test), np.bincount(yt).argmax()), ys, metric))
            continue
        scores["bestNode"].append(_stump_score(raw_cols[best_attr], y, q, train, test, metric))
        scores["worstNode"].append(_stump_score(raw_cols[worst_attr], y, q, train, test, metric))
        scores["randomNode"].append(_stump_score(raw_cols[random_attr], y, q, train, test, metric))
        scores["oneNN"].append(score(one_nn(X[train], yt, X[test]), ys, metric))
        Xe = X[:, elite_cols]
        scores["eliteNN"].append(score(one_nn(Xe[train], yt, Xe[test]), ys, metric))
        nb = NaiveBayes([c[train] for c in raw_cols], yt, q, n_categories)
        scores["naiveBayes"].append(score(nb.predict([c[test] for c in raw_cols]), ys, metric))
        try:
            pred = linear_discriminant(X_lda[train], yt, q, X_lda[test])
            scores["linearDiscr"].append(score(pred, ys, metric))
        except SingularCovariance:
            scores["linearDiscr"].append(np.nan)
            lda_failed.append(fold)

    out = []
    for name in MEASURES:
        if name == "linearDiscr":
            out.append(MeasureResult(name, scores[name], failed=tuple(lda_failed), context={"size": folds}))
        else:
            out.append(MeasureResult(name, scores[name]))
    return out
