"""Selection criteria scoring the pool and picking the next query point.

Four informativeness scores over the P per-kernel predictions at one
candidate: ekd (reliability-weighted expected pairwise discrepancy), ekl
(reliability-weighted expected loss against the combined prediction), qbc
(committee variance) and emc (mean squared change against the combined
model), plus uniform random selection as the baseline.  All scores use
the same squared loss as training.
"""

import numpy as np

from . import backends
from .rff import feature_matrix

# Report row order (baselines first); also the CLI argument choices.
CRITERIA = ("random", "qbc", "emc", "ekl", "ekd")


def _as_row(predictions):
    arr = np.ascontiguousarray(predictions, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"predictions must be a nonempty vector, got shape {arr.shape}")
    return arr


def _check_pmf(weights, length):
    w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.shape != (length,):
        raise ValueError(f"weights length {w.shape} does not match predictions ({length})")
    if not np.all(np.isfinite(w)) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("weights must be a valid PMF (nonnegative, summing to 1)")
    return w


def score_ekd(predictions, weights):
    """sum_j p_j sum_i p_i (f_i - f_j)^2 over the kernel predictions."""
    f = _as_row(predictions)
    w = _check_pmf(weights, f.size)
    return float(backends.ekd_scores(f.reshape(1, -1), w)[0])


def score_ekl(predictions, weights):
    """sum_i p_i (fbar - f_i)^2 where fbar is the weighted combination."""
    f = _as_row(predictions)
    w = _check_pmf(weights, f.size)
    return float(backends.ekl_scores(f.reshape(1, -1), w)[0])


def score_qbc(predictions):
    """Population variance of the committee predictions."""
    f = _as_row(predictions)
    return float(backends.qbc_scores(f.reshape(1, -1))[0])


def score_emc(predictions, combined):
    """(1/P) sum_i (f_i - combined)^2 against the current combined prediction."""
    f = _as_row(predictions)
    c = np.ascontiguousarray([combined], dtype=np.float64)
    return float(backends.emc_scores(f.reshape(1, -1), c)[0])


class FeatureCache:
    """Per-kernel feature matrices over the full sample set.

    Trades memory (2D * M floats per kernel) for skipping the per-step
    re-embedding of the pool; toggled by ExperimentConfig.cache_features.
    """

    def __init__(self, maps, X):
        self._mats = [feature_matrix(m, X) for m in maps]

    def matrix(self, kernel_index):
        return self._mats[kernel_index]

    def predictions(self, kernel_index, theta):
        return self._mats[kernel_index] @ theta


def pool_predictions(ensemble, X, unlabeled, cache=None):
    """Per-kernel prediction matrix (|pool|, P) for the unlabeled candidates."""
    n = len(unlabeled)
    preds = np.empty((n, ensemble.num_kernels))
    if cache is not None:
        for i, model in enumerate(ensemble.models):
            preds[:, i] = cache.predictions(i, model.theta)[unlabeled]
    else:
        X_pool = X[unlabeled]
        for i, model in enumerate(ensemble.models):
            preds[:, i] = feature_matrix(model.map, X_pool) @ model.theta
    return preds


def pool_scores(pred_matrix, weights, kind):
    """Apply one criterion to every row of a (|pool|, P) prediction matrix."""
    preds = np.ascontiguousarray(pred_matrix, dtype=np.float64)
    if kind == "ekd":
        return backends.ekd_scores(preds, weights)
    if kind == "ekl":
        return backends.ekl_scores(preds, weights)
    if kind == "qbc":
        return backends.qbc_scores(preds)
    if kind == "emc":
        combined = np.ascontiguousarray(preds @ weights)
        return backends.emc_scores(preds, combined)
    raise ValueError(f"unknown criterion {kind!r} (choose from {CRITERIA})")


def select(ensemble, pool, X, kind, rng, cache=None):
    """Pick the next query from the pool; returns (sample index, score).

    Non-random criteria take the argmax score with ties broken towards the
    smallest sample index; "random" draws uniformly from rng and reports a
    NaN score.
    """
    unlabeled = pool.unlabeled_indices()
    if len(unlabeled) == 0:
        raise ValueError("cannot select from an empty pool")
    if kind == "random":
        return int(unlabeled[rng.integers(len(unlabeled))]), float("nan")
    if kind not in CRITERIA:
        raise ValueError(f"unknown criterion {kind!r} (choose from {CRITERIA})")
    preds = pool_predictions(ensemble, X, unlabeled, cache=cache)
    scores = pool_scores(preds, ensemble.weights, kind)
    # unlabeled is ascending and argmax returns the first maximum, so ties
    # resolve to the smallest sample index.
    best = int(np.argmax(scores))
    return int(unlabeled[best]), float(scores[best])
