"""Supervised fitting from the labeled set, plus the online alternative.

Per kernel, theta solves min ||Z theta - y||^2 (+ ridge ||theta||^2) where
Z stacks the labeled feature vectors row-wise; the solve goes through an
SVD-based least-squares routine (minimum-norm when underdetermined), never
an explicit pseudo-inverse.  Cost is O(T * (2D)^2) per kernel.  Kernel
weights reuse the exponential-weights rule on total training losses.  The
online route skips all of this and just evaluates the final ensemble from
the active-learning loop.
"""

from dataclasses import dataclass

import numpy as np

from .ensemble import exp_weights
from .rff import feature_matrix


def _check_xy(X, y):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise ValueError(f"bad labeled data shapes {X.shape}, {y.shape}")
    if X.shape[0] == 0:
        raise ValueError("labeled set is empty")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise ValueError("labeled data contains non-finite values")
    return X, y


def fit_theta(fmap, X, y, ridge=0.0):
    """Least-squares parameters for one kernel over the labeled samples.

    ridge=0 gives the minimum-norm solution; ridge>0 solves the ridge
    problem through the same factorization by row-augmenting Z with
    sqrt(ridge) * I.
    """
    X, y = _check_xy(X, y)
    if ridge < 0:
        raise ValueError(f"ridge must be nonnegative, got {ridge}")
    Z = feature_matrix(fmap, X)
    if ridge > 0:
        dim = Z.shape[1]
        Z = np.vstack([Z, np.sqrt(ridge) * np.eye(dim)])
        y = np.concatenate([y, np.zeros(dim)])
    theta, *_ = np.linalg.lstsq(Z, y, rcond=None)
    return theta


def total_losses(thetas, maps, X, y):
    """Total squared training loss of each fitted kernel."""
    X, y = _check_xy(X, y)
    totals = np.empty(len(maps))
    for i, (theta, fmap) in enumerate(zip(thetas, maps)):
        resid = feature_matrix(fmap, X) @ theta - y
        totals[i] = resid @ resid
    return totals


def fit_weights(thetas, maps, X, y, eta_g):
    """Reliability PMF: softmax of -eta_g * total training losses."""
    return exp_weights(total_losses(thetas, maps, X, y), eta_g)


@dataclass
class BatchFit:
    """Per-kernel least-squares parameters and their reliability PMF."""

    thetas: list
    weights: np.ndarray


def fit(maps, X, y, eta_g, ridge=0.0):
    """Fit every kernel on the labeled set and weight them by total loss."""
    thetas = [fit_theta(m, X, y, ridge=ridge) for m in maps]
    return BatchFit(thetas=thetas, weights=fit_weights(thetas, maps, X, y, eta_g))


def batch_predict(bfit, maps, x):
    """Combined supervised prediction sum_i p_i theta_i . z_i(x) at one point."""
    x = np.asarray(x, dtype=np.float64)
    return float(batch_predict_matrix(bfit, maps, x.reshape(1, -1))[0])


def batch_predict_matrix(bfit, maps, X):
    """Combined supervised predictions for every row of X."""
    X = np.asarray(X, dtype=np.float64)
    out = np.zeros(X.shape[0])
    for weight, theta, fmap in zip(bfit.weights, bfit.thetas, maps):
        if weight != 0.0:
            out += weight * (feature_matrix(fmap, X) @ theta)
    return out


def online_predict(ensemble, x):
    """The online learned function: exactly the ensemble's combined prediction."""
    return ensemble.combined_predict(x)


def online_predict_matrix(ensemble, X):
    """Combined online predictions for every row of X."""
    X = np.asarray(X, dtype=np.float64)
    out = np.zeros(X.shape[0])
    for weight, model in zip(ensemble.weights, ensemble.models):
        if weight != 0.0:
            out += weight * (feature_matrix(model.map, X) @ model.theta)
    return out
