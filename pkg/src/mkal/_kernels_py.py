"""Pure-numpy implementations of the hot inner kernels.

Same signatures as the compiled module ``mkal._kernels``; which one is
active is decided in :mod:`mkal.backends`.  All functions expect float64
arrays and do no validation of their own (callers validate).
"""

import numpy as np

NAME = "python"


def sincos_features(proj):
    """Map projected inputs (N, D) to trig features (N, 2D).

    Columns 0..D-1 hold sin, columns D..2D-1 hold cos, both scaled by
    1/sqrt(D) so each output row has unit Euclidean norm.
    """
    n, d = proj.shape
    out = np.empty((n, 2 * d))
    np.sin(proj, out=out[:, :d])
    np.cos(proj, out=out[:, d:])
    out *= 1.0 / np.sqrt(d)
    return out


def ekd_scores(preds, weights):
    """Expected pairwise squared discrepancy under the reliability PMF.

    sum_j w_j sum_i w_i (f_i - f_j)^2 == 2 * (E[f^2] - E[f]^2) per row.
    """
    m1 = preds @ weights
    m2 = (preds * preds) @ weights
    return np.maximum(2.0 * (m2 - m1 * m1), 0.0)


def ekl_scores(preds, weights):
    """Expected squared loss between the combined and each kernel prediction.

    With fbar = sum_i w_i f_i this is sum_i w_i (fbar - f_i)^2, the
    weighted variance of each row.
    """
    m1 = preds @ weights
    m2 = (preds * preds) @ weights
    return np.maximum(m2 - m1 * m1, 0.0)


def qbc_scores(preds):
    """Population variance of the committee predictions per row."""
    m1 = preds.mean(axis=1)
    m2 = (preds * preds).mean(axis=1)
    return np.maximum(m2 - m1 * m1, 0.0)


def emc_scores(preds, combined):
    """Mean squared difference between each prediction and the combined one."""
    diff = preds - combined[:, None]
    return (diff * diff).mean(axis=1)
