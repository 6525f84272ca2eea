"""Single-kernel linear predictor in random-feature space with SGD updates."""

import numpy as np

from .rff import feature_vector


def squared_loss(yhat, y):
    """Least-square loss (yhat - y)^2."""
    diff = yhat - y
    return diff * diff


class KernelModel:
    """Parameter vector theta of length 2D over one feature map.

    ``predict`` is pure; ``sgd_step`` mutates theta in place and must be
    serialized per model (distinct models may update in parallel).
    """

    def __init__(self, fmap, theta=None):
        self.map = fmap
        if theta is None:
            theta = np.zeros(2 * fmap.num_features)
        else:
            theta = np.asarray(theta, dtype=np.float64).copy()
            if theta.shape != (2 * fmap.num_features,):
                raise ValueError(
                    f"theta must have length {2 * fmap.num_features}, got {theta.shape}"
                )
        self.theta = theta

    def predict(self, x):
        return float(self.theta @ feature_vector(self.map, x))

    def predict_features(self, z):
        """Prediction from a precomputed feature vector (pool-cache path)."""
        return float(self.theta @ z)

    def sgd_step(self, x, y, eta_l):
        """theta <- theta - eta_l * 2 (theta.z - y) z on the sample (x, y).

        eta_l = 0 is allowed as an exact no-op (frozen learning).
        """
        if eta_l < 0:
            raise ValueError(f"eta_l must be nonnegative, got {eta_l}")
        x = np.asarray(x, dtype=np.float64)
        if not (np.all(np.isfinite(x)) and np.isfinite(y)):
            raise ValueError("non-finite sample passed to sgd_step")
        z = feature_vector(self.map, x)
        residual = float(self.theta @ z) - y
        self.theta -= eta_l * 2.0 * residual * z
