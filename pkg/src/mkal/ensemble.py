"""Ensemble of kernel models combined by exponential-weights reliabilities.

The combined predictor is sum_i p_i * f_i(x) where the reliability PMF p
is the softmax of -eta_g * cumulative per-kernel losses, refreshed after
every labeled sample.
"""

import numpy as np

from .kernel_model import KernelModel


def exp_weights(total_losses, eta_g):
    """Softmax of -eta_g * losses, max-shifted so large losses cannot overflow."""
    logits = -eta_g * np.asarray(total_losses, dtype=np.float64)
    logits -= logits.max()
    w = np.exp(logits)
    w /= w.sum()
    return w


class Ensemble:
    """P kernel models, their reliability PMF and cached cumulative losses."""

    def __init__(self, models, eta_g):
        if not models:
            raise ValueError("ensemble needs at least one kernel model")
        if eta_g < 0:
            raise ValueError(f"eta_g must be nonnegative, got {eta_g}")
        self.models = list(models)
        self.eta_g = float(eta_g)
        p = len(self.models)
        self.cum_losses = np.zeros(p)
        self.weights = np.full(p, 1.0 / p)

    @classmethod
    def from_maps(cls, maps, eta_g):
        return cls([KernelModel(m) for m in maps], eta_g)

    @property
    def num_kernels(self):
        return len(self.models)

    def kernel_predictions(self, x):
        """Vector of the P per-kernel predictions at x."""
        return np.array([m.predict(x) for m in self.models])

    def combined_predict(self, x):
        return float(self.weights @ self.kernel_predictions(x))

    def update_weights(self, per_kernel_losses):
        """Accumulate the per-kernel losses and refresh the reliability PMF."""
        losses = np.asarray(per_kernel_losses, dtype=np.float64)
        if losses.shape != (self.num_kernels,):
            raise ValueError(
                f"expected {self.num_kernels} losses, got shape {losses.shape}"
            )
        if not np.all(np.isfinite(losses)) or np.any(losses < 0):
            raise ValueError("per-kernel losses must be finite and nonnegative")
        self.cum_losses += losses
        self.weights = exp_weights(self.cum_losses, self.eta_g)
