"""Pool-based sequential active learning loop.

Each iteration selects one unlabeled sample by the configured criterion,
queries its label, records the per-kernel prequential losses, applies one
SGD step to every kernel model, refreshes the reliability weights with
the recorded losses, and moves the sample from the pool to the labeled
set.  Losses are measured before the SGD update so the weight update sees
each kernel's prediction at the time the sample was queried.
"""

from dataclasses import dataclass

import numpy as np

from .criteria import FeatureCache, select
from .ensemble import Ensemble
from .rff import build_dictionary
from .seeding import derive_seed


class PoolState:
    """Partition of sample indices into the unlabeled pool and labeled set."""

    def __init__(self, num_samples):
        if num_samples < 1:
            raise ValueError(f"num_samples must be >= 1, got {num_samples}")
        self.num_samples = int(num_samples)
        self._labeled_mask = np.zeros(self.num_samples, dtype=bool)
        self.labeled = []  # acquisition order; position k was labeled at time k+1

    def unlabeled_indices(self):
        """Unlabeled sample indices in ascending order."""
        return np.flatnonzero(~self._labeled_mask)

    @property
    def num_unlabeled(self):
        return self.num_samples - len(self.labeled)

    def is_labeled(self, index):
        return bool(self._labeled_mask[index])

    def mark_labeled(self, index):
        index = int(index)
        if not 0 <= index < self.num_samples:
            raise ValueError(f"index {index} out of range [0, {self.num_samples})")
        if self._labeled_mask[index]:
            raise RuntimeError(f"sample {index} was already labeled")
        self._labeled_mask[index] = True
        self.labeled.append(index)

    def check_invariants(self):
        """Partition sanity: labeled and unlabeled are disjoint and exhaustive."""
        labeled = set(self.labeled)
        if len(labeled) != len(self.labeled):
            raise RuntimeError("labeled set contains duplicates")
        if labeled != set(np.flatnonzero(self._labeled_mask)):
            raise RuntimeError("labeled list and mask disagree")
        if len(labeled) + self.num_unlabeled != self.num_samples:
            raise RuntimeError("pool partition is not exhaustive")


class LabelOracle:
    """Lookup of true labels, hidden from the selection step."""

    def __init__(self, labels):
        labels = np.asarray(labels, dtype=np.float64)
        if labels.ndim != 1:
            raise ValueError("labels must be a vector")
        if not np.all(np.isfinite(labels)):
            raise ValueError("labels must be finite")
        self._labels = labels

    def query(self, index):
        return float(self._labels[index])


@dataclass
class TraceEntry:
    """What one iteration did: choice, score, losses and resulting weights."""

    step: int
    index: int
    score: float
    losses: np.ndarray
    weights: np.ndarray


def step(ensemble, pool, oracle, X, kind, eta_l, rng, cache=None, forced_index=None):
    """Run one iteration; mutates ensemble and pool, returns a TraceEntry."""
    if pool.num_unlabeled == 0:
        raise ValueError("cannot step with an empty pool")
    if forced_index is None:
        index, score = select(ensemble, pool, X, kind, rng, cache=cache)
    else:
        index, score = int(forced_index), float("nan")
    x = X[index]
    y = oracle.query(index)
    preds = ensemble.kernel_predictions(x)
    losses = (preds - y) ** 2
    for model in ensemble.models:
        model.sgd_step(x, y, eta_l)
    ensemble.update_weights(losses)
    pool.mark_labeled(index)
    return TraceEntry(
        step=len(pool.labeled),
        index=index,
        score=score,
        losses=losses,
        weights=ensemble.weights.copy(),
    )


def run(dataset, config, *, criterion=None, budget=None, map_seed=None,
        rng_seed=None, forced=None):
    """Run the full loop for one criterion and budget.

    Defaults come from ``config`` (first criterion / budget fraction /
    master seed); the keyword overrides let the benchmark drive per-trial
    seeds and per-cell budgets.  ``forced`` replays a recorded selection
    sequence instead of scoring the pool.

    Returns (ensemble, pool, trace) where trace has one entry per step.
    """
    X = dataset.features
    M = X.shape[0]
    if criterion is None:
        criterion = config.criteria[0]
    if budget is None:
        budget = int(round(config.budget_fractions[0] * M))
    if not 0 <= budget < M:
        raise ValueError(f"budget must satisfy 0 <= T < M, got T={budget}, M={M}")
    if map_seed is None:
        map_seed = config.seed
    if rng_seed is None:
        rng_seed = derive_seed(map_seed, "select", criterion)
    if forced is not None:
        forced = list(forced)
        if len(forced) != budget:
            raise ValueError(
                f"forced selection sequence has {len(forced)} entries, budget is {budget}"
            )

    maps = build_dictionary(config.num_kernels, X.shape[1], config.rf_dim, map_seed)
    ensemble = Ensemble.from_maps(maps, config.eta_g)
    pool = PoolState(M)
    oracle = LabelOracle(dataset.labels)
    cache = FeatureCache(maps, X) if config.cache_features else None
    rng = np.random.default_rng(rng_seed)

    trace = []
    for t in range(1, budget + 1):
        entry = step(
            ensemble, pool, oracle, X, criterion, config.eta_l, rng,
            cache=cache,
            forced_index=None if forced is None else forced[t - 1],
        )
        trace.append(entry)
        if len(pool.labeled) != t:
            raise RuntimeError(f"labeled-set size {len(pool.labeled)} != step {t}")
    return ensemble, pool, trace
