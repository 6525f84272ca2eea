"""Active learning for random-feature multiple kernel regression.

An ensemble of random-Fourier-feature kernel models is trained online
(per-kernel SGD combined by exponential weights) or by batch least
squares, while a selection criterion (EKD, EKL, QBC, EMC or random)
decides which pool point to label next.  ``mkal-bench`` runs multi-trial
comparisons between the criteria.
"""

from . import backends
from .active_loop import LabelOracle, PoolState, TraceEntry, run, step
from .batch_solver import (
    BatchFit,
    batch_predict,
    batch_predict_matrix,
    fit,
    fit_theta,
    fit_weights,
    online_predict,
    online_predict_matrix,
)
from .bench_cli import RunReport, TrialResult, emit_report, run_experiment
from .criteria import (
    CRITERIA,
    FeatureCache,
    pool_predictions,
    pool_scores,
    score_ekd,
    score_ekl,
    score_emc,
    score_qbc,
    select,
)
from .data import (
    Dataset,
    ExperimentConfig,
    TransformRecord,
    load_csv,
    save_csv,
    standardize,
    subsample,
    synthetic,
)
from .ensemble import Ensemble, exp_weights
from .kernel_model import KernelModel, squared_loss
from .rff import (
    FeatureMap,
    KernelSpec,
    build_dictionary,
    build_feature_map,
    dictionary_variance,
    exact_kernel,
    feature_matrix,
    feature_vector,
)
from .seeding import derive_seed

__version__ = "0.1.0"

__all__ = [
    "BatchFit",
    "CRITERIA",
    "Dataset",
    "Ensemble",
    "ExperimentConfig",
    "FeatureCache",
    "FeatureMap",
    "KernelModel",
    "KernelSpec",
    "LabelOracle",
    "PoolState",
    "RunReport",
    "TraceEntry",
    "TransformRecord",
    "TrialResult",
    "backends",
    "batch_predict",
    "batch_predict_matrix",
    "build_dictionary",
    "build_feature_map",
    "derive_seed",
    "dictionary_variance",
    "emit_report",
    "exact_kernel",
    "exp_weights",
    "feature_matrix",
    "feature_vector",
    "fit",
    "fit_theta",
    "fit_weights",
    "load_csv",
    "online_predict",
    "online_predict_matrix",
    "pool_predictions",
    "pool_scores",
    "run",
    "run_experiment",
    "save_csv",
    "score_ekd",
    "score_ekl",
    "score_emc",
    "score_qbc",
    "select",
    "squared_loss",
    "standardize",
    "step",
    "subsample",
    "synthetic",
]
