"""Dataset ingestion, preprocessing, synthetic problems and run configuration.

CSV loading is deliberately forgiving: rows with missing or unparseable
cells are dropped and counted rather than failing the whole file, since
the UCI exports this targets are messy.  Standardization z-scores the
feature columns and min-max scales labels to [0, 1]; the returned
transform record can invert predictions back to the original label scale.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .criteria import CRITERIA
from .rff import KernelSpec, build_feature_map, feature_matrix
from .seeding import derive_seed

SYNTHETIC_KINDS = ("single-kernel", "sinc", "step")
INFERENCE_MODES = ("online", "supervised")


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    name: str = "dataset"
    n_dropped: int = 0

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.float64)
        if self.features.ndim != 2 or self.labels.ndim != 1:
            raise ValueError("features must be 2-D and labels 1-D")
        if self.features.shape[0] != self.labels.shape[0]:
            raise ValueError(
                f"{self.features.shape[0]} feature rows vs {self.labels.shape[0]} labels"
            )
        if self.features.shape[0] < 2:
            raise ValueError("dataset needs at least 2 samples")
        if self.features.shape[1] < 1:
            raise ValueError("dataset needs at least 1 feature")
        if not (np.all(np.isfinite(self.features)) and np.all(np.isfinite(self.labels))):
            raise ValueError("dataset contains non-finite entries")

    @property
    def num_samples(self):
        return self.features.shape[0]

    @property
    def input_dim(self):
        return self.features.shape[1]


def _parse_cell(cell):
    text = cell.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    return value if np.isfinite(value) else None


def load_csv(path, label_column):
    """Load a numeric CSV; drops (and counts) malformed rows.

    ``label_column`` is a column name (requires a header row) or a 0-based
    index.  A header is detected when the first row has any non-numeric
    cell.  Row order of the surviving rows is preserved.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError(f"{path}: file has no rows")

    first_parsed = [_parse_cell(c) for c in rows[0]]
    has_header = any(v is None for v in first_parsed)
    header = [c.strip() for c in rows[0]] if has_header else None
    data_rows = rows[1:] if has_header else rows
    if not data_rows:
        raise ValueError(f"{path}: no data rows (header only)")

    ncols = len(header) if header else len(rows[0])
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if header is None:
            raise ValueError(
                f"{path}: label column {label_column!r} needs a header row"
            )
        try:
            label_idx = header.index(label_column)
        except ValueError:
            raise ValueError(
                f"{path}: label column {label_column!r} not in header {header}"
            ) from None
    else:
        label_idx = int(label_column)
        if label_idx < 0:
            label_idx += ncols
        if not 0 <= label_idx < ncols:
            raise ValueError(f"{path}: label column index {label_column} out of range")

    features, labels, bad_rows = [], [], []
    for lineno, row in enumerate(data_rows, start=2 if has_header else 1):
        if len(row) != ncols:
            bad_rows.append(lineno)
            continue
        parsed = [_parse_cell(c) for c in row]
        if any(v is None for v in parsed):
            bad_rows.append(lineno)
            continue
        labels.append(parsed[label_idx])
        features.append([v for i, v in enumerate(parsed) if i != label_idx])

    if not features:
        raise ValueError(
            f"{path}: no usable rows; first malformed lines: {bad_rows[:5]}"
        )
    name = str(path)
    return Dataset(
        features=np.array(features),
        labels=np.array(labels),
        name=name,
        n_dropped=len(bad_rows),
    )


def save_csv(ds, path):
    """Write a dataset back out (features x0..x{d-1}, label column 'y')."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{i}" for i in range(ds.input_dim)] + ["y"])
        for row, label in zip(ds.features, ds.labels):
            writer.writerow([repr(float(v)) for v in row] + [repr(float(label))])


@dataclass
class TransformRecord:
    """Forward/inverse parameters of one standardization pass."""

    feature_means: np.ndarray
    feature_scales: np.ndarray
    label_min: float
    label_max: float

    def inverse_labels(self, y):
        """Map predictions on the [0, 1] scale back to original label units."""
        return np.asarray(y) * (self.label_max - self.label_min) + self.label_min

    def to_dict(self):
        return {
            "feature_means": list(self.feature_means),
            "feature_scales": list(self.feature_scales),
            "label_min": self.label_min,
            "label_max": self.label_max,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            feature_means=np.array(d["feature_means"]),
            feature_scales=np.array(d["feature_scales"]),
            label_min=float(d["label_min"]),
            label_max=float(d["label_max"]),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def standardize(ds):
    """Z-score features, min-max labels to [0, 1]; returns (dataset, record).

    Constant feature columns map to all zeros; constant labels map to 0.
    """
    X = ds.features
    means = X.mean(axis=0)
    sds = X.std(axis=0)
    constant = sds <= 1e-12 * np.maximum(1.0, np.abs(means))
    scales = np.where(constant, 1.0, sds)
    Xs = (X - means) / scales
    Xs[:, constant] = 0.0

    y = ds.labels
    lmin, lmax = float(y.min()), float(y.max())
    ys = (y - lmin) / (lmax - lmin) if lmax > lmin else np.zeros_like(y)

    record = TransformRecord(
        feature_means=means, feature_scales=scales, label_min=lmin, label_max=lmax
    )
    out = Dataset(features=Xs, labels=ys, name=ds.name, n_dropped=ds.n_dropped)
    return out, record


def synthetic(kind, num_samples, input_dim, noise_sd, seed, *,
              rf_dim=50, kernel_variance=1.0, feature_map=None, theta=None):
    """Generate a desk-scale regression problem, deterministic per seed.

    Features are uniform on [-1, 1]^d.  Kinds: "single-kernel" plants a
    random-feature model (pass ``feature_map``/``theta`` to control the
    plant, e.g. to reuse a dictionary kernel), "sinc" uses sin(pi r)/(pi r)
    of the input norm, "step" thresholds the first coordinate.  Draw order
    from the seeded generator: features, then theta (single-kernel only,
    when not supplied), then noise (when noise_sd > 0).
    """
    if kind not in SYNTHETIC_KINDS:
        raise ValueError(f"unknown synthetic kind {kind!r} (choose from {SYNTHETIC_KINDS})")
    if num_samples < 2 or input_dim < 1:
        raise ValueError("need num_samples >= 2 and input_dim >= 1")
    if noise_sd < 0:
        raise ValueError(f"noise_sd must be nonnegative, got {noise_sd}")

    rng = np.random.default_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(num_samples, input_dim))

    if kind == "single-kernel":
        if feature_map is None:
            feature_map = build_feature_map(
                KernelSpec(kernel_variance), input_dim, rf_dim, derive_seed(seed, "map")
            )
        elif feature_map.input_dim != input_dim:
            raise ValueError(
                f"feature_map input_dim {feature_map.input_dim} != {input_dim}"
            )
        if theta is None:
            theta = rng.normal(size=2 * feature_map.num_features)
        signal = feature_matrix(feature_map, X) @ np.asarray(theta, dtype=np.float64)
    elif kind == "sinc":
        signal = np.sinc(np.linalg.norm(X, axis=1))
    else:
        signal = (X[:, 0] > 0).astype(np.float64)

    y = signal if noise_sd == 0 else signal + rng.normal(0.0, noise_sd, size=num_samples)
    return Dataset(features=X, labels=y, name=f"synthetic:{kind}")


def subsample(ds, size, seed):
    """Seeded uniform subsample without replacement, original row order kept."""
    if not 2 <= size <= ds.num_samples:
        raise ValueError(f"subsample size must be in [2, {ds.num_samples}], got {size}")
    if size == ds.num_samples:
        return ds
    rng = np.random.default_rng(seed)
    keep = np.sort(rng.choice(ds.num_samples, size=size, replace=False))
    return Dataset(
        features=ds.features[keep],
        labels=ds.labels[keep],
        name=f"{ds.name}[sub{size}]",
        n_dropped=ds.n_dropped,
    )


def evaluation_indices(num_samples, labeled):
    """The never-labeled indices; test error is measured on exactly these."""
    labeled = np.asarray(labeled, dtype=np.intp)
    mask = np.ones(num_samples, dtype=bool)
    mask[labeled] = False
    return np.flatnonzero(mask)


def holdout_indices(num_samples, budget):
    """Initial pool (the full index set) and the evaluation rule.

    There is no separate held-out split: after a run that labeled T
    samples, evaluation covers the M - T remaining ones.
    """
    if not 0 <= budget < num_samples:
        raise ValueError(f"budget must satisfy 0 <= T < M, got T={budget}, M={num_samples}")
    def eval_rule(labeled):
        return evaluation_indices(num_samples, labeled)
    return np.arange(num_samples), eval_rule


def budget_from_fraction(fraction, num_samples):
    """Rounded label budget T for a fraction of M; must land in [1, M)."""
    budget = int(round(fraction * num_samples))
    if not 1 <= budget < num_samples:
        raise ValueError(
            f"budget fraction {fraction} gives T={budget} outside [1, {num_samples})"
        )
    return budget


@dataclass
class ExperimentConfig:
    """Everything a benchmark run needs; validated on construction."""

    criteria: tuple = CRITERIA
    budget_fractions: tuple = (0.2, 0.25)
    num_kernels: int = 10
    rf_dim: int = 50
    eta_l: float = 0.05
    eta_g: float = 1.0
    ridge: float = 1e-8
    trials: int = 10
    seed: int = 0
    inference: str = "online"
    standardize: bool = True
    cache_features: bool = True
    parallel: int = 1

    def __post_init__(self):
        self.criteria = tuple(self.criteria)
        self.budget_fractions = tuple(float(f) for f in self.budget_fractions)
        if not self.criteria:
            raise ValueError("need at least one criterion")
        for c in self.criteria:
            if c not in CRITERIA:
                raise ValueError(f"unknown criterion {c!r} (choose from {CRITERIA})")
        if not self.budget_fractions:
            raise ValueError("need at least one budget fraction")
        for f in self.budget_fractions:
            if not 0.0 < f < 1.0:
                raise ValueError(f"budget fractions must lie in (0, 1), got {f}")
        if self.num_kernels < 1 or self.rf_dim < 1:
            raise ValueError("num_kernels and rf_dim must be >= 1")
        if self.eta_l <= 0 or self.eta_g <= 0:
            raise ValueError("eta_l and eta_g must be positive")
        if self.ridge < 0:
            raise ValueError("ridge must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.inference not in INFERENCE_MODES:
            raise ValueError(f"inference must be one of {INFERENCE_MODES}")
        if self.parallel < 1:
            raise ValueError("parallel must be >= 1")

    def to_dict(self):
        d = dict(self.__dict__)
        d["criteria"] = list(self.criteria)
        d["budget_fractions"] = list(self.budget_fractions)
        return d

    @classmethod
    def from_dict(cls, d):
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)
