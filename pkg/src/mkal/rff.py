"""Random Fourier feature maps for a dictionary of Gaussian kernels.

Each map draws D frequency vectors from the Gaussian kernel's spectral
measure (zero-mean normal with covariance I/variance) and embeds an input
x as (1/sqrt(D)) * [sin(v_l.x), ..., cos(v_l.x), ...], so the inner
product of two embeddings is an unbiased estimate of the kernel value.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backends
from .seeding import derive_seed


@dataclass(frozen=True)
class KernelSpec:
    """A Gaussian kernel exp(-||x - x'||^2 / (2 * variance))."""

    variance: float

    def __post_init__(self):
        if not (np.isfinite(self.variance) and self.variance > 0):
            raise ValueError(f"kernel variance must be positive, got {self.variance}")


@dataclass(frozen=True)
class FeatureMap:
    """Frozen random-frequency matrix realizing one kernel's feature map.

    ``frequencies`` has shape (num_features, input_dim) and is made
    read-only, so maps can be shared freely across threads.
    """

    frequencies: np.ndarray = field(repr=False)
    kernel: KernelSpec
    seed: int

    def __post_init__(self):
        self.frequencies.flags.writeable = False

    @property
    def num_features(self):
        return self.frequencies.shape[0]

    @property
    def input_dim(self):
        return self.frequencies.shape[1]


def build_feature_map(kernel, input_dim, num_features, seed):
    """Draw the frequency matrix for one kernel; bit-reproducible per seed."""
    if input_dim < 1:
        raise ValueError(f"input_dim must be >= 1, got {input_dim}")
    if num_features < 1:
        raise ValueError(f"num_features must be >= 1, got {num_features}")
    rng = np.random.default_rng(seed)
    sigma = np.sqrt(kernel.variance)
    freqs = rng.normal(0.0, 1.0 / sigma, size=(num_features, input_dim))
    return FeatureMap(frequencies=freqs, kernel=kernel, seed=int(seed))


def dictionary_variance(index):
    """Bandwidth of kernel ``index`` (1-based) in the standard dictionary."""
    return 10.0 ** ((index - 3) / 2.0)


def build_dictionary(num_kernels, input_dim, num_features, seed):
    """Build the P-kernel dictionary with variances 10^((i-3)/2), i = 1..P.

    Per-map seeds are derived from (seed, kernel index) so the whole
    dictionary regenerates exactly from the master seed.
    """
    if num_kernels < 1:
        raise ValueError(f"num_kernels must be >= 1, got {num_kernels}")
    maps = []
    for i in range(1, num_kernels + 1):
        spec = KernelSpec(variance=dictionary_variance(i))
        maps.append(
            build_feature_map(spec, input_dim, num_features, derive_seed(seed, i))
        )
    return maps


def feature_vector(fmap, x):
    """Embed one input: (1/sqrt(D)) * [sin block, cos block], length 2D."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != fmap.input_dim:
        raise ValueError(
            f"expected input of length {fmap.input_dim}, got shape {x.shape}"
        )
    proj = fmap.frequencies @ x
    return backends.sincos_features(proj.reshape(1, -1))[0]


def feature_matrix(fmap, X):
    """Embed rows of X, returning an (N, 2D) feature matrix."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != fmap.input_dim:
        raise ValueError(
            f"expected inputs of shape (N, {fmap.input_dim}), got {X.shape}"
        )
    proj = np.ascontiguousarray(X @ fmap.frequencies.T)
    return backends.sincos_features(proj)


def exact_kernel(spec, x, x_prime):
    """Closed-form Gaussian kernel value, the oracle for the RF estimate."""
    x = np.asarray(x, dtype=np.float64)
    x_prime = np.asarray(x_prime, dtype=np.float64)
    if x.shape != x_prime.shape:
        raise ValueError(f"mismatched input shapes {x.shape} vs {x_prime.shape}")
    sq_dist = float(np.sum((x - x_prime) ** 2))
    return float(np.exp(-sq_dist / (2.0 * spec.variance)))
