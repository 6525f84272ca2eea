"""Random Fourier feature maps: construction, embedding, and the kernel oracle."""

import numpy as np
import pytest

from mkal.rff import (
    FeatureMap,
    KernelSpec,
    build_dictionary,
    build_feature_map,
    dictionary_variance,
    exact_kernel,
    feature_matrix,
    feature_vector,
)


# ---------------------------------------------------------------------------
# dictionary construction
# ---------------------------------------------------------------------------

def test_dictionary_variances_follow_the_half_decade_ladder():
    maps = build_dictionary(10, input_dim=2, num_features=4, seed=0)
    assert maps[0].kernel.variance == pytest.approx(0.1)   # i = 1
    assert maps[2].kernel.variance == pytest.approx(1.0)   # i = 3
    for i, m in enumerate(maps, start=1):
        assert m.kernel.variance == pytest.approx(10.0 ** ((i - 3) / 2))


def test_dictionary_variances_strictly_increase():
    maps = build_dictionary(10, input_dim=1, num_features=2, seed=3)
    variances = [m.kernel.variance for m in maps]
    assert all(a < b for a, b in zip(variances, variances[1:]))


def test_dictionary_variance_helper():
    assert dictionary_variance(1) == pytest.approx(0.1)
    assert dictionary_variance(3) == 1.0
    assert dictionary_variance(5) == pytest.approx(10.0)


def test_build_is_deterministic():
    a = build_dictionary(1, input_dim=2, num_features=4, seed=7)[0]
    b = build_dictionary(1, input_dim=2, num_features=4, seed=7)[0]
    np.testing.assert_array_equal(a.frequencies, b.frequencies)


def test_maps_in_one_dictionary_use_distinct_draws():
    maps = build_dictionary(3, input_dim=2, num_features=4, seed=7)
    assert len({m.seed for m in maps}) == 3
    # scale the narrow map's frequencies onto the wide map's: still different
    ratio = np.sqrt(maps[0].kernel.variance / maps[1].kernel.variance)
    assert not np.allclose(maps[0].frequencies * ratio, maps[1].frequencies)


def test_frequency_spread_matches_the_spectral_law():
    # spectral measure of a Gaussian kernel with bandwidth v has sd 1/sqrt(v)
    for variance in (0.1, 1.0, 10.0):
        fmap = build_feature_map(KernelSpec(variance), 3, 4000, seed=11)
        observed = fmap.frequencies.std()
        assert observed == pytest.approx(1.0 / np.sqrt(variance), rel=0.05)


def test_map_shape_and_properties():
    fmap = build_feature_map(KernelSpec(2.0), 5, 16, seed=1)
    assert fmap.frequencies.shape == (16, 5)
    assert fmap.num_features == 16
    assert fmap.input_dim == 5


def test_frequencies_are_read_only():
    fmap = build_feature_map(KernelSpec(1.0), 2, 4, seed=0)
    with pytest.raises(ValueError):
        fmap.frequencies[0, 0] = 0.0


@pytest.mark.parametrize("bad", [0, -1])
def test_bad_sizes_rejected(bad):
    with pytest.raises(ValueError):
        build_dictionary(bad, 2, 4, seed=0)
    with pytest.raises(ValueError):
        build_feature_map(KernelSpec(1.0), bad, 4, seed=0)
    with pytest.raises(ValueError):
        build_feature_map(KernelSpec(1.0), 2, bad, seed=0)


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan])
def test_bad_variance_rejected(bad):
    with pytest.raises(ValueError):
        KernelSpec(bad)


# ---------------------------------------------------------------------------
# feature vectors
# ---------------------------------------------------------------------------

def test_zero_input_gives_sin_zero_cos_one():
    D = 9
    fmap = build_feature_map(KernelSpec(1.0), 3, D, seed=2)
    z = feature_vector(fmap, np.zeros(3))
    np.testing.assert_array_equal(z[:D], np.zeros(D))
    np.testing.assert_allclose(z[D:], np.full(D, 1.0 / np.sqrt(D)), rtol=0, atol=0)
    assert z @ z == pytest.approx(1.0, abs=1e-12)


def test_unit_norm_for_random_inputs():
    rng = np.random.default_rng(5)
    for variance in (0.1, 1.0, 100.0):
        fmap = build_feature_map(KernelSpec(variance), 4, 33, seed=8)
        for _ in range(20):
            z = feature_vector(fmap, rng.normal(size=4))
            assert z @ z == pytest.approx(1.0, abs=1e-12)


def test_feature_matrix_matches_per_row_vectors():
    fmap = build_feature_map(KernelSpec(0.5), 3, 12, seed=4)
    X = np.random.default_rng(6).normal(size=(7, 3))
    Z = feature_matrix(fmap, X)
    assert Z.shape == (7, 24)
    for row, x in zip(Z, X):
        np.testing.assert_allclose(row, feature_vector(fmap, x), rtol=1e-12)


def test_dimension_mismatch_rejected():
    fmap = build_feature_map(KernelSpec(1.0), 3, 4, seed=0)
    with pytest.raises(ValueError):
        feature_vector(fmap, np.zeros(2))
    with pytest.raises(ValueError):
        feature_matrix(fmap, np.zeros((5, 2)))
    with pytest.raises(ValueError):
        feature_matrix(fmap, np.zeros(3))  # 1-D where a matrix is expected


# ---------------------------------------------------------------------------
# kernel approximation against the closed form
# ---------------------------------------------------------------------------

def test_exact_kernel_values():
    spec = KernelSpec(1.0)
    x = np.array([0.3, -0.2])
    assert exact_kernel(spec, x, x) == 1.0
    a, b = np.array([1.0, 0.0]), np.array([0.0, 1.0])  # squared distance 2
    assert exact_kernel(spec, a, b) == pytest.approx(np.exp(-1.0))
    narrow = KernelSpec(0.1)
    c, d = np.array([0.0]), np.array([1.0])  # squared distance 1
    assert exact_kernel(narrow, c, d) == pytest.approx(np.exp(-5.0))


def test_exact_kernel_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        exact_kernel(KernelSpec(1.0), np.zeros(2), np.zeros(3))


def test_inner_products_approximate_the_kernel():
    rng = np.random.default_rng(12)
    fmap = build_feature_map(KernelSpec(1.0), 3, 2000, seed=13)
    close = 0
    for _ in range(50):
        x, xp = rng.uniform(-1, 1, size=(2, 3))
        approx = feature_vector(fmap, x) @ feature_vector(fmap, xp)
        close += abs(approx - exact_kernel(fmap.kernel, x, xp)) <= 0.05
    assert close >= 48


def test_estimator_is_unbiased_over_rebuilds():
    # averaging z(x).z(x') over fresh frequency draws converges to the kernel
    x = np.array([0.4, -0.1, 0.7])
    xp = np.array([-0.2, 0.5, 0.1])
    spec = KernelSpec(1.0)
    estimates = [
        feature_vector(build_feature_map(spec, 3, 100, seed=s), x)
        @ feature_vector(build_feature_map(spec, 3, 100, seed=s), xp)
        for s in range(200)
    ]
    assert np.mean(estimates) == pytest.approx(exact_kernel(spec, x, xp), abs=0.02)
