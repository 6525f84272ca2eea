"""Single-kernel linear model: prediction, loss, and the SGD local step."""

import numpy as np
import pytest

from mkal.kernel_model import KernelModel, squared_loss
from mkal.rff import KernelSpec, build_feature_map, feature_vector


def make_model(input_dim=3, num_features=8, seed=0, theta=None):
    fmap = build_feature_map(KernelSpec(1.0), input_dim, num_features, seed)
    return KernelModel(fmap, theta=theta)


def test_squared_loss_values():
    assert squared_loss(2.0, 2.0) == 0.0
    assert squared_loss(3.0, 1.0) == 4.0
    assert squared_loss(-1.0, 2.0) == 9.0


def test_loss_positive_unless_equal():
    rng = np.random.default_rng(0)
    for a, b in rng.normal(size=(50, 2)):
        assert squared_loss(a, b) > 0
    assert squared_loss(0.7, 0.7) == 0.0


def test_zero_theta_predicts_zero():
    model = make_model()
    rng = np.random.default_rng(1)
    for _ in range(5):
        assert model.predict(rng.normal(size=3)) == 0.0


def test_basis_thetas_read_off_the_feature_blocks():
    D = 8
    model = make_model(num_features=D)
    x0 = np.zeros(3)
    sin_pick = np.zeros(2 * D)
    sin_pick[0] = 1.0  # sin block entry; sin(0) = 0
    model.theta = sin_pick
    assert model.predict(x0) == 0.0
    cos_pick = np.zeros(2 * D)
    cos_pick[D] = 1.0  # cos block entry; cos(0) = 1, scaled by 1/sqrt(D)
    model.theta = cos_pick
    assert model.predict(x0) == pytest.approx(1.0 / np.sqrt(D), rel=0, abs=0)


def test_predict_features_matches_predict():
    model = make_model(theta=np.arange(16, dtype=float))
    x = np.array([0.1, -0.5, 0.3])
    z = feature_vector(model.map, x)
    assert model.predict_features(z) == model.predict(x)


def test_wrong_theta_length_rejected():
    fmap = build_feature_map(KernelSpec(1.0), 2, 4, seed=0)
    with pytest.raises(ValueError):
        KernelModel(fmap, theta=np.zeros(7))


def test_vanishing_step_size_barely_moves_theta():
    model = make_model(theta=np.random.default_rng(2).normal(size=16))
    before = model.theta.copy()
    model.sgd_step(np.array([0.2, 0.1, -0.3]), 5.0, eta_l=1e-300)
    assert np.max(np.abs(model.theta - before)) < 1e-290


def test_no_update_at_the_optimum():
    model = make_model()  # zero theta predicts 0
    before = model.theta.copy()
    model.sgd_step(np.array([0.5, -0.5, 0.25]), 0.0, eta_l=0.3)
    np.testing.assert_array_equal(model.theta, before)


def test_hand_evaluated_single_step():
    # D = 1 and x = 0 give z = (sin 0, cos 0) = (0, 1); with theta = 0 and
    # y = 1 the update is -eta * 2 * (0 - 1) * z = (0, 0.2)
    fmap = build_feature_map(KernelSpec(1.0), 1, 1, seed=3)
    model = KernelModel(fmap)
    model.sgd_step(np.zeros(1), 1.0, eta_l=0.1)
    np.testing.assert_array_equal(model.theta, np.array([0.0, 0.2]))


def test_zero_rate_is_an_exact_no_op():
    model = make_model(theta=np.random.default_rng(3).normal(size=16))
    before = model.theta.copy()
    model.sgd_step(np.array([1.0, 2.0, 3.0]), -4.0, eta_l=0.0)
    np.testing.assert_array_equal(model.theta, before)


def test_negative_rate_rejected():
    model = make_model()
    with pytest.raises(ValueError):
        model.sgd_step(np.zeros(3), 1.0, eta_l=-0.1)


def test_non_finite_samples_rejected():
    model = make_model()
    with pytest.raises(ValueError):
        model.sgd_step(np.array([np.nan, 0.0, 0.0]), 1.0, eta_l=0.1)
    with pytest.raises(ValueError):
        model.sgd_step(np.zeros(3), np.inf, eta_l=0.1)


def test_analytic_gradient_matches_finite_differences():
    rng = np.random.default_rng(4)
    for _ in range(20):
        model = make_model(theta=rng.normal(size=16), seed=int(rng.integers(100)))
        x = rng.normal(size=3)
        y = rng.normal()
        z = feature_vector(model.map, x)
        analytic = 2.0 * (model.theta @ z - y) * z
        h = 1e-6
        for k in rng.integers(0, 16, size=4):
            theta_hi, theta_lo = model.theta.copy(), model.theta.copy()
            theta_hi[k] += h
            theta_lo[k] -= h
            numeric = (
                squared_loss(theta_hi @ z, y) - squared_loss(theta_lo @ z, y)
            ) / (2 * h)
            assert analytic[k] == pytest.approx(numeric, rel=1e-5, abs=1e-8)


def test_step_never_increases_loss_on_stepped_sample():
    # quadratic descent guarantee for eta <= 1/(2 ||z||^2) = 0.5
    rng = np.random.default_rng(5)
    for _ in range(50):
        model = make_model(theta=rng.normal(size=16), seed=int(rng.integers(100)))
        x = rng.normal(size=3)
        y = rng.normal() * 3
        eta = rng.uniform(0.0, 0.5)
        before = squared_loss(model.predict(x), y)
        model.sgd_step(x, y, eta_l=eta)
        after = squared_loss(model.predict(x), y)
        assert after <= before + 1e-12


def test_full_rate_interpolates_the_sample():
    # at eta = 0.5 the residual is eliminated in one step since ||z|| = 1
    model = make_model(theta=np.random.default_rng(6).normal(size=16))
    x = np.array([0.3, 0.9, -0.2])
    model.sgd_step(x, 2.5, eta_l=0.5)
    assert model.predict(x) == pytest.approx(2.5, abs=1e-12)
