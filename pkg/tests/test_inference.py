import numpy as np
import pytest

from gustsurf.errors import DegreesOfFreedomExhausted, DimensionMismatch, StationMismatch
from gustsurf.features import build_feature_map, expand_all
from gustsurf.inference import (
    envelope_max,
    fit_surrogate,
    interval_half_widths,
    predict,
    predict_points,
    prediction_interval,
    validate,
)
from gustsurf.numerics import lilliefors_critical_value
from gustsurf.oga import refit
from gustsurf.simdb import LoadDatabase

LINEAR_SUPPORT = (0, 1, 2, 3)


def linear_gaussian(n, seed, sigma=0.5):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, size=(n, 3))
    y = 2.0 + 3.0 * x[:, 0] - x[:, 1] + 0.5 * x[:, 2] + sigma * rng.normal(size=n)
    return x, y


def fitted(n=200, seed=0, sigma=0.5, support=LINEAR_SUPPORT, station=0.0):
    x, y = linear_gaussian(n, seed, sigma)
    fmap = build_feature_map(x)
    phi = expand_all(fmap, x)
    return fit_surrogate(phi, y, fmap, support, station), x, y, phi


def test_constant_only_model():
    m, x, y, _ = fitted(support=(0,))
    for xi in x[:5]:
        assert predict(m, xi) == pytest.approx(y.mean(), rel=1e-12)


def test_exact_fit_reproduces_training_data():
    m, x, y, phi = fitted(sigma=0.0)
    np.testing.assert_allclose(predict_points(m, x), y, rtol=1e-8)
    m, x, y, phi = fitted(sigma=0.3, seed=2)
    coef, _ = refit(phi, y, LINEAR_SUPPORT)
    assert predict(m, x[7]) == pytest.approx(phi[7, list(LINEAR_SUPPORT)] @ coef, rel=1e-12)


def test_zero_sigma_interval_collapses():
    m, x, _, _ = fitted(sigma=0.0)
    m.sigma2 = 0.0
    lo, hi = prediction_interval(m, x[0])
    assert lo == hi == predict(m, x[0])


def test_constant_model_half_width_normal_limit():
    m, x, _, _ = fitted(n=10_000, support=(0,), seed=3)
    lo, hi = prediction_interval(m, m.feature_map.means, alpha=0.01)
    assert (hi - lo) / 2 == pytest.approx(2.5758 * np.sqrt(m.sigma2), rel=0.02)


def test_interval_symmetry_and_shrinking_with_data():
    x, y = linear_gaussian(400, 5)
    fmap = build_feature_map(x)
    phi = expand_all(fmap, x)
    probe = np.array([0.9, -0.8, 0.3])
    widths = []
    for n in (40, 80, 160, 400):
        m = fit_surrogate(phi[:n], y[:n], fmap, LINEAR_SUPPORT)
        m.sigma2 = 0.25
        lo, hi = prediction_interval(m, probe)
        assert predict(m, probe) - lo == pytest.approx(hi - predict(m, probe), rel=1e-12)
        widths.append(hi - lo)
    assert np.all(np.diff(widths) <= 0)


def test_coverage_linear_gaussian():
    m, _, _, _ = fitted(n=300, seed=11)
    x, y = linear_gaussian(10_000, 12)
    pred = predict_points(m, x)
    lo, hi = np.transpose([prediction_interval(m, xi) for xi in x[:200]])
    half = interval_half_widths(m, x, 0.01)
    np.testing.assert_allclose(pred[:200] - half[:200], lo, rtol=1e-12)
    cover = np.mean(np.abs(y - pred) <= half)
    assert 0.975 <= cover <= 0.999


def test_affine_response_equivariance():
    x, y = linear_gaussian(150, 6)
    fmap = build_feature_map(x)
    phi = expand_all(fmap, x)
    support = (0, 1, 3, 5, 8)
    a = fit_surrogate(phi, y, fmap, support)
    b = fit_surrogate(phi, y + 1234.5, fmap, support)
    probe = x[:10] * 1.3
    np.testing.assert_allclose(predict_points(b, probe), predict_points(a, probe) + 1234.5, rtol=1e-12)
    assert b.sigma2 == pytest.approx(a.sigma2, rel=1e-7)
    la, ha = prediction_interval(a, probe[0])
    lb, hb = prediction_interval(b, probe[0])
    assert lb == pytest.approx(la + 1234.5, rel=1e-11) and hb == pytest.approx(ha + 1234.5, rel=1e-11)


def test_dof_exhausted():
    x, y = linear_gaussian(4, 0)
    fmap = build_feature_map(x)
    m = fit_surrogate(expand_all(fmap, x), y, fmap, LINEAR_SUPPORT)
    with pytest.raises(DegreesOfFreedomExhausted):
        prediction_interval(m, x[0])


def test_envelope_max_identities():
    m, x, _, _ = fitted(seed=7)
    band = envelope_max(m, x[:1])
    assert band.predicted_max == pytest.approx(predict(m, x[0]))
    assert band.lower < band.predicted_max < band.upper
    band = envelope_max(m, x)
    preds = predict_points(m, x)
    assert band.predicted_max == preds.max()
    assert band.argmax_point_index == int(np.argmax(preds))
    lo, hi = prediction_interval(m, x[band.argmax_point_index])
    assert (band.lower, band.upper) == pytest.approx((lo, hi), rel=1e-12)
    const, _, y, _ = fitted(support=(0,), seed=7)
    band = envelope_max(const, np.vstack([x, x]))
    assert band.predicted_max == pytest.approx(y.mean()) and band.argmax_point_index == 0
    with pytest.raises(DimensionMismatch):
        envelope_max(m, np.zeros((3, 2)))


def _station_models(seed=0):
    x, y = linear_gaussian(200, seed)
    fmap = build_feature_map(x)
    phi = expand_all(fmap, x)
    models = [fit_surrogate(phi, y * s, fmap, LINEAR_SUPPORT, station=p)
              for p, s in ((0.0, 3.0), (1.0, 2.0), (2.0, 1.0))]
    return models, x


def test_validate_self_predictions_zero():
    models, x = _station_models()
    ref = LoadDatabase(("x0", "x1", "x2"), x, [0.0, 1.0, 2.0],
                       np.column_stack([predict_points(m, x) for m in models]))
    met = validate(models, ref)
    assert met.max_relative_error == 0.0 and met.root_relative_error == 0.0
    assert np.all(met.covered)
    assert met.max_relative_width > 0


def test_validate_station_checks_and_zero_reference():
    models, x = _station_models()
    pred = np.column_stack([predict_points(m, x) for m in models])
    with pytest.raises(StationMismatch):
        validate(models, LoadDatabase(("x0", "x1", "x2"), x, [0.0, 1.0, 3.0], pred))
    pred[:, 2] = 0.0
    pred[:, 0] *= 1.01
    met = validate(models, LoadDatabase(("x0", "x1", "x2"), x, [0.0, 1.0, 2.0], pred))
    assert met.zero_reference_stations == [2.0]
    assert np.isnan(met.relative_error[2])
    assert met.max_relative_error == pytest.approx(1 - 1 / 1.01, rel=1e-9)


def test_residual_normality_on_well_specified_data():
    passes = 0
    for seed in range(20):
        m, _, _, _ = fitted(n=500, seed=100 + seed)
        passes += m.ks_statistic < lilliefors_critical_value(500, 0.01)
        assert m.normality_ok == (m.ks_statistic <= lilliefors_critical_value(500, 0.01))
    assert passes >= 18
