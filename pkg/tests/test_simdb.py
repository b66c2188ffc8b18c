import numpy as np
import pytest

from gustsurf import simdb
from gustsurf.errors import EmptyHistory, InvalidRange, StepTooLarge, UnstableModel

GOLDEN_ROOT_PEAK = 6372462.882996887  # reference wing, reference point, default dt


def test_air_density():
    assert simdb.air_density(0.0) == pytest.approx(1.225)
    assert simdb.air_density(5000.0) == pytest.approx(0.7361, rel=1e-3)


def test_modal_model_shapes(wing):
    phi = wing.mode_shapes
    gram = (phi * wing.strip_mass) @ phi.T
    np.testing.assert_allclose(gram, np.diag(wing.modal_mass), atol=1e-9 * wing.modal_mass.max())
    f = np.sqrt(wing.modal_stiffness / wing.modal_mass) / (2 * np.pi)
    np.testing.assert_allclose(f, [1.2, 3.6, 7.5])


def test_zero_gust_gives_zero_moments(wing, ref_point):
    _, hist = simdb.simulate_response(wing, ref_point, u_ref=0.0)
    assert np.all(hist == 0.0)


def test_linear_in_gust_amplitude(wing, ref_point):
    stiff = simdb.reference_model(frequencies=(12.0, 36.0, 75.0), damping_ratio=0.5)
    for model in (wing, stiff):
        a = simdb.max_temporal(simdb.simulate_response(model, ref_point, u_ref=10.0)[1])
        b = simdb.max_temporal(simdb.simulate_response(model, ref_point, u_ref=20.0)[1])
        np.testing.assert_allclose(b, 2 * a, rtol=1e-6)


def test_golden_root_peak_and_fine_grid_oracle(wing, ref_point):
    peak = simdb.max_temporal(simdb.simulate_response(wing, ref_point)[1])
    assert peak[0] == pytest.approx(GOLDEN_ROOT_PEAK, rel=1e-9)
    fine = simdb.max_temporal(simdb.simulate_response(wing, ref_point, dt=simdb.DEFAULT_DT / 10)[1])
    np.testing.assert_allclose(peak, fine, rtol=1e-3)
    assert abs(peak[0] - fine[0]) / fine[0] < 1e-4


def test_deterministic_and_batch_consistent(wing, ref_point):
    t1, h1 = simdb.simulate_response(wing, ref_point)
    t2, h2 = simdb.simulate_response(wing, ref_point)
    assert np.array_equal(h1, h2)
    params = {p: np.array([ref_point[p], ref_point[p] * 1.01 if p != "fg" else 0.7]) for p in ref_point}
    batch = simdb.simulate_maxima(wing, params)
    assert np.array_equal(batch[0], simdb.max_temporal(h1))


def test_window_and_grid(wing, ref_point):
    t, hist = simdb.simulate_response(wing, ref_point, dt=1e-3)
    assert t[-1] == pytest.approx(2 * ref_point["gust_h"] / ref_point["tas"])
    assert np.max(np.diff(t)) <= 1e-3 + 1e-15
    assert hist.shape == (t.size, wing.n_stations)


def test_max_temporal_examples():
    np.testing.assert_array_equal(simdb.max_temporal(np.full((10, 3), 4.0)), [4.0] * 3)
    t = np.linspace(0, 1, 2001)
    assert simdb.max_temporal(2.5 * np.sin(2 * np.pi * t))[0] == pytest.approx(2.5, rel=1e-6)
    with pytest.raises(EmptyHistory):
        simdb.max_temporal(np.zeros((0, 3)))


def test_step_checks(wing, ref_point):
    with pytest.raises(StepTooLarge):
        simdb.simulate_response(wing, ref_point, dt=0.05)
    with pytest.raises(UnstableModel):
        simdb.simulate_response(wing, ref_point, u_ref=1e8)


def test_root_dominance(small_db):
    r = small_db.responses
    assert np.all(r[:, 0] >= r.max(axis=1))


def test_mass_effect_monotone_quasi_static():
    stiff = simdb.reference_model(frequencies=(12.0, 36.0, 75.0), damping_ratio=0.5)
    mass = np.linspace(150e3, 260e3, 12)
    params = dict(mass=mass, tas=np.full(12, 200.0), altitude=np.full(12, 2000.0),
                  cgx=np.full(12, 27.0), gust_h=np.full(12, 100.0), fg=np.full(12, 1.0))
    root = simdb.simulate_maxima(stiff, params)[:, 0]
    assert np.all(np.diff(root) > 0)


def test_grid_convergence_on_database(wing, small_db):
    params = small_db.active_params()
    half = simdb.simulate_maxima(wing, params, dt=simdb.DEFAULT_DT / 2)
    assert np.max(np.abs(half - small_db.responses) / half) < 1e-3


def test_generate_determinism(wing):
    a = simdb.generate_database(wing, n=50, seed=7)
    b = simdb.generate_database(wing, n=50, seed=7)
    assert np.array_equal(a.points, b.points) and np.array_equal(a.responses, b.responses)
    c = simdb.generate_database(wing, n=50, seed=8)
    assert not np.array_equal(a.points, c.points)


def test_databases_layout(small_db):
    names = small_db.parameter_names
    assert names[:6] == simdb.ACTIVE_PARAMETERS
    assert len(names) == 20 and set(names) == set(simdb.PARAMETER_NAMES)
    lo = np.array([simdb.DEFAULT_ENVELOPE[n][0] for n in names])
    hi = np.array([simdb.DEFAULT_ENVELOPE[n][1] for n in names])
    assert np.all(small_db.points >= lo) and np.all(small_db.points <= hi)
    assert np.all(small_db.responses >= 0)


def test_nuisance_columns_inert(wing, small_db):
    points = small_db.points.copy()
    rng = np.random.default_rng(0)
    for c in range(6, points.shape[1]):
        points[:, c] = rng.permutation(points[:, c])
    params = {p: points[:, i] for i, p in enumerate(simdb.ACTIVE_PARAMETERS)}
    assert np.array_equal(simdb.simulate_maxima(wing, params), small_db.responses)


def test_extra_nuisance_names():
    cols = simdb.database_columns(16)
    assert cols[-2:] == ("nuisance_14", "nuisance_15")
    assert len(simdb.database_columns(0)) == 6


def test_invalid_ranges(wing):
    env = dict(simdb.DEFAULT_ENVELOPE, tas=(200.0, 150.0))
    with pytest.raises(InvalidRange):
        simdb.generate_database(wing, env, n=20)
    with pytest.raises(InvalidRange):
        simdb.generate_database(wing, dict(simdb.DEFAULT_ENVELOPE, fg=(0.5, 1.2)), n=20)


def test_scale_envelope():
    env = simdb.scale_envelope(simdb.DEFAULT_ENVELOPE, "mass", 1.1)
    assert env["mass"] == pytest.approx((165e3, 258.5e3))
    assert simdb.DEFAULT_ENVELOPE["mass"] == (150e3, 235e3)
