"""
Monte Carlo Oracle Tests
Reproducible streams, worker-count invariance, config checks and agreement
with the closed forms
"""
import math

import numpy as np
import pytest

from services.analytic import joint_stats, local_delay
from services.checks.simulation_checks import random_distance_reference, reference_params
from services.errors import SimulationConfigError
from services.montecarlo import estimators, records, rng, simulator
from services.montecarlo.simulator import SimConfig


def test_chunk_streams_are_reproducible():
    first = rng.chunk_stream(7, 3).random(5)
    again = rng.chunk_stream(7, 3).random(5)
    other = rng.chunk_stream(7, 4).random(5)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)


def test_chunk_layout_covers_all_realizations():
    layout = rng.chunk_layout(450, chunk_size=200)
    assert layout == [(0, 0, 200), (1, 200, 200), (2, 400, 50)]


def test_seed_range():
    with pytest.raises(ValueError):
        rng.check_seed(-1)
    with pytest.raises(ValueError):
        rng.check_seed(2 ** 64)


def test_default_window_radius_bounds():
    config = SimConfig(params=reference_params())
    radius = simulator.default_window_radius(config)
    assert 20.0 <= radius / config.params.r <= 200.0
    assert simulator.outside_share(config, radius / config.params.r) == pytest.approx(
        simulator.WINDOW_TOLERANCE, rel=1e-6)


def test_worker_count_does_not_change_results():
    config = SimConfig(params=reference_params(), n_slots=3, n_realizations=1000, seed=11, window_radius=10.0)
    serial = simulator.simulate(config)
    parallel = simulator.simulate(config.model_copy(update={"workers": 2}))
    assert np.array_equal(serial.sir, parallel.sir)
    assert np.array_equal(serial.n_points, parallel.n_points)


def test_same_seed_same_result():
    config = SimConfig(params=reference_params(), n_realizations=400, seed=5, window_radius=10.0)
    assert simulator.run(config) == simulator.run(config)


def test_no_transmitters_means_sure_success():
    params = reference_params(p=0.0)
    estimate = simulator.run(SimConfig(params=params, n_slots=3, n_realizations=500, window_radius=10.0))
    assert estimate.mean == 1.0
    assert estimate.z_score(joint_stats.joint_success(params, 3)) == 0.0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_joint_success_agrees_with_closed_form(n):
    params = reference_params()
    estimate = simulator.run(SimConfig(params=params, n_slots=n, n_realizations=20_000, seed=1))
    assert abs(estimate.z_score(joint_stats.joint_success(params, n))) <= 4.0


def test_at_least_once_agrees_with_closed_form():
    params = reference_params()
    estimate = simulator.run(SimConfig(params=params, n_slots=2, estimator="at_least_once",
                                       n_realizations=20_000, seed=2))
    assert abs(estimate.z_score(joint_stats.at_least_one_success(params, 2))) <= 4.0


def test_random_distance_agrees_with_closed_form():
    model = random_distance_reference(p=0.5)
    config = SimConfig.from_delay_model(model, n_slots=1, n_realizations=20_000, seed=3)
    estimate = simulator.run(config)
    assert abs(estimate.z_score(local_delay.joint_success_random_distance(model, 1))) <= 4.0


def test_independent_toggle_removes_correlation():
    params = reference_params()
    config = SimConfig(params=params, estimator="correlation", n_realizations=20_000, seed=4)
    estimate = simulator.run(simulator.independent_interference_toggle(config))
    assert abs(estimate.mean) < 4 * estimate.std_error + 1e-3


def test_local_delay_survival_starts_at_one():
    config = SimConfig(params=reference_params(), estimator="local_delay", max_slots=5,
                       n_realizations=2000, seed=6)
    tail = simulator.local_delay_samples(config)
    assert tail.n == list(range(6))
    assert tail.survival[0] == 1.0
    assert all(later <= earlier for earlier, later in zip(tail.survival, tail.survival[1:]))


@pytest.mark.parametrize("updates", [
    {"estimator": "local_delay"},
    {"estimator": "correlation", "n_slots": 1},
    {"estimator": "joint_cdf"},
    {"estimator": "joint_cdf", "thresholds": (1.0, -2.0)},
    {"thresholds": (1.0, 2.0)},
    {"distance_mode": "rayleigh"},
])
def test_inconsistent_configs_rejected(updates):
    config = SimConfig(params=reference_params()).model_copy(update=updates)
    with pytest.raises(SimulationConfigError):
        simulator.check_config(config)


def test_first_success_and_estimators():
    success = np.array([[False, True, True],
                        [True, False, False],
                        [False, False, False]])
    assert list(estimators.first_success(success)) == [2, 1, 4]
    assert estimators.joint_success(success, 1).mean == pytest.approx(1 / 3)
    assert estimators.at_least_once(success, 3).mean == pytest.approx(2 / 3)


def test_estimate_interval_contains_mean():
    estimate = estimators.proportion_estimate("joint_success", np.array([True, False, True, True]))
    lo, hi = estimate.ci95
    assert lo < estimate.mean == 0.75 < hi
    assert estimate.n_effective == 4
    assert estimate.z_score(0.75) == 0.0


def test_records_columns(tmp_path):
    config = SimConfig(params=reference_params(), n_slots=4, n_realizations=300, seed=8, window_radius=10.0)
    result = simulator.simulate(config)
    path = records.write_records(result, tmp_path / "records.csv")
    frame = records.read_records(path)
    assert list(frame.columns) == ["realization_id", "n_points", "success_bits", "delay"]
    assert len(frame) == 300
    assert frame["success_bits"].str.len().eq(4).all()
    assert frame["delay"].between(1, 5).all()


def test_interference_tail_slope_near_delta():
    params = reference_params()
    config = SimConfig(params=params, n_slots=1, n_realizations=20_000, seed=9)
    slope = simulator.interference_tail_slope(config)
    assert slope is not None
    assert math.isfinite(slope)
    assert -1.0 < slope < 0.0
