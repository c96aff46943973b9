"""
Joint Success Statistics Tests
"""
import math

import pytest

from services.analytic import joint_stats
from services.analytic.diversity import div_poly
from services.analytic.network import NetworkParams, contention
from services.checks.simulation_checks import bounded_reference_params, reference_params
from services.errors import DomainError


@pytest.fixture
def params():
    return reference_params(p=0.5)


def test_single_slot_success(params):
    assert joint_stats.joint_success(params, 1) == pytest.approx(math.exp(-0.5 * 0.5), rel=1e-13)


def test_joint_success_decreases_with_n(params):
    values = [joint_stats.joint_success(params, n) for n in range(1, 8)]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))


def test_cond_success_is_ratio(params):
    for n in (1, 2, 5):
        ratio = joint_stats.joint_success(params, n + 1) / joint_stats.joint_success(params, n)
        assert joint_stats.cond_success_after_successes(params, n) == pytest.approx(ratio, rel=1e-12)


def test_cond_success_exceeds_single_success(params):
    # successes are positively correlated
    single = joint_stats.joint_success(params, 1)
    assert joint_stats.cond_success_after_successes(params, 1) > single


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_psi_and_outage_complement(params, n):
    result = joint_stats.joint_success_result(params, n)
    assert result.psone_n + result.po_n == pytest.approx(1.0, abs=1e-14)
    assert joint_stats.at_least_one_success(params, n) == pytest.approx(result.psone_n, abs=1e-12)
    assert result.ps_n <= joint_stats.joint_success(params, 1) <= result.psone_n


def test_two_slot_outage_closed_form(params):
    big_delta = 0.5
    expected = 1 - 2 * math.exp(-big_delta * params.p) + math.exp(-big_delta * div_poly(2, params.p, params.delta))
    assert joint_stats.joint_outage(params, 2) == pytest.approx(expected, rel=1e-12)


def test_correlation_limits():
    tiny = NetworkParams.from_contention(1e-14, 0.4, 0.3)
    assert joint_stats.correlation_coefficient(tiny) == pytest.approx(0.3 * 0.6, rel=1e-6)
    assert joint_stats.correlation_coefficient(NetworkParams.from_contention(0.5, 0.4, 0.0)) == 0.0


def test_correlation_decreases_with_delta():
    values = [joint_stats.correlation_coefficient(NetworkParams.from_contention(0.5, delta, 0.5))
              for delta in (0.2, 0.4, 0.6, 0.8)]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))


def test_cond_after_failure_respects_bound():
    for p in (0.1, 0.5, 0.9):
        for delta in (0.3, 0.7):
            result = joint_stats.cond_success_after_failure(NetworkParams.from_contention(1.0, delta, p))
            assert 0.0 < result.value <= result.bound
            assert result.bound == pytest.approx(1 - p * (1 - delta), abs=1e-15)


def test_cond_after_failure_needs_transmissions():
    with pytest.raises(DomainError):
        joint_stats.cond_success_after_failure(NetworkParams.from_contention(1.0, 0.5, 0.0))


def test_cond_outage_given_outage_matches_general(params):
    assert joint_stats.cond_outage_given_outage(params) == pytest.approx(
        joint_stats.cond_outage_after_failures(params, 1), rel=1e-14)
    assert joint_stats.failure_correlation_ratio(params) > 1.0


@pytest.mark.parametrize("n", [1, 2, 4])
def test_asymptotic_cond_outage(n):
    p, delta = 0.5, 0.5
    params = NetworkParams.from_contention(1e-6, delta, p)
    ratio = joint_stats.cond_outage_after_failures(params, n)
    assert ratio == pytest.approx(joint_stats.asymptotic_cond_outage(p, delta, n), rel=1e-3)


def test_taylor_psone_close_at_small_contention():
    params = NetworkParams.from_contention(1e-4, 0.5, 0.6)
    for n in (1, 2, 3):
        exact_outage = joint_stats.joint_outage(params, n)
        taylor_outage = 1.0 - joint_stats.taylor_psone(params, n)
        assert taylor_outage == pytest.approx(exact_outage, rel=1e-3)


def test_diversity_gain_vary_delta_is_delta(params):
    for n in (1, 2, 3):
        assert joint_stats.diversity_gain_estimate(params, n, mode="vary_Delta") == pytest.approx(0.5, abs=0.01)


def test_diversity_gain_vary_p_and_independent(params):
    assert joint_stats.diversity_gain_estimate(params, 2, mode="vary_p") == pytest.approx(1.0, abs=0.02)
    assert joint_stats.independent_diversity_reference(params, 3) == pytest.approx(1.5, abs=0.02)


def test_diversity_gain_rejects_unknown_mode(params):
    with pytest.raises(ValueError):
        joint_stats.diversity_gain_estimate(params, 2, mode="sideways")


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_pgfl_integral_matches_closed_form(n):
    params = NetworkParams(lam=0.05, r=1.5, theta=2.0, delta=0.5, p=0.4)
    expected = contention(params).big_delta * div_poly(n, params.p, params.delta)
    assert joint_stats.pgfl_integral(params, n) == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize("params", [
    bounded_reference_params(p=0.5),
    NetworkParams(lam=0.1, r=1.0, theta=1e-3, delta=0.5, p=0.5),
], ids=["reference", "small_theta_prime"])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_bounded_matches_quadrature(params, n):
    exponent = -math.log(joint_stats.joint_success_bounded(params, n))
    assert exponent == pytest.approx(joint_stats.pgfl_integral(params, n, bounded=True), rel=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bounded_approaches_unbounded_for_large_theta_prime(n):
    # θ' = 1e6 leaves the unit disk negligible; Δ stays near 1/2
    params = NetworkParams(lam=1e-4, r=1.0, theta=1e6, delta=0.5, p=0.5)
    assert joint_stats.bounded_theta_prime(params) == 1e6
    bounded = joint_stats.joint_success_bounded(params, n)
    assert bounded == pytest.approx(joint_stats.joint_success(params, n), rel=1e-3)
    assert bounded >= joint_stats.joint_success(params, n)


def test_bounded_not_below_unbounded():
    params = bounded_reference_params(p=0.5)
    for n in (1, 2, 3):
        assert joint_stats.joint_success_bounded(params, n) >= joint_stats.joint_success(params, n)
    assert joint_stats.joint_success_bounded(params.with_updates(p=0.0), 3) == 1.0


def test_transmission_count_checked(params):
    with pytest.raises(DomainError):
        joint_stats.joint_success(params, 0)
