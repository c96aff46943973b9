"""
Local Delay Tests
Fixed and Rayleigh link distance, critical probabilities and the binomial identity
"""
from fractions import Fraction
import math

import pytest
from pydantic import ValidationError

from services.analytic import joint_stats, local_delay
from services.analytic.local_delay import DelayModel
from services.analytic.network import NetworkParams
from services.checks.simulation_checks import random_distance_reference
from services.errors import DomainError


@pytest.fixture
def fixed_params():
    return NetworkParams.from_contention(0.1, 0.5, 0.3)


def test_tail_is_joint_outage(fixed_params):
    assert local_delay.delay_tail_fixed(fixed_params, 0) == 1.0
    for n in (1, 3, 7):
        assert local_delay.delay_tail_fixed(fixed_params, n) == joint_stats.joint_outage(fixed_params, n)


def test_pmf_is_tail_difference(fixed_params):
    for n in range(1, 10):
        difference = local_delay.delay_tail_fixed(fixed_params, n - 1) - local_delay.delay_tail_fixed(fixed_params, n)
        assert local_delay.delay_pmf_fixed(fixed_params, n) == pytest.approx(difference, abs=1e-12)


def test_pmf_sums_to_one(fixed_params):
    total = math.fsum(local_delay.delay_pmf_fixed(fixed_params, n) for n in range(1, 26))
    assert total == pytest.approx(1.0 - local_delay.delay_tail_fixed(fixed_params, 25), abs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_mean_fixed_matches_tail_sum(fixed_params):
    tail_sum = math.fsum(local_delay.delay_tail_fixed(fixed_params, n) for n in range(0, 26))
    assert local_delay.mean_delay_fixed(fixed_params) == pytest.approx(tail_sum, rel=1e-8)
    expected = math.exp(0.1 * 0.3 / math.sqrt(0.7))
    assert local_delay.mean_delay_fixed(fixed_params) == pytest.approx(expected, rel=1e-14)


def test_mean_fixed_undefined_at_full_load():
    with pytest.raises(DomainError):
        local_delay.mean_delay_fixed(NetworkParams.from_contention(0.1, 0.5, 1.0))


def test_taylor_partial_sums(fixed_params):
    assert local_delay.taylor_mean_delay(fixed_params, 0).m_hat_n == pytest.approx(1.0, abs=1e-13)
    p, delta, big_delta = 0.3, 0.5, 0.1
    for n in (1, 4, 10):
        expected = 1.0 + math.fsum(
            big_delta * p ** k * math.gamma(k - delta) / (math.gamma(k) * math.gamma(1 - delta))
            for k in range(1, n + 1))
        assert local_delay.taylor_mean_delay(fixed_params, n).m_hat_n == pytest.approx(expected, rel=1e-10)


def test_taylor_limit_is_second_order():
    errors = []
    for big_delta in (0.02, 0.01):
        params = NetworkParams.from_contention(big_delta, 0.5, 0.3)
        taylor = local_delay.taylor_mean_delay(params, 50)
        assert taylor.m_hat_n == pytest.approx(taylor.m_hat, rel=1e-12)
        errors.append(local_delay.mean_delay_fixed(params) - taylor.m_hat)
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)


def test_taylor_partial_sums_increase_to_limit(fixed_params):
    expansions = [local_delay.taylor_mean_delay(fixed_params, n) for n in range(1, 61)]
    for taylor in expansions:
        assert taylor.remainder >= 0.0
        assert taylor.remainder == pytest.approx(taylor.m_hat - taylor.m_hat_n, abs=1e-15)
    for current, following in zip(expansions, expansions[1:]):
        assert following.m_hat_n >= current.m_hat_n
        assert following.remainder <= current.remainder
    assert expansions[-1].m_hat_n == pytest.approx(expansions[-1].m_hat, rel=1e-12)


def test_rayleigh_needs_mu():
    base = NetworkParams.from_contention(0.5, 0.5, 0.5)
    with pytest.raises(ValidationError):
        DelayModel(base=base, distance_mode="rayleigh")
    with pytest.raises(DomainError):
        local_delay.critical_probabilities(DelayModel(base=base))


def test_random_distance_single_success():
    model = random_distance_reference(p=0.5)
    assert model.delta_prime_ratio == pytest.approx(math.pi / 2, rel=1e-13)
    assert local_delay.joint_success_random_distance(model, 1) == pytest.approx(1 / (1 + math.pi / 4), rel=1e-13)


def test_random_distance_small_p_expansion():
    model = random_distance_reference(p=1e-4)
    for n in (1, 2, 4):
        exact = local_delay.joint_success_random_distance(model, n)
        assert local_delay.joint_success_random_small_p(model, n) == pytest.approx(exact, abs=1e-9)


def test_critical_probabilities():
    model = random_distance_reference(p=0.5)
    critical = local_delay.critical_probabilities(model)
    assert critical.p_c_ind == pytest.approx(2 / math.pi, rel=1e-13)
    assert (math.pi / 2) * critical.p_c / math.sqrt(1 - critical.p_c) == pytest.approx(1.0, abs=1e-8)
    assert critical.p_c < critical.p_c_ind


@pytest.mark.parametrize("p, expected", [
    (0.3, "finite"),
    (0.6, "finite_if_independent"),
    (0.7, "infinite"),
])
def test_regime(p, expected):
    assert local_delay.regime(random_distance_reference(p=p)) == expected


def test_independent_mean_delay():
    model = random_distance_reference(p=0.3)
    mean = local_delay.mean_delay_random(model, mode="independent")
    assert mean.finite
    assert mean.value == pytest.approx(1 / (1 - 0.3 * math.pi / 2), rel=1e-13)
    assert not local_delay.mean_delay_random(random_distance_reference(p=0.7), mode="independent").finite


def test_dependent_mean_delay_series():
    model = random_distance_reference(p=0.1)
    mean = local_delay.mean_delay_random(model, mode="dependent")
    closed = 1 / (1 - (math.pi / 2) * 0.1 / math.sqrt(0.9))
    assert mean.finite
    assert mean.closed_form == pytest.approx(closed, rel=1e-13)
    assert mean.value == pytest.approx(closed, rel=1e-4)
    assert mean.terms > 0


def test_dependent_mean_infinite_beyond_critical():
    mean = local_delay.mean_delay_random(random_distance_reference(p=0.6), mode="dependent")
    assert not mean.finite
    assert math.isinf(mean.value)


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_independent_pmf_matches_rational_sum(n):
    model = random_distance_reference(p=0.3)
    beta = model.delta_prime_ratio * 0.3
    exact = float(local_delay.alternating_pmf_rational(Fraction(beta), n))
    assert local_delay.delay_pmf_independent(model, n).value == pytest.approx(exact, rel=1e-10)


def test_independent_pmf_is_tail_difference():
    model = random_distance_reference(p=0.3)
    for n in range(1, 8):
        difference = local_delay.delay_tail_independent(model, n - 1) - local_delay.delay_tail_independent(model, n)
        assert local_delay.delay_pmf_independent(model, n).value == pytest.approx(difference, rel=1e-10)


def test_independent_pmf_asymptotic_ratio():
    model = random_distance_reference(p=1 / math.pi)
    ratios = [local_delay.delay_pmf_independent(model, n).ratio for n in (10, 100, 1000)]
    assert all(abs(later - 1) < abs(earlier - 1) for earlier, later in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(1.0, abs=0.01)


def test_truncated_independent_mean():
    model = random_distance_reference(p=0.3)
    truncated = local_delay.truncated_mean_delay_independent(model, 10)
    assert 1.0 < truncated < local_delay.mean_delay_random(model, mode="independent").value


def test_binomial_identity_half():
    check = local_delay.binomial_identity_check("1/2", 60)
    assert check.target == 2
    assert check.residual == pytest.approx(-2 / 62, rel=1e-12)
    assert check.analytic_tail == pytest.approx(2 / 62, rel=1e-12)
    assert abs(check.completed_residual) <= 1e-12


def test_binomial_identity_quarter():
    check = local_delay.binomial_identity_check(Fraction(1, 4), 30)
    assert check.target == Fraction(4, 3)
    assert check.residual < 0
    assert abs(check.completed_residual) <= 1e-12


def test_binomial_identity_domain():
    with pytest.raises(DomainError):
        local_delay.binomial_identity_check(1, 10)


def test_all_transmit_success():
    params = NetworkParams(lam=0.1, r=1.0, theta=1.0, delta=0.5, p=0.4)
    value = local_delay.joint_success_all_transmit(params, 2)
    assert 0.0 < value < 0.4 ** 2
    assert local_delay.joint_success_all_transmit(params.with_updates(p=1.0), 2) == 0.0
