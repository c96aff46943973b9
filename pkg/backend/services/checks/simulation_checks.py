"""
Simulation Checks
Analytic success, correlation and delay results against the Monte Carlo oracle
"""
from datetime import datetime
from typing import Optional, Sequence, Tuple
import logging
import math

from services.analytic import joint_stats, local_delay, two_threshold
from services.analytic.local_delay import DelayModel
from services.analytic.network import NetworkParams, contention
from services.analytic.two_threshold import TwoThresholdSpec
from services.checks.base_check import BaseCheck
from services.montecarlo import estimators, simulator
from services.montecarlo.simulator import SimConfig

logger = logging.getLogger(__name__)

DEFAULT_REALIZATIONS = 20_000
DELAY_REALIZATIONS = 5_000


def reference_params(p: float = 0.5) -> NetworkParams:
    """δ = 1/2 and Δ = 1/2 at unit distance and threshold"""
    return NetworkParams.from_contention(0.5, 0.5, p)


def bounded_reference_params(p: float = 0.5) -> NetworkParams:
    """δ = 1/2, r = 1, θ = 1 and λ = π⁻²"""
    return NetworkParams(lam=math.pi ** -2, r=1.0, theta=1.0, delta=0.5, p=p)


def random_distance_reference(p: float = 0.5, lam: float = 0.1) -> DelayModel:
    """Rayleigh link distance with μ = λ, θ = 1, δ = 1/2"""
    base = NetworkParams(lam=lam, r=1.0, theta=1.0, delta=0.5, p=p)
    return DelayModel(base=base, distance_mode="rayleigh", mu=lam)


class SimulationCheck(BaseCheck):
    """Common set-up of the Monte Carlo comparisons"""

    def _start(self, params: NetworkParams, n_realizations: int, seed: int, workers: int):
        self.set_run_info(seed=seed, run_date=datetime.now())
        for name in ("lam", "r", "theta", "delta", "p"):
            self.add_input(name, getattr(params, name))
        self.add_input("n_realizations", n_realizations)
        self.add_input("workers", workers)

    def _finish(self):
        self.calculate_overall_result()
        logger.info(f"[CHECK] {self.check_name}: {self.overall_result}")
        return self.to_dict()


class JointSuccessCheck(SimulationCheck):
    """p_s^(n) = exp(-Δ D_n) for n = 1..n_max from one set of realizations"""

    def __init__(self):
        super().__init__(check_name="joint_success", description="Joint success of n transmissions")

    def execute(self, params: Optional[NetworkParams] = None, n_max: int = 4,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, n_slots=n_max, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius)
        result = simulator.simulate(config)
        success = estimators.success_matrix(result.sir, params.theta)
        for n in range(1, n_max + 1):
            self.add_comparison(f"ps_{n}", joint_stats.joint_success(params, n),
                                estimators.joint_success(success, n))
        return self._finish()


class AtLeastOnceCheck(SimulationCheck):
    """ψ^(n), at least one success in n slots"""

    def __init__(self):
        super().__init__(check_name="at_least_once", description="At least one success in n transmissions")

    def execute(self, params: Optional[NetworkParams] = None, n_max: int = 4,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, n_slots=n_max, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius)
        result = simulator.simulate(config)
        success = estimators.success_matrix(result.sir, params.theta)
        for n in range(1, n_max + 1):
            self.add_comparison(f"psone_{n}", joint_stats.at_least_one_success(params, n),
                                estimators.at_least_once(success, n))
        return self._finish()


class CorrelationCheck(SimulationCheck):
    """Correlation coefficient of two slots and success given earlier successes"""

    def __init__(self):
        super().__init__(check_name="correlation", description="Temporal correlation of successes")

    def execute(self, params: Optional[NetworkParams] = None, n_max: int = 4,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, n_slots=max(2, n_max), n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius)
        result = simulator.simulate(config)
        success = estimators.success_matrix(result.sir, params.theta)
        self.add_comparison("zeta", joint_stats.correlation_coefficient(params),
                            estimators.correlation(success, config.batches))
        for n in range(2, max(2, n_max) + 1):
            self.add_comparison(f"cond_success_{n}", joint_stats.cond_success_after_successes(params, n - 1),
                                estimators.cond_after_success(success, n, config.batches))
        return self._finish()


class CondAfterFailureCheck(SimulationCheck):
    """P(S_2 | not S_1) and its bound 1 - p(1-δ)"""

    def __init__(self):
        super().__init__(check_name="cond_after_failure", description="Success after a failure")

    def execute(self, params: Optional[NetworkParams] = None, n_realizations: int = DEFAULT_REALIZATIONS,
                seed: int = 0, workers: int = 1, window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, n_slots=2, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius, estimator="cond_after_failure")
        analytic = joint_stats.cond_success_after_failure(params)
        self.add_comparison("cond_success_after_failure", analytic.value, simulator.run(config))
        self.add_result("bound", analytic.bound, "INFO", tolerance="1 - p(1-δ)")
        return self._finish()


class IndependentGapCheck(SimulationCheck):
    """
    Static versus redrawn point process: the dependent two-slot success
    exceeds the independent one by the factor exp(Δ(1-δ)p²)
    """

    def __init__(self):
        super().__init__(check_name="independent_gap", description="Dependent versus independent interference")

    def execute(self, params: Optional[NetworkParams] = None, n_realizations: int = DEFAULT_REALIZATIONS,
                seed: int = 0, workers: int = 1, window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        big_delta = contention(params).big_delta
        config = SimConfig(params=params, n_slots=2, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius)
        dependent = simulator.run(config)
        independent = simulator.run(simulator.independent_interference_toggle(config))
        self.add_comparison("ps_2_dependent", joint_stats.joint_success(params, 2), dependent)
        self.add_comparison("ps_2_independent", math.exp(-2.0 * big_delta * params.p), independent)

        expected_gap = math.exp(big_delta * (1.0 - params.delta) * params.p ** 2)
        if dependent.mean > 0.0 and independent.mean > 0.0:
            ratio = dependent.mean / independent.mean
            relative = math.hypot(dependent.std_error / dependent.mean, independent.std_error / independent.mean)
            gap = estimators.normal_estimate("independent_gap", ratio, ratio * relative,
                                             min(dependent.n_effective, independent.n_effective))
            self.add_comparison("gap", expected_gap, gap)
        else:
            self.add_result("gap", None, "FAIL", details="a success estimate is zero")
        return self._finish()


class JointCdfCheck(SimulationCheck):
    """Joint SIR distribution P(SIR_1 <= θ1, SIR_2 <= θ2) on a (θ̄, ν) grid"""

    DEFAULT_POINTS = ((1.0, 0.0), (2.0, 0.5), (0.5, -0.7))

    def __init__(self):
        super().__init__(check_name="joint_cdf", description="Joint SIR distribution of two slots")

    def execute(self, params: Optional[NetworkParams] = None,
                points: Sequence[Tuple[float, float]] = DEFAULT_POINTS,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        specs = [TwoThresholdSpec.from_nu(theta_bar, nu) for theta_bar, nu in points]
        pairs = [(spec.theta1, spec.theta2) for spec in specs]
        config = SimConfig(params=params, n_slots=2, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius)
        for (theta_bar, nu), spec, estimate in zip(points, specs, simulator.joint_cdf_grid(config, pairs)):
            self.add_comparison(f"P2(theta_bar={theta_bar:g},nu={nu:g})",
                                two_threshold.joint_sir_cdf(params, spec), estimate)
        return self._finish()


class BoundedCheck(SimulationCheck):
    """Joint success with the bounded path loss min(1, v^-α)"""

    def __init__(self):
        super().__init__(check_name="bounded", description="Joint success with bounded path loss")

    def execute(self, params: Optional[NetworkParams] = None, n_max: int = 3,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or bounded_reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, n_slots=n_max, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius, path_loss="bounded")
        result = simulator.simulate(config)
        success = estimators.success_matrix(result.sir, params.theta)
        for n in range(1, n_max + 1):
            self.add_comparison(f"ps_{n}_bounded", joint_stats.joint_success_bounded(params, n),
                                estimators.joint_success(success, n))
            self.add_result(f"ps_{n}_unbounded", joint_stats.joint_success(params, n), "INFO")
        return self._finish()


class LocalDelayCheck(SimulationCheck):
    """Fixed-distance survival P(M > n) = 1 - ψ^(n) for n = 1..max_slots"""

    def __init__(self):
        super().__init__(check_name="local_delay", description="Local delay survival, fixed link distance")

    def execute(self, params: Optional[NetworkParams] = None, max_slots: int = 10,
                n_realizations: int = DEFAULT_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        params = params or reference_params()
        self._start(params, n_realizations, seed, workers)
        config = SimConfig(params=params, max_slots=max_slots, n_realizations=n_realizations, seed=seed,
                           workers=workers, window_radius=window_radius, estimator="local_delay")
        tail = simulator.local_delay_samples(config)
        for n in range(1, max_slots + 1):
            estimate = estimators.normal_estimate("delay_tail", tail.survival[n], tail.std_error[n],
                                                  tail.realizations)
            self.add_comparison(f"P(M>{n})", local_delay.delay_tail_fixed(params, n), estimate)
        if params.p < 1.0:
            self.add_result("mean_delay", local_delay.mean_delay_fixed(params), "INFO")
        return self._finish()


class RandomDistanceCheck(SimulationCheck):
    """Joint success averaged over a Rayleigh link distance, πμ/(πμ + Δ'D_n)"""

    def __init__(self):
        super().__init__(check_name="random_distance", description="Joint success, Rayleigh link distance")

    def execute(self, model: Optional[DelayModel] = None, n_max: int = 3,
                n_realizations: int = DELAY_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        model = model or random_distance_reference()
        self._start(model.base, n_realizations, seed, workers)
        self.add_input("mu", model.mu)
        config = SimConfig.from_delay_model(model, n_slots=n_max, n_realizations=n_realizations, seed=seed,
                                            workers=workers, window_radius=window_radius)
        result = simulator.simulate(config)
        success = estimators.success_matrix(result.sir, model.base.theta)
        for n in range(1, n_max + 1):
            self.add_comparison(f"ps_{n}_random", local_delay.joint_success_random_distance(model, n),
                                estimators.joint_success(success, n))
        return self._finish()


class IndependentMeanDelayCheck(SimulationCheck):
    """
    Mean local delay over a Rayleigh distance with interference redrawn per
    slot, truncated at max_slots + 1 so the target is exact
    """

    def __init__(self):
        super().__init__(check_name="independent_mean_delay",
                         description="Mean local delay, Rayleigh distance, independent interference")

    def execute(self, model: Optional[DelayModel] = None, max_slots: int = 20,
                n_realizations: int = DELAY_REALIZATIONS, seed: int = 0, workers: int = 1,
                window_radius: Optional[float] = None):
        model = model or random_distance_reference(p=2.0 / (3.0 * math.pi))
        self._start(model.base, n_realizations, seed, workers)
        self.add_input("mu", model.mu)
        self.add_input("max_slots", max_slots)
        config = SimConfig.from_delay_model(model, max_slots=max_slots, n_realizations=n_realizations,
                                            seed=seed, workers=workers, window_radius=window_radius,
                                            estimator="local_delay", independent_interference=True)
        target = local_delay.truncated_mean_delay_independent(model, max_slots)
        self.add_comparison("truncated_mean_delay", target, simulator.run(config))
        mean = local_delay.mean_delay_random(model, mode="independent")
        self.add_result("closed_form_mean_delay", mean.closed_form, "INFO",
                        details={'finite': mean.finite, 'truncated_mean_delay': target})
        return self._finish()


# Convenience functions for standalone use
def check_joint_success(**kwargs):
    return JointSuccessCheck().execute(**kwargs)


def check_at_least_once(**kwargs):
    return AtLeastOnceCheck().execute(**kwargs)


def check_correlation(**kwargs):
    return CorrelationCheck().execute(**kwargs)


def check_cond_after_failure(**kwargs):
    return CondAfterFailureCheck().execute(**kwargs)


def check_independent_gap(**kwargs):
    return IndependentGapCheck().execute(**kwargs)


def check_joint_cdf(**kwargs):
    return JointCdfCheck().execute(**kwargs)


def check_bounded(**kwargs):
    return BoundedCheck().execute(**kwargs)


def check_local_delay(**kwargs):
    return LocalDelayCheck().execute(**kwargs)


def check_random_distance(**kwargs):
    return RandomDistanceCheck().execute(**kwargs)


def check_independent_mean_delay(**kwargs):
    return IndependentMeanDelayCheck().execute(**kwargs)
