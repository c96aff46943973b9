"""
Poisson Field Simulator
Monte Carlo oracle for a link in a static Poisson field of ALOHA interferers
with iid Rayleigh fading across slots
"""
from multiprocessing import Pool
from typing import List, Literal, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from services.analytic.local_delay import DelayModel, DistanceMode
from services.analytic.network import NetworkParams, gamma_product
from services.errors import SimulationConfigError
from services.montecarlo import estimators
from services.montecarlo.estimators import DEFAULT_BATCHES, DelayTail, SimEstimate
from services.montecarlo.rng import SEED_MAX, chunk_layout, chunk_stream

logger = logging.getLogger(__name__)

# Out-of-window share of the interference exponent the default window allows
WINDOW_TOLERANCE = 1e-3
WINDOW_MIN_RATIO = 20.0
WINDOW_MAX_RATIO = 200.0
MAX_SLOTS_CAP = 1000

PathLoss = Literal["unbounded", "bounded"]
EstimatorName = Literal["joint_success", "at_least_once", "joint_cdf", "local_delay", "correlation",
                        "cond_after_success", "cond_after_failure"]
TWO_SLOT_ESTIMATORS = ("joint_cdf", "correlation", "cond_after_success", "cond_after_failure")


class SimConfig(BaseModel):
    """
    Simulation run description

    window_radius None selects the truncation rule of default_window_radius.
    For the local_delay estimator max_slots replaces n_slots.
    """
    model_config = ConfigDict(frozen=True)

    params: NetworkParams
    n_slots: int = Field(default=2, ge=1, le=MAX_SLOTS_CAP)
    n_realizations: int = Field(default=10_000, ge=100)
    window_radius: Optional[float] = Field(default=None, gt=0.0)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    path_loss: PathLoss = "unbounded"
    estimator: EstimatorName = "joint_success"
    thresholds: Optional[Tuple[float, float]] = None
    max_slots: Optional[int] = Field(default=None, ge=1, le=MAX_SLOTS_CAP)
    distance_mode: DistanceMode = "fixed"
    mu: Optional[float] = Field(default=None, gt=0.0)
    independent_interference: bool = False
    workers: int = Field(default=1, ge=1)
    batches: int = Field(default=DEFAULT_BATCHES, ge=2)

    @classmethod
    def from_delay_model(cls, model: DelayModel, **kwargs) -> "SimConfig":
        return cls(params=model.base, distance_mode=model.distance_mode, mu=model.mu, **kwargs)

    @property
    def slots(self) -> int:
        if self.estimator == "local_delay":
            return self.max_slots
        return self.n_slots


class SimulationResult(BaseModel):
    """Raw per-realization output: SIR and interference per slot, field size"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: SimConfig
    window_radius: float
    sir: np.ndarray
    interference: np.ndarray
    n_points: np.ndarray


def check_config(config: SimConfig) -> SimConfig:
    """
    Reject estimator / model combinations that cannot be simulated

    Raises:
        SimulationConfigError: On an inconsistent combination
    """
    if config.distance_mode == "rayleigh" and config.mu is None:
        raise SimulationConfigError("rayleigh distance mode requires mu")
    if config.estimator == "local_delay" and config.max_slots is None:
        raise SimulationConfigError("local_delay estimator requires max_slots")
    if config.estimator in TWO_SLOT_ESTIMATORS and config.n_slots < 2:
        raise SimulationConfigError(f"{config.estimator} estimator needs n_slots >= 2")
    if config.estimator == "joint_cdf":
        if config.thresholds is None:
            raise SimulationConfigError("joint_cdf estimator requires thresholds (theta1, theta2)")
        if min(config.thresholds) <= 0.0:
            raise SimulationConfigError(f"thresholds must be positive, got {config.thresholds}")
    elif config.thresholds is not None:
        raise SimulationConfigError(f"thresholds only apply to joint_cdf, not {config.estimator}")
    return config


def independent_interference_toggle(config: SimConfig, enabled: bool = True) -> SimConfig:
    """Copy of the config that redraws the whole point process in every slot"""
    return config.model_copy(update={"independent_interference": enabled})


def _reference_distance(config: SimConfig) -> float:
    if config.distance_mode == "rayleigh":
        # 90% quantile of the Rayleigh link distance
        return math.sqrt(math.log(10.0) / (math.pi * config.mu))
    return config.params.r


def _far_field_scale(config: SimConfig) -> float:
    params = config.params
    delta = params.delta
    theta = max(config.thresholds) if config.thresholds else params.theta
    return theta ** (1.0 - delta) * delta / ((1.0 - delta) * gamma_product(delta))


def outside_share(config: SimConfig, ratio: float) -> float:
    """Share of the interference exponent contributed beyond ratio reference distances"""
    alpha_minus_2 = config.params.alpha - 2.0
    return _far_field_scale(config) * math.exp(-alpha_minus_2 * math.log(ratio))


def default_window_radius(config: SimConfig) -> float:
    """
    Simulation disk radius

    The smallest radius whose neglected interference is below 1e-3 of the
    contention exponent, at least 20 and at most 200 link distances.
    """
    reference = _reference_distance(config)
    alpha_minus_2 = config.params.alpha - 2.0
    log_ratio = math.log(_far_field_scale(config) / WINDOW_TOLERANCE) / alpha_minus_2
    if log_ratio > math.log(WINDOW_MAX_RATIO):
        bias = outside_share(config, WINDOW_MAX_RATIO)
        logger.warning(f"[MC] Window capped at {WINDOW_MAX_RATIO:g} link distances; "
                       f"neglected share of the interference exponent ≈ {bias:.3g}")
        return WINDOW_MAX_RATIO * reference
    return max(WINDOW_MIN_RATIO, math.exp(log_ratio)) * reference


def _path_gain(distance: np.ndarray, alpha: float, path_loss: PathLoss) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        gain = np.exp(-alpha * np.log(distance))
    if path_loss == "bounded":
        gain = np.minimum(1.0, gain)
    return gain


def _sample_field(rng: np.random.Generator, size: int, mean_points: float, window: float,
                  alpha: float, path_loss: PathLoss):
    """Independent PPP realizations in the disk: (owner index, path gain, counts)"""
    counts = rng.poisson(mean_points, size=size)
    radii = window * np.sqrt(rng.random(int(counts.sum())))
    owner = np.repeat(np.arange(size), counts)
    return owner, _path_gain(radii, alpha, path_loss), counts


def _simulate_chunk(task) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    config, window, chunk_index, size = task
    rng = chunk_stream(config.seed, chunk_index)
    params = config.params
    alpha = params.alpha
    slots = config.slots

    if config.distance_mode == "rayleigh":
        link = np.sqrt(rng.exponential(scale=1.0 / (math.pi * config.mu), size=size))
    else:
        link = np.full(size, params.r)
    link_gain = _path_gain(link, alpha, config.path_loss)

    mean_points = params.lam * math.pi * window * window
    owner, gain, counts = _sample_field(rng, size, mean_points, window, alpha, config.path_loss)
    interference = np.empty((size, slots))
    for k in range(slots):
        if config.independent_interference and k > 0:
            owner, gain, _ = _sample_field(rng, size, mean_points, window, alpha, config.path_loss)
        marks = rng.random(gain.size) < params.p
        fading = rng.exponential(size=gain.size)
        with np.errstate(invalid="ignore", over="ignore"):
            contribution = np.where(marks, fading * gain, 0.0)
        interference[:, k] = np.bincount(owner, weights=contribution, minlength=size)

    desired = rng.exponential(size=(size, slots)) * link_gain[:, None]
    sir = np.full_like(desired, np.inf)
    with np.errstate(invalid="ignore"):
        np.divide(desired, interference, out=sir, where=interference > 0.0)
    return sir, interference, counts


def simulate(config: SimConfig) -> SimulationResult:
    """
    Draw all realizations of a configuration

    Chunks run serially or on a process pool; the reduction is in chunk
    order, so the output is identical for any worker count.
    """
    check_config(config)
    window = config.window_radius or default_window_radius(config)
    layout = chunk_layout(config.n_realizations)
    tasks = [(config, window, index, size) for index, _, size in layout]
    logger.info(f"[MC] Simulating {config.n_realizations} realizations x {config.slots} slots "
                f"(window {window:.4g}, {config.workers} worker(s), estimator {config.estimator})")

    if config.workers > 1 and len(tasks) > 1:
        with Pool(processes=min(config.workers, len(tasks))) as pool:
            parts = pool.map(_simulate_chunk, tasks)
    else:
        parts = [_simulate_chunk(task) for task in tasks]

    return SimulationResult(
        config=config,
        window_radius=window,
        sir=np.concatenate([part[0] for part in parts]),
        interference=np.concatenate([part[1] for part in parts]),
        n_points=np.concatenate([part[2] for part in parts]),
    )


def estimate(result: SimulationResult) -> SimEstimate:
    """Apply the configured estimator to simulated realizations"""
    config = result.config
    theta = config.params.theta
    success = estimators.success_matrix(result.sir, theta)
    name = config.estimator
    if name == "joint_success":
        return estimators.joint_success(success, config.n_slots)
    if name == "at_least_once":
        return estimators.at_least_once(success, config.n_slots)
    if name == "joint_cdf":
        return estimators.joint_cdf(result.sir, *config.thresholds)
    if name == "local_delay":
        return estimators.local_delay(success, config.batches)
    if name == "correlation":
        return estimators.correlation(success, config.batches)
    if name == "cond_after_success":
        return estimators.cond_after_success(success, config.n_slots, config.batches)
    if name == "cond_after_failure":
        return estimators.cond_after_failure(success, config.batches)
    raise SimulationConfigError(f"Unknown estimator '{name}'")


def run(config: SimConfig) -> SimEstimate:
    """
    Simulate and aggregate one configuration

    Returns:
        SimEstimate: Mean, standard error, effective sample count and 95% interval
    """
    result = estimate(simulate(config))
    logger.info(f"[MC] {config.estimator}: {result.mean:.6g} ± {result.std_error:.2g} "
                f"(n_eff={result.n_effective})")
    return result


def joint_cdf_grid(config: SimConfig, pairs: Sequence[Tuple[float, float]]) -> List[SimEstimate]:
    """P(SIR_1 <= θ1, SIR_2 <= θ2) on a threshold grid from one set of realizations"""
    if not pairs:
        raise SimulationConfigError("threshold grid is empty")
    base = config.model_copy(update={"estimator": "joint_cdf", "thresholds": tuple(pairs[0]),
                                     "n_slots": max(2, config.n_slots)})
    result = simulate(base)
    return [estimators.joint_cdf(result.sir, theta1, theta2) for theta1, theta2 in pairs]


def local_delay_samples(config: SimConfig) -> DelayTail:
    """
    Empirical P(M > n) for n = 0..max_slots

    Realizations still failing after max_slots count towards P(M > max_slots).
    In rayleigh mode each realization holds one drawn link distance.
    """
    delay_config = config.model_copy(update={"estimator": "local_delay"})
    result = simulate(delay_config)
    success = estimators.success_matrix(result.sir, config.params.theta)
    return estimators.delay_survival(success)


def interference_tail_slope(config: SimConfig) -> Optional[float]:
    """Log-log slope of the empirical interference tail P(I > t); close to -δ"""
    result = simulate(config)
    slope = estimators.tail_slope(result.interference.ravel())
    logger.info(f"[MC] Interference tail slope {slope} (delta {config.params.delta:.4g})")
    return slope
