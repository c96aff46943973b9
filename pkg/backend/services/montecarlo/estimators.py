"""
Estimators
Per-realization statistics of the SIR sequence and their aggregation into
means with normal-approximation confidence intervals
"""
from typing import Callable, Optional, Tuple
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import stats

logger = logging.getLogger(__name__)

CONFIDENCE = 0.95
DEFAULT_BATCHES = 50


class SimEstimate(BaseModel):
    """Monte Carlo estimate with standard error and 95% interval"""
    model_config = ConfigDict(frozen=True)

    estimator: str
    mean: float
    std_error: float = Field(ge=0.0)
    n_effective: int = Field(ge=0)
    ci95: Tuple[float, float]

    @model_validator(mode="after")
    def _check_interval(self) -> "SimEstimate":
        lo, hi = self.ci95
        if math.isfinite(self.mean) and not lo <= self.mean <= hi:
            raise ValueError(f"interval {self.ci95} does not contain the mean {self.mean}")
        return self

    def z_score(self, target: float) -> float:
        """(mean - target)/std_error; 0 for an exact match with zero spread"""
        difference = self.mean - target
        if self.std_error == 0.0:
            return 0.0 if abs(difference) <= 1e-15 else math.copysign(math.inf, difference)
        return difference / self.std_error


def _interval(mean: float, std_error: float) -> Tuple[float, float]:
    half = stats.norm.ppf(0.5 + CONFIDENCE / 2.0) * std_error
    return (mean - half, mean + half)


def normal_estimate(name: str, mean: float, std_error: float, n_effective: int) -> SimEstimate:
    """Estimate from a mean and standard error computed elsewhere"""
    return SimEstimate(estimator=name, mean=mean, std_error=std_error, n_effective=n_effective,
                       ci95=_interval(mean, std_error))


def proportion_estimate(name: str, hits: np.ndarray) -> SimEstimate:
    """Binomial proportion with standard error sqrt(m(1-m)/N)"""
    count = int(hits.size)
    if count == 0:
        raise ValueError("no realizations to aggregate")
    mean = float(np.mean(hits))
    std_error = math.sqrt(max(mean * (1.0 - mean), 0.0) / count)
    return SimEstimate(estimator=name, mean=mean, std_error=std_error, n_effective=count,
                       ci95=_interval(mean, std_error))


def batch_estimate(name: str, columns: Tuple[np.ndarray, ...],
                   statistic: Callable[..., float], batches: int = DEFAULT_BATCHES) -> SimEstimate:
    """
    Batch-means estimate for ratios and heavy-tailed means

    The point estimate uses all realizations; the standard error comes from
    the spread of the statistic over contiguous batches. Batches where the
    statistic is undefined are dropped.
    """
    total = int(columns[0].size)
    if total == 0:
        raise ValueError("no realizations to aggregate")
    mean = float(statistic(*columns))
    batches = max(2, min(batches, total))
    edges = np.linspace(0, total, batches + 1).astype(int)
    values = np.array([statistic(*(column[lo:hi] for column in columns))
                       for lo, hi in zip(edges[:-1], edges[1:])], dtype=float)
    values = values[np.isfinite(values)]
    if values.size < 2:
        logger.warning(f"[MC] {name}: fewer than two usable batches, standard error unavailable")
        return SimEstimate(estimator=name, mean=mean, std_error=0.0, n_effective=int(values.size),
                           ci95=(mean, mean))
    std_error = float(np.std(values, ddof=1) / math.sqrt(values.size))
    if not math.isfinite(mean):
        return SimEstimate(estimator=name, mean=mean, std_error=std_error, n_effective=int(values.size),
                           ci95=(mean, mean))
    return SimEstimate(estimator=name, mean=mean, std_error=std_error, n_effective=int(values.size),
                       ci95=_interval(mean, std_error))


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> float:
    count = np.sum(denominator)
    return float(np.sum(numerator) / count) if count > 0 else math.nan


def _pearson(first: np.ndarray, second: np.ndarray) -> float:
    a = first.astype(float)
    b = second.astype(float)
    spread = np.std(a) * np.std(b)
    if spread == 0.0:
        return math.nan
    return float(np.mean((a - a.mean()) * (b - b.mean())) / spread)


def success_matrix(sir: np.ndarray, theta) -> np.ndarray:
    """Boolean success indicators SIR > θ; θ may vary per slot"""
    return sir > np.asarray(theta, dtype=float)


def joint_success(success: np.ndarray, n: int) -> SimEstimate:
    return proportion_estimate("joint_success", np.all(success[:, :n], axis=1))


def at_least_once(success: np.ndarray, n: int) -> SimEstimate:
    return proportion_estimate("at_least_once", np.any(success[:, :n], axis=1))


def joint_cdf(sir: np.ndarray, theta1: float, theta2: float) -> SimEstimate:
    """P(SIR_1 <= θ1, SIR_2 <= θ2)"""
    return proportion_estimate("joint_cdf", (sir[:, 0] <= theta1) & (sir[:, 1] <= theta2))


def correlation(success: np.ndarray, batches: int = DEFAULT_BATCHES) -> SimEstimate:
    """Pearson correlation of the success indicators of slots 1 and 2"""
    return batch_estimate("correlation", (success[:, 0], success[:, 1]), _pearson, batches)


def cond_after_success(success: np.ndarray, n: int, batches: int = DEFAULT_BATCHES) -> SimEstimate:
    """P(S_n | S_1, ..., S_{n-1})"""
    if n < 2:
        raise ValueError("conditioning on earlier successes needs n >= 2")
    previous = np.all(success[:, :n - 1], axis=1)
    current = previous & success[:, n - 1]
    return batch_estimate("cond_after_success", (current, previous), _ratio, batches)


def cond_after_failure(success: np.ndarray, batches: int = DEFAULT_BATCHES) -> SimEstimate:
    """P(S_2 | not S_1)"""
    failed = ~success[:, 0]
    return batch_estimate("cond_after_failure", (failed & success[:, 1], failed), _ratio, batches)


def first_success(success: np.ndarray) -> np.ndarray:
    """
    Slot index of the first success (1-based); realizations without a
    success get max_slots + 1
    """
    max_slots = success.shape[1]
    any_hit = np.any(success, axis=1)
    return np.where(any_hit, np.argmax(success, axis=1) + 1, max_slots + 1)


def local_delay(success: np.ndarray, batches: int = DEFAULT_BATCHES) -> SimEstimate:
    """Mean of min(M, max_slots + 1); equals E[M] when P(M > max_slots) is negligible"""
    delays = first_success(success).astype(float)
    return batch_estimate("local_delay", (delays,), lambda values: float(np.mean(values)), batches)


class DelayTail(BaseModel):
    """Empirical survival P(M > n) for n = 0..max_slots with binomial intervals"""
    n: list
    survival: list
    std_error: list
    ci_lo: list
    ci_hi: list
    realizations: int


def delay_survival(success: np.ndarray) -> DelayTail:
    delays = first_success(success)
    max_slots = success.shape[1]
    count = delays.size
    survival, std_error, lo, hi = [], [], [], []
    for n in range(max_slots + 1):
        value = float(np.mean(delays > n))
        error = math.sqrt(value * (1.0 - value) / count)
        low, high = _interval(value, error)
        survival.append(value)
        std_error.append(error)
        lo.append(max(0.0, low))
        hi.append(min(1.0, high))
    return DelayTail(n=list(range(max_slots + 1)), survival=survival, std_error=std_error,
                     ci_lo=lo, ci_hi=hi, realizations=int(count))


def tail_slope(samples: np.ndarray, quantiles: Tuple[float, float] = (0.99, 0.999),
               points: int = 12) -> Optional[float]:
    """
    Log-log slope of the empirical survival function between two quantiles

    Returns:
        float or None: Least-squares slope, None when the tail is degenerate
    """
    samples = np.asarray(samples, dtype=float)
    samples = samples[np.isfinite(samples) & (samples > 0)]
    if samples.size < 100:
        return None
    lo, hi = np.quantile(samples, quantiles)
    if not hi > lo > 0:
        return None
    grid = np.geomspace(lo, hi, points)
    ordered = np.sort(samples)
    survival = 1.0 - np.searchsorted(ordered, grid, side="right") / ordered.size
    keep = survival > 0
    if np.count_nonzero(keep) < 3:
        return None
    slope, _ = np.polyfit(np.log(grid[keep]), np.log(survival[keep]), 1)
    return float(slope)
