"""
Two-Threshold Transmissions
Joint SIR distribution of two slots with thresholds θ1, θ2, the symmetric
(θ̄, ν) parametrization and the threshold-design solvers
"""
from typing import Iterable, List, Optional, Tuple
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import optimize

from services.analytic.network import NetworkParams, contention
from services.errors import DomainError, InstabilityError, NoSolutionError

logger = logging.getLogger(__name__)

EQUAL_THRESHOLD_EPS = 1e-8
NU_EPS = 1e-8
SOLVER_XTOL = 1e-10
EQUALIZE_BRACKET = (-5.0, 0.0)
POST_FAILURE_LOG_SPAN = 20.0


class TwoThresholdSpec(BaseModel):
    """SIR thresholds of the two slots; (θ̄, ν) with θ̄ = √(θ1θ2), ν = log √(θ2/θ1)"""
    model_config = ConfigDict(frozen=True)

    theta1: float = Field(gt=0.0)
    theta2: float = Field(gt=0.0)

    @classmethod
    def from_nu(cls, theta_bar: float, nu: float) -> "TwoThresholdSpec":
        if not theta_bar > 0:
            raise DomainError(f"theta_bar must be positive, got {theta_bar}")
        return cls(theta1=theta_bar * math.exp(-nu), theta2=theta_bar * math.exp(nu))

    @property
    def theta_bar(self) -> float:
        return math.sqrt(self.theta1 * self.theta2)

    @property
    def nu(self) -> float:
        return 0.5 * math.log(self.theta2 / self.theta1)


def _sinh_ratio(nu: float, delta: float) -> float:
    """sinh(ν(1-δ))/sinh(ν), equal to 1-δ at ν = 0"""
    if abs(nu) < NU_EPS:
        return 1.0 - delta
    return math.sinh(nu * (1.0 - delta)) / math.sinh(nu)


def g_nu(p: float, delta: float, nu: float) -> float:
    """g(ν) = 2cosh(νδ) - p sinh(ν(1-δ))/sinh ν; minimal at g(0) = 2 - p(1-δ)"""
    return 2.0 * math.cosh(nu * delta) - p * _sinh_ratio(nu, delta)


def d2_hat(p: float, delta: float, theta1: float, theta2: float) -> float:
    """
    Two-slot diversity term D̂ with thresholds θ1, θ2

    p(θ1^δ + θ2^δ) + p²(θ1^δ θ2 - θ2^δ θ1)/(θ1 - θ2), with the limit
    θ^δ D_2(p, δ) when the thresholds coincide.
    """
    if not (theta1 > 0 and theta2 > 0):
        raise DomainError(f"thresholds must be positive, got ({theta1}, {theta2})")
    theta_bar = math.sqrt(theta1 * theta2)
    if abs(theta1 - theta2) / theta_bar < EQUAL_THRESHOLD_EPS:
        return theta_bar ** delta * (2.0 * p + (delta - 1.0) * p * p)
    cross = (theta1 ** delta * theta2 - theta2 ** delta * theta1) / (theta1 - theta2)
    return p * (theta1 ** delta + theta2 ** delta) + p * p * cross


def d2_hat_nu(p: float, delta: float, theta_bar: float, nu: float) -> float:
    """D̂ in hyperbolic form, p θ̄^δ g(ν)"""
    return p * theta_bar ** delta * g_nu(p, delta, nu)


def joint_success_two(params_base: NetworkParams, spec: TwoThresholdSpec) -> float:
    """P(SIR1 > θ1, SIR2 > θ2) = exp(-Δ̂ D̂)"""
    delta_hat = contention(params_base).delta_hat
    return math.exp(-delta_hat * d2_hat(params_base.p, params_base.delta, spec.theta1, spec.theta2))


def joint_sir_cdf(params_base: NetworkParams, spec: TwoThresholdSpec) -> float:
    """
    Joint CDF P2(θ1, θ2) = P(SIR1 <= θ1, SIR2 <= θ2)

    1 - e^{-Δ̂θ1^δ p} - e^{-Δ̂θ2^δ p} + e^{-Δ̂ D̂}
    """
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    # (1 - e^{-a}) - e^{-b}(1 - e^{-(D̂ - b)}) keeps small CDF values accurate
    a = delta_hat * p * spec.theta1 ** delta
    b = delta_hat * p * spec.theta2 ** delta
    joint = delta_hat * d2_hat(p, delta, spec.theta1, spec.theta2)
    value = -math.expm1(-a) + math.exp(-b) * math.expm1(b - joint)
    return min(1.0, max(0.0, value))


def joint_sir_cdf_nu(params_base: NetworkParams, theta_bar: float, nu: float) -> float:
    """P2(θ̄e^{-ν}, θ̄e^{ν}) through the hyperbolic form"""
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    x = delta_hat * p * theta_bar ** delta
    value = (1.0 - 2.0 * math.exp(-x * math.cosh(nu * delta)) * math.cosh(x * math.sinh(nu * delta))
             + math.exp(-x * g_nu(p, delta, nu)))
    return min(1.0, max(0.0, value))


def psi_two(params_base: NetworkParams, theta_bar: float, nu: float) -> float:
    """ψ^(2)(ν) = 1 - P2(θ̄e^{-ν}, θ̄e^{ν}), success at least once in two slots"""
    return 1.0 - joint_sir_cdf(params_base, TwoThresholdSpec.from_nu(theta_bar, nu))


class SymmetryCheck(BaseModel):
    """ψ^(2) over a ν grid and whether ν = 0 is its even minimum"""
    nu: List[float]
    psi: List[float]
    minimum_at_zero: bool
    even: bool

    @property
    def passed(self) -> bool:
        return self.minimum_at_zero and self.even


def symmetric_is_min_check(params_base: NetworkParams, theta_bar: float,
                           nu_grid: Optional[Iterable[float]] = None) -> SymmetryCheck:
    """
    Check that asymmetric thresholds never lower the at-least-once probability

    Args:
        params_base: Network parameters (θ is not used)
        theta_bar: Geometric-mean threshold
        nu_grid: ν values; defaults to 121 points on [-3, 3]

    Returns:
        SymmetryCheck: Curve plus minimum and evenness flags (evenness to 1e-12)
    """
    grid = sorted(set(float(v) for v in (nu_grid if nu_grid is not None else np.linspace(-3.0, 3.0, 121))) | {0.0})
    psi = [psi_two(params_base, theta_bar, nu) for nu in grid]
    at_zero = psi[grid.index(0.0)]
    minimum_at_zero = all(value >= at_zero - 1e-13 for value in psi)
    even = all(abs(psi_two(params_base, theta_bar, -nu) - value) <= 1e-12 for nu, value in zip(grid, psi))
    if not (minimum_at_zero and even):
        logger.warning(f"[TWO-THRESHOLD] Symmetry check failed at theta_bar={theta_bar}: "
                       f"minimum_at_zero={minimum_at_zero}, even={even}")
    return SymmetryCheck(nu=grid, psi=psi, minimum_at_zero=minimum_at_zero, even=even)


def _curvature(x: float, delta: float, p: float) -> float:
    """ν² coefficient of ψ^(2) as a function of x = Δ̂pθ̄^δ"""
    first = x * delta * delta * (x - 1.0) * math.exp(-x)
    second = (x * delta / 6.0) * (6.0 * delta + 2.0 * p - 3.0 * p * delta + p * delta * delta) \
        * math.exp(-x * (2.0 - p * (1.0 - delta)))
    return first + second


def quadratic_coeffs(params_base: NetworkParams, theta_bar: float) -> Tuple[float, float]:
    """
    Coefficients of ψ^(2)(ν) = A + Bν² + O(ν⁴)

    Returns:
        tuple: (A, B) with A = 2e^{-x} - e^{-x(2-p(1-δ))}, x = Δ̂pθ̄^δ

    Raises:
        InstabilityError: If B is not positive
    """
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    x = delta_hat * p * theta_bar ** delta
    a_coeff = 2.0 * math.exp(-x) - math.exp(-x * (2.0 - p * (1.0 - delta)))
    b_coeff = _curvature(x, delta, p)
    if p > 0.0 and delta_hat > 0.0 and not b_coeff > 0.0:
        raise InstabilityError(f"curvature B={b_coeff!r} is not positive at x={x}")
    return a_coeff, b_coeff


class CurvatureMaximum(BaseModel):
    b_max: float
    x: float
    delta: float
    p: float


def max_curvature() -> CurvatureMaximum:
    """
    Largest ν² coefficient B over x = Δ̂pθ̄^δ in [1e-3, 20], δ in [1e-3, 1], p in [0, 1]

    Coarse grid search followed by bounded quasi-Newton refinement.
    """
    bounds = [(1e-3, 20.0), (1e-3, 1.0), (0.0, 1.0)]
    xs = np.linspace(*bounds[0], 200)
    deltas = np.linspace(*bounds[1], 50)
    ps = np.linspace(*bounds[2], 11)
    best = max(((_curvature(x, d, p), x, d, p) for x in xs for d in deltas for p in ps))

    result = optimize.minimize(lambda v: -_curvature(*v), x0=np.array(best[1:]),
                               method="L-BFGS-B", bounds=bounds)
    x, delta, p = (float(v) for v in result.x)
    b_max = _curvature(x, delta, p)
    logger.info(f"[TWO-THRESHOLD] Maximum curvature B={b_max:.5f} at x={x:.4f}, delta={delta:.4f}")
    return CurvatureMaximum(b_max=b_max, x=x, delta=delta, p=p)


def affordable_asymmetry(p: float, delta: float) -> float:
    """
    Squared asymmetry ν̂² that keeps the joint success at P(S1)²

    p(1-δ)/(δ[δ + (p/6)(δ-1)(δ-2)]); approximate, from the quadratic bound on D̂
    """
    if not 0.0 < delta < 1.0:
        raise DomainError(f"affordable asymmetry requires 0 < δ < 1, got {delta}")
    return p * (1.0 - delta) / (delta * (delta + (p / 6.0) * (delta - 1.0) * (delta - 2.0)))


def taylor_d2_lower(p: float, delta: float, theta_bar: float, nu: float) -> float:
    """Quadratic lower bound pθ̄^δ(2 - p(1-δ) + δ[δ + (p/6)(δ-1)(δ-2)]ν²) on D̂"""
    return p * theta_bar ** delta * (2.0 - p * (1.0 - delta)
                                     + delta * (delta + (p / 6.0) * (delta - 1.0) * (delta - 2.0)) * nu * nu)


def _single_success(params_base: NetworkParams, theta: float) -> float:
    delta_hat = contention(params_base).delta_hat
    return math.exp(-delta_hat * params_base.p * theta ** params_base.delta)


def equalize_at_least_once(params_base: NetworkParams, theta_bar: float, exact: bool = False) -> float:
    """
    Asymmetry ν at which two correlated slots match independent slots in
    at-least-once success

    Approximate mode: e^{-νδ} = -log(1 - √(1 - ψ^(2)(0)))/(Δ̂pθ̄^δ).
    Exact mode: bisection of ψ^(2)(ν) = 1 - (1 - P(SIR > θ̄e^{-ν}))² on ν in [-5, 0].

    Raises:
        DomainError: If the right-hand side is not positive
        NoSolutionError: If the exact equation has no sign change in the bracket
    """
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    x = delta_hat * p * theta_bar ** delta
    a_coeff, _ = quadratic_coeffs(params_base, theta_bar)
    rhs = -math.log1p(-math.sqrt(1.0 - a_coeff)) / x if x > 0 else 0.0
    if not rhs > 0.0:
        raise DomainError(f"no asymmetry solves the design equation (rhs={rhs})")
    approx = -math.log(rhs) / delta
    if not exact:
        logger.debug(f"[TWO-THRESHOLD] Approximate equalizing nu={approx:.6f}")
        return approx

    def residual(nu: float) -> float:
        independent = 1.0 - (1.0 - _single_success(params_base, theta_bar * math.exp(-nu))) ** 2
        return psi_two(params_base, theta_bar, nu) - independent

    lo, hi = EQUALIZE_BRACKET
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo * f_hi > 0:
        raise NoSolutionError("equalizing asymmetry not bracketed on [-5, 0]",
                              bracket=(lo, hi), residuals=(f_lo, f_hi))
    nu = optimize.bisect(residual, lo, hi, xtol=SOLVER_XTOL, maxiter=200)
    logger.info(f"[TWO-THRESHOLD] Exact equalizing nu={nu:.8f} (approximate {approx:.6f})")
    return float(nu)


class ThresholdDesign(BaseModel):
    nu: float
    theta1: float
    theta2: float
    success: float
    exact: bool


def design_thresholds(params_base: NetworkParams, theta_bar: float, exact: bool = False) -> ThresholdDesign:
    """Thresholds θ̄(e^{-ν}, e^{ν}) from the equalizing ν and their at-least-once success"""
    nu = equalize_at_least_once(params_base, theta_bar, exact=exact)
    spec = TwoThresholdSpec.from_nu(theta_bar, nu)
    return ThresholdDesign(
        nu=nu,
        theta1=spec.theta1,
        theta2=spec.theta2,
        success=psi_two(params_base, theta_bar, nu),
        exact=exact,
    )


def cond_success_after_failure_two(params_base: NetworkParams, theta1: float, theta2: float) -> float:
    """P(SIR2 > θ2 | SIR1 <= θ1) = (e^{-Δ̂pθ2^δ} - e^{-Δ̂D̂})/(1 - e^{-Δ̂pθ1^δ})"""
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    failure = -math.expm1(-delta_hat * p * theta1 ** delta)
    if failure <= 0.0:
        raise DomainError("conditioning on a failure requires a positive outage probability")
    numerator = math.exp(-delta_hat * p * theta2 ** delta) - math.exp(-delta_hat * d2_hat(p, delta, theta1, theta2))
    return numerator / failure


def post_failure_threshold(params_base: NetworkParams, theta1: float) -> float:
    """
    Second-slot threshold θ2 after a failure at θ1 such that
    P(SIR2 > θ2 | SIR1 <= θ1) = P(SIR1 > θ1)

    Bisection on log θ2 in [log θ1 - 20, log θ1].

    Raises:
        NoSolutionError: If the bracket holds no sign change
        InstabilityError: If the root misses the conditional-probability check
    """
    if not theta1 > 0:
        raise DomainError(f"theta1 must be positive, got {theta1}")
    delta_hat = contention(params_base).delta_hat
    p, delta = params_base.p, params_base.delta
    single = _single_success(params_base, theta1)
    target = single * (1.0 - single)

    def residual(log_theta2: float) -> float:
        theta2 = math.exp(log_theta2)
        return (math.exp(-delta_hat * p * theta2 ** delta)
                - math.exp(-delta_hat * d2_hat(p, delta, theta1, theta2)) - target)

    hi = math.log(theta1)
    lo = hi - POST_FAILURE_LOG_SPAN
    f_lo, f_hi = residual(lo), residual(hi)
    if f_hi == 0.0:
        return theta1
    if f_lo * f_hi > 0:
        logger.warning(f"[TWO-THRESHOLD] No post-failure threshold for theta1={theta1}: "
                       f"residuals {f_lo:.3e}, {f_hi:.3e}")
        raise NoSolutionError("post-failure threshold not bracketed",
                              bracket=(math.exp(lo), theta1), residuals=(f_lo, f_hi))
    root = optimize.bisect(residual, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    theta2 = math.exp(root)
    if abs(residual(root)) > 1e-10:
        raise InstabilityError(f"post-failure residual {residual(root):.3e} above tolerance")
    conditional = cond_success_after_failure_two(params_base, theta1, theta2)
    if abs(conditional - single) > 1e-8:
        raise InstabilityError(f"P(S2|~S1)={conditional!r} differs from P(S1)={single!r}")
    return theta2


def sum_rate(theta_bar: float, nu: float) -> float:
    """log(1 + θ̄e^{-ν}) + log(1 + θ̄e^{ν}) in nats per channel use"""
    return math.log1p(theta_bar * math.exp(-nu)) + math.log1p(theta_bar * math.exp(nu))


def throughput_gain(theta_bar: float, nu: float) -> Tuple[float, float]:
    """
    Rate gain of thresholds θ̄(e^{-ν}, e^{ν}) over the symmetric pair

    Returns:
        tuple: (log(1 + 2θ̄(cosh ν - 1)/(1+θ̄)²), quadratic lower bound log(1 + θ̄ν²/(1+θ̄)²))
    """
    if not theta_bar > 0:
        raise DomainError(f"theta_bar must be positive, got {theta_bar}")
    scale = theta_bar / (1.0 + theta_bar) ** 2
    # cosh ν - 1 = 2 sinh²(ν/2)
    gain = math.log1p(4.0 * scale * math.sinh(nu / 2.0) ** 2)
    bound = math.log1p(scale * nu * nu)
    return gain, bound
