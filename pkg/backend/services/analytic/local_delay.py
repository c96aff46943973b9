"""
Local Delay
Distribution and mean of the number of slots until the first success, for a
fixed link distance and for a Rayleigh-distributed (but static) distance
"""
from fractions import Fraction
from typing import Literal, Optional, Union
import logging
import math

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import optimize

from services.analytic.diversity import N_CAP, div_poly, div_poly_mp
from services.analytic.joint_stats import guarded_alternating_sum, joint_outage
from services.analytic.network import NetworkParams, contention, gamma_product
from services.analytic.specfun import gauss_2f1, log_gamma
from services.errors import DomainError, InstabilityError

logger = logging.getLogger(__name__)

PCRIT_XTOL = 1e-10
# Stopping rule for the dependent random-distance mean
MEAN_TERM_RTOL = 1e-12
MEAN_TAIL_RTOL = 1e-6
MEAN_MAX_TERMS = 400

DistanceMode = Literal["fixed", "rayleigh"]
InterferenceMode = Literal["dependent", "independent"]
Regime = Literal["finite", "finite_if_independent", "infinite"]


class DelayModel(BaseModel):
    """
    Local-delay configuration

    In rayleigh mode the link distance is drawn once from a Rayleigh law
    with mean 1/(2√μ) and held for all slots; base.r is then unused.
    """
    model_config = ConfigDict(frozen=True)

    base: NetworkParams
    distance_mode: DistanceMode = "fixed"
    mu: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _check_mode(self) -> "DelayModel":
        if self.distance_mode == "rayleigh" and self.mu is None:
            raise ValueError("rayleigh distance mode requires a receiver intensity mu > 0")
        return self

    @property
    def delta_prime_ratio(self) -> float:
        """Δ'' = Δ'/(πμ)"""
        self._require_rayleigh()
        return contention(self.base).delta_prime / (math.pi * self.mu)

    def _require_rayleigh(self):
        if self.distance_mode != "rayleigh":
            raise DomainError("operation requires the rayleigh distance mode")


def joint_success_random_distance(model: DelayModel, n: int) -> float:
    """
    Joint success over a Rayleigh link distance, πμ/(πμ + Δ' D_n(p, δ))

    Args:
        model: Delay model in rayleigh mode
        n: Number of transmissions
    """
    model._require_rayleigh()
    ratio = model.delta_prime_ratio
    return 1.0 / (1.0 + ratio * div_poly(n, model.base.p, model.base.delta))


def joint_success_random_small_p(model: DelayModel, n: int) -> float:
    """Second-order expansion in p: 1 - nΔ''p + [C(n,2)Δ''(1-δ) + n²Δ''²]p²"""
    model._require_rayleigh()
    ratio = model.delta_prime_ratio
    p, delta = model.base.p, model.base.delta
    second = math.comb(n, 2) * ratio * (1.0 - delta) + n * n * ratio * ratio
    return 1.0 - n * ratio * p + second * p * p


def joint_success_all_transmit(params: NetworkParams, n: int) -> float:
    """
    Random-distance joint success when every node is an ALOHA transmitter
    and receivers have intensity (1-p)λ

    p^n(1-p)/(1 - p + θ^δ Γ(1+δ)Γ(1-δ) D_n(p, δ))
    """
    p, delta = params.p, params.delta
    if p >= 1.0:
        return 0.0
    spread = params.theta ** delta * gamma_product(delta) * div_poly(n, p, delta)
    return p ** n * (1.0 - p) / (1.0 - p + spread)


def delay_tail_fixed(params: NetworkParams, n: int) -> float:
    """P(M > n) = p_o^(n) for a fixed link distance; P(M > 0) = 1"""
    if n == 0:
        return 1.0
    return joint_outage(params, n)


def delay_pmf_fixed(params: NetworkParams, n: int) -> float:
    """
    P(M = n) = Σ_k (-1)^{k+1} C(n-1,k-1) exp(-Δ D_k(p, δ))

    Raises:
        InstabilityError: If the alternating sum comes out negative
    """
    if not 1 <= n <= N_CAP:
        raise DomainError(f"delay index must lie in [1, {N_CAP}], got {n}")
    big_delta = contention(params).big_delta
    p, delta = params.p, params.delta
    terms = [(-1) ** (k + 1) * math.comb(n - 1, k - 1) * math.exp(-big_delta * div_poly(k, p, delta))
             for k in range(1, n + 1)]

    def _mp_terms(dps: int):
        bd = mpmath.mpf(big_delta)
        return [(-1) ** (k + 1) * mpmath.binomial(n - 1, k - 1) * mpmath.exp(-bd * div_poly_mp(k, p, delta, dps))
                for k in range(1, n + 1)]

    value = guarded_alternating_sum(terms, _mp_terms, f"P(M={n})")
    if value < 0.0:
        if value < -1e-12:
            raise InstabilityError(f"P(M={n})={value!r} is negative")
        value = 0.0
    return value


def mean_delay_fixed(params: NetworkParams) -> float:
    """
    Mean local delay for a fixed distance, exp(Δp/(1-p)^{1-δ})

    Raises:
        DomainError: At p = 1
    """
    p = params.p
    if p >= 1.0:
        raise DomainError("mean delay is defined for p < 1")
    big_delta = contention(params).big_delta
    return math.exp(big_delta * p / (1.0 - p) ** (1.0 - params.delta))


class DelayMean(BaseModel):
    """Mean local delay with convergence diagnostics of the series evaluation"""
    mode: InterferenceMode
    value: float
    finite: bool
    closed_form: float
    partial_sum: Optional[float] = None
    tail_estimate: Optional[float] = None
    terms: int = 0
    converged: bool = True


def _effective_load(model: DelayModel) -> float:
    """Δ''p/(1-p)^{1-δ}; the dependent mean is finite iff this is below 1"""
    p = model.base.p
    if p >= 1.0:
        return math.inf
    return model.delta_prime_ratio * p / (1.0 - p) ** (1.0 - model.base.delta)


def _dependent_series(model: DelayModel, max_terms: int):
    """
    Partial sums of Σ_k P(M > k) with P(M > k) = Σ_j (-1)^j C(k,j)/(1 + Δ'' D_j)

    The alternating sums are exact to working precision only with about
    0.3 k extra digits, so the whole series runs in mpmath.
    """
    ratio = model.delta_prime_ratio
    p, delta = model.base.p, model.base.delta
    dps = 60 + int(0.31 * max_terms)
    with mpmath.workdps(dps):
        ratio_mp = mpmath.mpf(ratio)
        singles = [mpmath.mpf(1)]  # 1/(1 + Δ'' D_j)
        partial = mpmath.mpf(1)  # k = 0 term
        previous = mpmath.mpf(1)
        tail = mpmath.inf
        k = 0
        for k in range(1, max_terms + 1):
            singles.append(1 / (1 + ratio_mp * div_poly_mp(k, p, delta, dps)))
            term = mpmath.fsum((-1) ** j * math.comb(k, j) * singles[j] for j in range(k + 1))
            partial += term
            if k >= 2 and term > 0 and previous > 0:
                # local power-law exponent of the survival function
                slope = mpmath.log(term / previous) / mpmath.log(mpmath.mpf(k) / (k - 1))
                tail = term * k / (-slope - 1) if slope < -1 else mpmath.inf
                if term < MEAN_TERM_RTOL * partial and tail < MEAN_TAIL_RTOL * partial:
                    return float(partial), float(tail), k, True
            previous = term
        return float(partial), float(tail), k, False


def mean_delay_random(model: DelayModel, mode: InterferenceMode = "dependent",
                      max_terms: int = MEAN_MAX_TERMS) -> DelayMean:
    """
    Mean local delay over a Rayleigh link distance

    independent: πμ/(πμ - Δ'p) when Δ'p < πμ, else infinite.
    dependent: infinite unless Δ'p/(1-p)^{1-δ} < πμ; otherwise the closed form
    1/(1 - Δ''p/(1-p)^{1-δ}) together with partial sums of Σ_k P(M > k) and a
    power-law tail estimate. A series that misses its stopping rule is
    reported with converged=False.
    """
    model._require_rayleigh()
    p = model.base.p
    ratio = model.delta_prime_ratio
    if mode == "independent":
        load = ratio * p
        if load >= 1.0:
            return DelayMean(mode=mode, value=math.inf, finite=False, closed_form=math.inf)
        closed = 1.0 / (1.0 - load)
        return DelayMean(mode=mode, value=closed, finite=True, closed_form=closed)
    if mode != "dependent":
        raise ValueError(f"Unknown interference mode '{mode}'")

    load = _effective_load(model)
    if load >= 1.0:
        logger.info(f"[DELAY] Dependent mean delay infinite (load {load:.4g} >= 1)")
        return DelayMean(mode=mode, value=math.inf, finite=False, closed_form=math.inf)
    closed = 1.0 / (1.0 - load)
    if ratio * p == 0.0:
        return DelayMean(mode=mode, value=1.0, finite=True, closed_form=1.0, partial_sum=1.0,
                         tail_estimate=0.0, terms=0, converged=True)

    partial, tail, terms, converged = _dependent_series(model, max_terms)
    if not converged:
        logger.warning(f"[DELAY] Mean-delay series not converged after {terms} terms "
                       f"(partial {partial:.6g}, tail estimate {tail:.3g}, closed form {closed:.6g})")
    value = partial + tail if math.isfinite(tail) else partial
    return DelayMean(mode=mode, value=value, finite=True, closed_form=closed, partial_sum=partial,
                     tail_estimate=tail, terms=terms, converged=converged)


class CriticalProbabilities(BaseModel):
    p_c: float
    p_c_ind: float


def critical_probabilities(model: DelayModel) -> CriticalProbabilities:
    """
    ALOHA probabilities above which the mean local delay is infinite

    p_c solves Δ'p/(1-p)^{1-δ} = πμ (bisection, tolerance 1e-10);
    p_c_ind = πμ/Δ' clamped to 1.
    """
    model._require_rayleigh()
    ratio = model.delta_prime_ratio
    delta = model.base.delta
    if ratio <= 0.0:
        return CriticalProbabilities(p_c=1.0, p_c_ind=1.0)
    p_c_ind = min(1.0, 1.0 / ratio)

    def excess(p: float) -> float:
        return ratio * p / (1.0 - p) ** (1.0 - delta) - 1.0

    upper = 1.0 - 1e-15
    if excess(upper) <= 0.0:
        p_c = 1.0
    else:
        p_c = float(optimize.bisect(excess, 0.0, upper, xtol=PCRIT_XTOL, maxiter=200))
    if p_c > p_c_ind + PCRIT_XTOL:
        raise InstabilityError(f"p_c={p_c} exceeds p_c_ind={p_c_ind}")
    logger.debug(f"[DELAY] Critical probabilities p_c={p_c:.8f}, p_c_ind={p_c_ind:.8f}")
    return CriticalProbabilities(p_c=p_c, p_c_ind=p_c_ind)


def regime(model: DelayModel, p: Optional[float] = None) -> Regime:
    """Which of the three mean-delay regimes the transmit probability falls in"""
    probabilities = critical_probabilities(model)
    p = model.base.p if p is None else p
    if p < probabilities.p_c:
        return "finite"
    if p < probabilities.p_c_ind:
        return "finite_if_independent"
    return "infinite"


class IndependentPmf(BaseModel):
    value: float
    bound: float
    ratio: float


def delay_pmf_independent(model: DelayModel, n: int) -> IndependentPmf:
    """
    P(M = n) with independent interference and a Rayleigh link distance

    Γ(n+1)Γ(1+s)/(Δ''np Γ(n+1+s)) with s = 1/(Δ''p), and the asymptotic form
    Γ(1+s)/(nΔ''p) n^{-s}. The ratio exact/asymptotic tends to one as n grows.
    """
    model._require_rayleigh()
    if n < 1:
        raise DomainError(f"delay index must be >= 1, got {n}")
    beta_p = model.delta_prime_ratio * model.base.p
    if beta_p == 0.0:
        value = 1.0 if n == 1 else 0.0
        return IndependentPmf(value=value, bound=value, ratio=1.0)
    s = 1.0 / beta_p
    log_value = math.log(s / n) + log_gamma(n + 1) + log_gamma(1.0 + s) - log_gamma(n + 1 + s)
    log_bound = math.log(s / n) + log_gamma(1.0 + s) - s * math.log(n)
    return IndependentPmf(value=math.exp(log_value), bound=math.exp(log_bound),
                          ratio=math.exp(log_value - log_bound))


def delay_tail_independent(model: DelayModel, n: int) -> float:
    """P(M > n) = Γ(1+s)Γ(n+1)/Γ(n+1+s) with independent interference, s = 1/(Δ''p)"""
    model._require_rayleigh()
    if n < 0:
        raise DomainError(f"delay index must be >= 0, got {n}")
    beta_p = model.delta_prime_ratio * model.base.p
    if n == 0:
        return 1.0
    if beta_p == 0.0:
        return 0.0
    s = 1.0 / beta_p
    return math.exp(log_gamma(1.0 + s) + log_gamma(n + 1.0) - log_gamma(n + 1.0 + s))


def truncated_mean_delay_independent(model: DelayModel, max_slots: int) -> float:
    """E[min(M, max_slots + 1)] = Σ_{n=0}^{max_slots} P(M > n), independent interference"""
    return math.fsum(delay_tail_independent(model, n) for n in range(max_slots + 1))


def alternating_pmf_rational(beta: Union[Fraction, float, int, str], n: int) -> Fraction:
    """Exact Σ_k (-1)^{k+1} C(n-1,k-1)/(1 + kβ) in rational arithmetic"""
    beta = Fraction(beta)
    return sum((Fraction((-1) ** (k + 1) * math.comb(n - 1, k - 1)) / (1 + k * beta)
                for k in range(1, n + 1)), Fraction(0))


class IdentityCheck(BaseModel):
    """Partial sums of the binomial identity Σ_n Σ_k (-1)^k C(n,k)/(1+kβ) = 1/(1-β)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    beta: Fraction
    n_max: int
    partial: Fraction
    target: Fraction
    residual: float
    analytic_tail: float
    completed_residual: float


def _identity_tail(beta: Fraction, n_max: int) -> float:
    """Σ_{n > n_max} of the inner sums, Γ(s+1)Γ(n_max+2)/((s-1)Γ(n_max+1+s)) with s = 1/β"""
    if beta == 0:
        return 0.0
    s = 1.0 / float(beta)
    return math.exp(log_gamma(s + 1.0) + log_gamma(n_max + 2.0) - log_gamma(n_max + 1.0 + s)) / (s - 1.0)


def binomial_identity_check(beta: Union[Fraction, float, int, str], n_max: int) -> IdentityCheck:
    """
    Exact rational partial sum of the binomial identity up to n_max

    Args:
        beta: 0 <= β < 1
        n_max: Last outer index

    Returns:
        IdentityCheck: Partial sum, residual against 1/(1-β), the closed-form
        remainder and the residual once the remainder is added
    """
    beta = Fraction(beta)
    if not 0 <= beta < 1:
        raise DomainError(f"binomial identity requires 0 <= beta < 1, got {beta}")
    partial = Fraction(0)
    for n in range(n_max + 1):
        partial += sum((Fraction((-1) ** k * math.comb(n, k)) / (1 + k * beta) for k in range(n + 1)), Fraction(0))
    target = 1 / (1 - beta)
    tail = _identity_tail(beta, n_max)
    residual = float(partial - target)
    return IdentityCheck(
        beta=beta,
        n_max=n_max,
        partial=partial,
        target=target,
        residual=residual,
        analytic_tail=tail,
        completed_residual=residual + tail,
    )


class TaylorMeanDelay(BaseModel):
    n: int
    m_hat_n: float
    m_hat: float
    remainder: float = 0.0


def taylor_g_sum(n: int, p: float, delta: float) -> float:
    """G = 2F1(1, n+1-δ; n+1; p), bounded by 1/(1-p)"""
    return gauss_2f1(1.0, n + 1.0 - delta, n + 1.0, p)


def _taylor_remainder(big_delta: float, p: float, delta: float, n: int) -> float:
    """M̂ - M̂_n = Δ Σ_{k>n} p^k Γ(k-δ)/(Γ(k)Γ(1-δ))"""
    log_coeff = log_gamma(n + 1.0 - delta) - log_gamma(n + 1.0) - log_gamma(1.0 - delta)
    return big_delta * p ** (n + 1) * math.exp(log_coeff) * taylor_g_sum(n, p, delta)


def taylor_mean_delay(params: NetworkParams, n: int) -> TaylorMeanDelay:
    """
    Mean-delay estimate from the first-order outage expansion

    M̂_n = 1 + Δp(1-p)^{δ-1} - Δp^{n+1} Γ(n+1-δ) 2F1(1, n+1-δ; n+1; p)/(Γ(n+1)Γ(1-δ))
    and its limit M̂ = 1 + Δp(1-p)^{δ-1}, the first-order expansion of the
    exact mean exp(Δp/(1-p)^{1-δ}). M̂_n increases to M̂: the remainder is
    non-negative and does not grow with n.

    Raises:
        DomainError: If p is outside [0, 1) or n < 0
        InstabilityError: If the evaluated remainder breaks that monotone approach
    """
    p, delta = params.p, params.delta
    if not 0.0 <= p < 1.0:
        raise DomainError("Taylor mean delay requires 0 <= p < 1")
    if n < 0:
        raise DomainError(f"partial index must be >= 0, got {n}")
    big_delta = contention(params).big_delta
    m_hat = 1.0 + big_delta * p * (1.0 - p) ** (delta - 1.0)
    if p == 0.0 or big_delta == 0.0:
        return TaylorMeanDelay(n=n, m_hat_n=1.0, m_hat=1.0)
    remainder = _taylor_remainder(big_delta, p, delta, n)
    following = _taylor_remainder(big_delta, p, delta, n + 1)
    if not 0.0 <= following <= remainder * (1.0 + 1e-12):
        raise InstabilityError(f"Taylor remainders {remainder!r} -> {following!r} at n={n} are not monotone")
    return TaylorMeanDelay(n=n, m_hat_n=m_hat - remainder, m_hat=m_hat, remainder=remainder)
