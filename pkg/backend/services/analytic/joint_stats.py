"""
Joint Success Statistics
Multi-slot success, outage and correlation of a single link in a static
Poisson field with ALOHA and Rayleigh fading
"""
from typing import Callable, List, Literal
import logging
import math

import mpmath
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate

from services.analytic.diversity import N_CAP, div_poly, div_poly_increment, div_poly_mp
from services.analytic.network import NetworkParams, contention
from services.analytic.specfun import gauss_2f1, log_gamma
from services.errors import DomainError, InstabilityError

logger = logging.getLogger(__name__)

# Removable-singularity branch threshold
LIMIT_EPS = 1e-12
# Alternating-sum condition number above which sums are redone in mpmath
CONDITION_LIMIT = 1e12
BOUND_SLACK = 1e-9

GainMode = Literal["vary_Delta", "vary_p", "independent"]


class JointSuccessResult(BaseModel):
    """Joint success p_s^(n), at-least-once ψ^(n) and joint outage p_o^(n)"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    ps_n: float
    psone_n: float
    po_n: float


class BoundedProbability(BaseModel):
    """A probability together with the analytic upper bound it must respect"""
    model_config = ConfigDict(frozen=True)

    value: float
    bound: float


def _check_n(n: int, cap: int = N_CAP):
    if n < 1:
        raise DomainError(f"number of transmissions must be >= 1, got {n}")
    if n > cap:
        raise DomainError(f"n={n} exceeds the cap of {cap}")


def joint_success(params: NetworkParams, n: int) -> float:
    """
    Probability of n consecutive successes, exp(-Δ D_n(p, δ))

    Args:
        params: Network parameters
        n: Number of transmissions

    Returns:
        float: p_s^(n)
    """
    _check_n(n)
    big_delta = contention(params).big_delta
    return math.exp(-big_delta * div_poly(n, params.p, params.delta))


def cond_success_after_successes(params: NetworkParams, n: int) -> float:
    """P(S_{n+1} | S_1, ..., S_n) = exp(Δ (D_n - D_{n+1}))"""
    _check_n(n)
    big_delta = contention(params).big_delta
    return math.exp(-big_delta * div_poly_increment(n, params.p, params.delta))


def guarded_alternating_sum(terms: List[float], mp_terms: Callable[[int], List["mpmath.mpf"]],
                             label: str) -> float:
    """
    Sum an alternating series; redo it in mpmath if cancellation is severe

    Args:
        terms: Float terms of the sum
        mp_terms: Builds the same terms in mpmath at a given decimal precision
        label: Name used in log messages

    Returns:
        float: Sum of the terms
    """
    result = math.fsum(terms)
    magnitude = math.fsum(abs(t) for t in terms)
    if magnitude == 0.0:
        return 0.0
    condition = magnitude / abs(result) if result != 0.0 else math.inf
    if condition <= CONDITION_LIMIT:
        return result

    digits = 30 + (int(math.log10(condition)) if math.isfinite(condition) else 300)
    logger.warning(f"[JOINT] {label}: condition {condition:.3g} exceeds {CONDITION_LIMIT:.0e}, "
                   f"re-evaluating with {digits} digits")
    with mpmath.workdps(digits):
        exact = mpmath.fsum(mp_terms(digits))
        if exact == 0:
            raise InstabilityError(f"{label}: alternating sum cancels to zero at {digits} digits",
                                   condition=condition)
        return float(exact)


def joint_outage(params: NetworkParams, n: int) -> float:
    """
    Probability that all n transmissions fail, p_o^(n) = 1 - ψ^(n)

    Evaluated as Σ_k (-1)^{k+1} C(n,k) (1 - p_s^(k)) with expm1 so that small
    outages keep their relative accuracy.
    """
    _check_n(n)
    big_delta = contention(params).big_delta
    p, delta = params.p, params.delta
    terms = [(-1) ** (k + 1) * math.comb(n, k) * -math.expm1(-big_delta * div_poly(k, p, delta))
             for k in range(1, n + 1)]

    def _mp_terms(dps: int):
        bd = mpmath.mpf(big_delta)
        return [(-1) ** (k + 1) * mpmath.binomial(n, k) * -mpmath.expm1(-bd * div_poly_mp(k, p, delta, dps))
                for k in range(1, n + 1)]

    return guarded_alternating_sum(terms, _mp_terms, f"p_o^({n})")


def at_least_one_success(params: NetworkParams, n: int) -> float:
    """
    Probability of at least one success in n attempts (inclusion-exclusion)

    ψ^(n) = Σ_k (-1)^{k+1} C(n,k) p_s^(k)

    Raises:
        InstabilityError: If the sum leaves [max_k p_s^(k), 1] by more than 1e-9
    """
    _check_n(n)
    big_delta = contention(params).big_delta
    p, delta = params.p, params.delta
    singles = [math.exp(-big_delta * div_poly(k, p, delta)) for k in range(1, n + 1)]
    terms = [(-1) ** (k + 1) * math.comb(n, k) * singles[k - 1] for k in range(1, n + 1)]

    def _mp_terms(dps: int):
        bd = mpmath.mpf(big_delta)
        return [(-1) ** (k + 1) * mpmath.binomial(n, k) * mpmath.exp(-bd * div_poly_mp(k, p, delta, dps))
                for k in range(1, n + 1)]

    value = guarded_alternating_sum(terms, _mp_terms, f"psi^({n})")
    lower = max(singles)
    if value < lower:
        if value < lower - BOUND_SLACK:
            raise InstabilityError(f"psi^({n})={value!r} below its lower bound {lower!r}")
        value = lower
    if value > 1.0:
        if value > 1.0 + BOUND_SLACK:
            raise InstabilityError(f"psi^({n})={value!r} exceeds 1")
        value = 1.0
    return value


def joint_success_result(params: NetworkParams, n: int) -> JointSuccessResult:
    """All three n-slot probabilities in one record"""
    po_n = joint_outage(params, n)
    return JointSuccessResult(
        n=n,
        ps_n=joint_success(params, n),
        psone_n=1.0 - po_n,
        po_n=po_n,
    )


def correlation_coefficient(params: NetworkParams) -> float:
    """
    Pearson correlation of the success (equivalently failure) indicators
    in two slots, ζ = (e^{Δp²(1-δ)} - 1)/(e^{Δp} - 1)
    """
    big_delta = contention(params).big_delta
    p, delta = params.p, params.delta
    denominator = math.expm1(big_delta * p)
    if abs(denominator) < LIMIT_EPS:
        return p * (1.0 - delta)
    return math.expm1(big_delta * p * p * (1.0 - delta)) / denominator


def cond_success_after_failure(params: NetworkParams) -> BoundedProbability:
    """
    P(S_2 | not S_1) and its upper bound 1 - p(1-δ)

    Raises:
        DomainError: If p = 0 (conditioning event has probability zero)
        InstabilityError: If the value exceeds the bound
    """
    if params.p <= 0.0:
        raise DomainError("conditional success after failure requires p > 0")
    big_delta = contention(params).big_delta
    p, delta = params.p, params.delta
    bound = 1.0 - p * (1.0 - delta)
    denominator = math.expm1(big_delta * p)
    if abs(denominator) < LIMIT_EPS:
        value = bound
    else:
        value = -math.expm1(-big_delta * p * bound) / denominator
    if value > bound + LIMIT_EPS:
        raise InstabilityError(f"P(S2|~S1)={value!r} exceeds its bound {bound!r}")
    return BoundedProbability(value=value, bound=bound)


def cond_outage_after_failures(params: NetworkParams, n: int) -> float:
    """Outage in slot n+1 given n failures, p_o^(n+1)/p_o^(n)"""
    _check_n(n, N_CAP - 1)
    previous = joint_outage(params, n)
    if previous <= 0.0:
        raise DomainError("conditioning on failures requires a positive outage probability")
    return joint_outage(params, n + 1) / previous


def cond_outage_given_outage(params: NetworkParams) -> float:
    """P(~S_2 | ~S_1) = (1 - 2e^{-Δp} + e^{-Δ D_2})/(1 - e^{-Δp})"""
    return cond_outage_after_failures(params, 1)


def asymptotic_cond_outage(p: float, delta: float, n: int) -> float:
    """Limit of p_o^(n+1)/p_o^(n) as Δ -> 0: p(1 - δ/n)"""
    _check_n(n, cap=10 ** 9)
    return p * (1.0 - delta / n)


def failure_correlation_ratio(params: NetworkParams) -> float:
    """P(~S_1 and ~S_2)/P(~S_1)^2; exceeds one for positively correlated failures"""
    single = joint_outage(params, 1)
    if single <= 0.0:
        raise DomainError("failure correlation requires a positive outage probability")
    return joint_outage(params, 2) / single ** 2


def taylor_psone(params: NetworkParams, n: int) -> float:
    """
    First-order expansion of ψ^(n) in Δ

    1 - Δ p^n Γ(n-δ)/(Γ(n)Γ(1-δ))
    """
    _check_n(n)
    big_delta = contention(params).big_delta
    delta = params.delta
    coeff = math.exp(log_gamma(n - delta) - log_gamma(n) - log_gamma(1.0 - delta))
    return 1.0 - big_delta * params.p ** n * coeff


def _richardson_slope(xs: List[float], ys: List[float]) -> float:
    """Secant slopes of log y against log x, extrapolated to x -> 0"""
    slopes = [(math.log(ys[j]) - math.log(ys[j + 1])) / (math.log(xs[j]) - math.log(xs[j + 1]))
              for j in range(len(xs) - 1)]
    # halving the rung leaves an error linear in the rung
    return 2.0 * slopes[-1] - slopes[-2]


def diversity_gain_estimate(params: NetworkParams, n: int, mode: GainMode = "vary_Delta",
                            rungs: int = 8) -> float:
    """
    Numerical diversity gain, the high-SIR slope of the joint outage

    vary_Delta: δ d log p_o^(n)/d log Δ as Δ -> 0 (tends to δ)
    vary_p: δ d log p_o^(n)/d log p as p -> 0 (tends to nδ)
    independent: the same Δ slope with interference redrawn every slot,
    p_o = (1 - e^{-Δp})^n (tends to nδ)

    Args:
        params: Starting parameters; λ (or p) is scaled down along the ladder
        n: Number of transmissions
        mode: Which slope to estimate
        rungs: Points on the geometric ladder

    Returns:
        float: Extrapolated slope
    """
    _check_n(n)
    if params.lam <= 0.0 or params.p <= 0.0:
        raise DomainError("diversity gain requires λ > 0 and p > 0")
    if mode not in ("vary_Delta", "vary_p", "independent"):
        raise ValueError(f"Unknown diversity gain mode '{mode}'")

    def _outage(candidate: NetworkParams) -> float:
        if mode == "independent":
            big_delta = contention(candidate).big_delta
            return (-math.expm1(-big_delta * candidate.p)) ** n
        return joint_outage(candidate, n)

    start = params
    for _ in range(200):
        if _outage(start) < 0.1:
            break
        if mode == "vary_p":
            start = start.with_updates(p=start.p / 2.0)
        else:
            start = start.with_updates(lam=start.lam / 2.0)

    xs, ys = [], []
    for j in range(rungs):
        if mode == "vary_p":
            rung = start.with_updates(p=start.p * 2.0 ** -j)
            xs.append(rung.p)
        else:
            rung = start.with_updates(lam=start.lam * 2.0 ** -j)
            xs.append(contention(rung).big_delta)
        ys.append(_outage(rung))

    gain = params.delta * _richardson_slope(xs, ys)
    logger.debug(f"[JOINT] Diversity gain n={n} mode={mode}: {gain:.6f}")
    return gain


def independent_diversity_reference(params: NetworkParams, n: int) -> float:
    """Diversity gain with independent interference across slots (tends to nδ)"""
    return diversity_gain_estimate(params, n, mode="independent")


def bounded_theta_prime(params: NetworkParams) -> float:
    """θ' = θ max{1, r^α} for the path loss max{1, v^α}"""
    return params.theta * max(1.0, params.r ** params.alpha)


def _bounded_b(k: int, theta_prime: float, delta: float) -> float:
    near = (theta_prime / (1.0 + theta_prime)) ** k
    whole = theta_prime ** delta * delta * math.exp(log_gamma(k - delta) + log_gamma(delta) - log_gamma(k))
    inner = gauss_2f1(k, delta, 1.0 + delta, -1.0 / theta_prime)
    return near + whole - inner


def joint_success_bounded(params: NetworkParams, n: int) -> float:
    """
    Joint success of n transmissions with bounded path loss max{1, v^α}

    exp(-λπ Σ_k (-1)^{k+1} C(n,k) p^k B_k), where
    B_k = (θ'/(1+θ'))^k + θ'^δ δ Γ(k-δ)Γ(δ)/Γ(k) - 2F1(k, δ; 1+δ; -1/θ').

    Raises:
        InstabilityError: If r >= 1 and the result falls below the unbounded value
    """
    _check_n(n)
    p, delta = params.p, params.delta
    if p == 0.0 or params.lam == 0.0:
        return 1.0
    theta_prime = bounded_theta_prime(params)
    terms = [(-1) ** (k + 1) * math.comb(n, k) * p ** k * _bounded_b(k, theta_prime, delta)
             for k in range(1, n + 1)]
    value = math.exp(-params.lam * math.pi * math.fsum(terms))

    if params.r >= 1.0:
        unbounded = joint_success(params, n)
        if value < unbounded * (1.0 - 1e-10):
            raise InstabilityError(f"bounded joint success {value!r} below unbounded {unbounded!r} for r >= 1")
    return value


def pgfl_integral(params: NetworkParams, n: int, bounded: bool = False) -> float:
    """
    λ F_n by adaptive quadrature of the probability generating functional

    λ π ∫_0^∞ [1 - (1 - p g(u))^n] du with g the per-slot interference factor
    at squared distance u. Matches Δ D_n(p, δ) in the unbounded case.
    """
    _check_n(n)
    p, delta = params.p, params.delta
    if bounded:
        theta_prime = bounded_theta_prime(params)

        def gain(u: float) -> float:
            return theta_prime / (max(1.0, u ** (1.0 / delta)) + theta_prime)
    else:
        scale = params.theta * params.r ** (2.0 / delta)

        def gain(u: float) -> float:
            return 1.0 / (1.0 + u ** (1.0 / delta) / scale)

    def integrand(u: float) -> float:
        hit = p * gain(u)
        if hit > 0.5:
            return 1.0 - (1.0 - hit) ** n
        return -math.expm1(n * math.log1p(-hit))

    head, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-11, limit=200)
    tail, _ = integrate.quad(integrand, 1.0, math.inf, epsabs=0.0, epsrel=1e-11, limit=400)
    return params.lam * math.pi * (head + tail)
