"""
Diversity Polynomial
D_n(p, δ) in its binomial, (1-δ)-expansion and δ-polynomial forms,
with the analytic limits and the first-order expansion near δ = 1
"""
from typing import Literal, Optional
import logging
import math

import mpmath
from pydantic import BaseModel, ConfigDict, Field

from services.analytic.specfun import log_gamma, real_binomial, stirling_table
from services.errors import DomainError

logger = logging.getLogger(__name__)

# Alternating sums downstream lose roughly one digit per slot beyond this
N_CAP = 30
HIGH_PRECISION_DPS = 60

DiversityForm = Literal["binomial", "one_minus_delta_expansion", "delta_polynomial"]


def _check_args(n: int, p: float, delta: float, high_precision: bool = False):
    if n < 1:
        raise DomainError(f"number of transmissions must be >= 1, got {n}")
    if n > N_CAP and not high_precision:
        raise DomainError(f"n={n} exceeds the cap of {N_CAP}; pass high_precision=True")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"transmit probability must lie in [0, 1], got {p}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta}")


def div_poly_mp(n: int, p: float, delta: float, dps: int = HIGH_PRECISION_DPS) -> "mpmath.mpf":
    """Binomial form of D_n evaluated in mpmath at the given precision"""
    with mpmath.workdps(dps):
        p_mp = mpmath.mpf(p)
        dm1 = mpmath.mpf(delta) - 1
        total = mpmath.mpf(0)
        coeff = mpmath.mpf(1)  # C(δ-1, k-1)
        for k in range(1, n + 1):
            if k > 1:
                coeff *= (dm1 - (k - 2)) / (k - 1)
            total += mpmath.binomial(n, k) * coeff * p_mp ** k
        return +total


def div_poly(n: int, p: float, delta: float, high_precision: bool = False) -> float:
    """
    Diversity polynomial D_n(p, δ) = Σ_k C(n,k) C(δ-1,k-1) p^k

    Args:
        n: Number of transmissions (>= 1)
        p: Transmit probability in [0, 1]
        delta: Exponent 2/α in [0, 1]; the endpoints are the finite limits
        high_precision: Lift the n cap and evaluate with mpmath

    Returns:
        float: D_n(p, δ)
    """
    _check_args(n, p, delta, high_precision)
    if high_precision and n > N_CAP:
        return float(div_poly_mp(n, p, delta))
    terms = [math.comb(n, k) * real_binomial(delta - 1.0, k - 1) * p ** k for k in range(1, n + 1)]
    return math.fsum(terms)


def _stirling_form(n: int, p: float, delta: float, expand_in_one_minus_delta: bool, use_mp: bool) -> float:
    table = stirling_table(max(n, 1))
    if use_mp:
        ctx_num, fsum, factorial = mpmath.mpf, mpmath.fsum, mpmath.factorial
    else:
        ctx_num, fsum, factorial = float, math.fsum, math.factorial
    q = ctx_num(1) - ctx_num(delta)
    d = ctx_num(delta)
    terms = []
    for k in range(1, n + 1):
        if expand_in_one_minus_delta:
            row = table.row(k - 1)
            inner = fsum((-1) ** j * row[j] * q ** j for j in range(len(row)))
        else:
            row = table.row(k)
            inner = fsum(row[j] * d ** (j - 1) for j in range(1, k + 1))
        terms.append(math.comb(n, k) * ctx_num(p) ** k * inner / factorial(k - 1))
    return float(fsum(terms))


def div_poly_one_minus_delta(n: int, p: float, delta: float, high_precision: bool = False) -> float:
    """
    D_n(p, δ) expanded in powers of (1-δ) with exact Stirling numbers

    Σ_k C(n,k) p^k/Γ(k) Σ_j (-1)^j s(k-1,j) (1-δ)^j
    """
    _check_args(n, p, delta, high_precision)
    if high_precision and n > N_CAP:
        with mpmath.workdps(HIGH_PRECISION_DPS):
            return _stirling_form(n, p, delta, True, use_mp=True)
    return _stirling_form(n, p, delta, True, use_mp=False)


def div_poly_delta_form(n: int, p: float, delta: float, high_precision: bool = False) -> float:
    """
    D_n(p, δ) as a polynomial in δ

    Σ_k C(n,k) p^k/Γ(k) Σ_{j=1}^k s(k,j) δ^{j-1}; the j = 1 terms aggregate
    to 1-(1-p)^n.
    """
    _check_args(n, p, delta, high_precision)
    if high_precision and n > N_CAP:
        with mpmath.workdps(HIGH_PRECISION_DPS):
            return _stirling_form(n, p, delta, False, use_mp=True)
    return _stirling_form(n, p, delta, False, use_mp=False)


def div_poly_delta_up1_approx(n: int, p: float, delta: float) -> float:
    """
    First-order expansion of D_n near δ = 1

    np + (1-δ) Σ_{k>=2} C(n,k) (-1)^{k+1} p^k/(k-1). Exact for n <= 2;
    useful for α <= 3 (1-δ <= 1/3).
    """
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"expansion near δ=1 requires 0 < δ <= 1, got {delta}")
    _check_args(n, p, delta)
    correction = math.fsum(math.comb(n, k) * (-1) ** (k + 1) * p ** k / (k - 1) for k in range(2, n + 1))
    return n * p + (1.0 - delta) * correction


def div_poly_delta_zero(n: int, p: float) -> float:
    """Limit δ -> 0 (maximum correlation): 1-(1-p)^n"""
    return -math.expm1(n * math.log1p(-p)) if p < 1.0 else 1.0


def div_poly_delta_one(n: int, p: float) -> float:
    """Limit δ -> 1 (no correlation): np"""
    return n * p


def simo_diversity(n: int, delta: float) -> float:
    """
    D_n(1, δ) = Γ(n+δ)/(Γ(n)Γ(1+δ)), the all-transmit value

    Args:
        n: Number of transmissions (>= 1)
        delta: Exponent in [0, 1]
    """
    if n < 1:
        raise DomainError(f"number of transmissions must be >= 1, got {n}")
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta}")
    return math.exp(log_gamma(n + delta) - log_gamma(n) - log_gamma(1.0 + delta))


def f_poly(n: int, x: float) -> float:
    """
    f_n(x) = Π_{k=1}^n (x/k - 1)

    f_{k-1}(δ) is the coefficient C(δ-1, k-1) = Γ(δ)/(Γ(k)Γ(δ-k+1)).
    """
    result = 1.0
    for k in range(1, n + 1):
        result *= (x / k - 1.0)
    return result


class DiversityEval(BaseModel):
    """Diversity-polynomial evaluation request and result"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    p: float = Field(ge=0.0, le=1.0)
    delta: float = Field(ge=0.0, le=1.0)
    form: DiversityForm = "binomial"
    value: Optional[float] = None


_FORMS = {
    "binomial": div_poly,
    "one_minus_delta_expansion": div_poly_one_minus_delta,
    "delta_polynomial": div_poly_delta_form,
}


def evaluate(n: int, p: float, delta: float, form: DiversityForm = "binomial",
             high_precision: bool = False) -> DiversityEval:
    """
    Evaluate D_n(p, δ) with the chosen algebraic form

    Returns:
        DiversityEval: Request echoed with the value filled in
    """
    if form not in _FORMS:
        raise ValueError(f"Unknown diversity form '{form}'. Available forms: {list(_FORMS.keys())}")
    value = _FORMS[form](n, p, delta, high_precision=high_precision)
    logger.debug(f"[DIVERSITY] D_{n}({p}, {delta}) [{form}] = {value!r}")
    return DiversityEval(n=n, p=p, delta=delta, form=form, value=value)


def div_poly_increment(n: int, p: float, delta: float) -> float:
    """
    D_{n+1}(p, δ) - D_n(p, δ) = Σ_{k=1}^{n+1} C(n,k-1) C(δ-1,k-1) p^k

    Evaluated directly rather than as a difference of two polynomials.
    """
    _check_args(n, p, delta, high_precision=True)
    return math.fsum(math.comb(n, k - 1) * real_binomial(delta - 1.0, k - 1) * p ** k for k in range(1, n + 2))
