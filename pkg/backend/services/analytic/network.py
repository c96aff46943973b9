"""
Network Parameters
Link-in-a-Poisson-field parameters and the derived contention constants
"""
from typing import Any, Mapping
import logging
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from services.analytic.specfun import log_gamma
from services.errors import DomainError

logger = logging.getLogger(__name__)

DELTA_MIN = 1e-4
DELTA_MAX = 1.0 - 1e-4


def gamma_product(delta: float) -> float:
    """
    Γ(1+δ)Γ(1-δ) via log-gamma (equals πδ/sin(πδ))

    Raises:
        DomainError: If delta is not in (0, 1)
    """
    if not 0.0 < delta < 1.0:
        raise DomainError(f"Γ(1+δ)Γ(1-δ) requires 0 < δ < 1, got {delta}")
    return math.exp(log_gamma(1.0 + delta) + log_gamma(1.0 - delta))


class NetworkParams(BaseModel):
    """
    Reference link at distance r in a Poisson field of interferers

    lam is the interferer intensity, theta the linear SIR threshold,
    delta = 2/alpha and p the ALOHA transmit probability.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias="lambda", ge=0.0)
    r: float = Field(gt=0.0)
    theta: float = Field(gt=0.0)
    delta: float
    p: float = Field(ge=0.0, le=1.0)

    @field_validator("delta")
    @classmethod
    def _check_delta(cls, value: float) -> float:
        if not DELTA_MIN <= value <= DELTA_MAX:
            raise ValueError(f"delta must lie in [{DELTA_MIN}, {DELTA_MAX}], got {value}")
        return value

    @property
    def alpha(self) -> float:
        return 2.0 / self.delta

    @classmethod
    def from_alpha(cls, lam: float, r: float, theta: float, alpha: float, p: float) -> "NetworkParams":
        if not alpha > 2.0:
            raise DomainError(f"path-loss exponent must exceed 2, got {alpha}")
        return cls(lam=lam, r=r, theta=theta, delta=2.0 / alpha, p=p)

    @classmethod
    def from_contention(cls, big_delta: float, delta: float, p: float,
                        r: float = 1.0, theta: float = 1.0) -> "NetworkParams":
        """Build parameters whose contention constant equals big_delta"""
        gamma_sc = math.pi * theta ** delta * gamma_product(delta)
        return cls(lam=big_delta / (r * r * gamma_sc), r=r, theta=theta, delta=delta, p=p)

    def with_updates(self, **changes: Any) -> "NetworkParams":
        """Validated copy with some fields replaced"""
        data = self.model_dump()
        data.update(changes)
        return NetworkParams(**data)

    def contention(self) -> "Contention":
        return contention(self)


class Contention(BaseModel):
    """Spatial contention constants Δ, Δ̂ = Δ/θ^δ, Δ' = Δ/r² and γ"""
    model_config = ConfigDict(frozen=True)

    big_delta: float
    delta_hat: float
    delta_prime: float
    gamma_sc: float


def contention(params: NetworkParams) -> Contention:
    """
    Contention constants of a parameter set

    Args:
        params: Network parameters

    Returns:
        Contention: Δ = λπr²θ^δΓ(1+δ)Γ(1-δ) and its normalized variants

    Raises:
        DomainError: If delta reaches 0 or 1
    """
    gamma_sc = math.pi * params.theta ** params.delta * gamma_product(params.delta)
    delta_prime = params.lam * gamma_sc
    big_delta = delta_prime * params.r ** 2
    result = Contention(
        big_delta=big_delta,
        delta_hat=big_delta / params.theta ** params.delta,
        delta_prime=delta_prime,
        gamma_sc=gamma_sc,
    )
    if params.lam > 0 and min(result.big_delta, result.delta_hat, result.delta_prime) <= 0:
        raise DomainError(f"contention constants must be positive for λ > 0: {result}")
    return result


def load_params(values: Mapping[str, Any]) -> NetworkParams:
    """
    Build NetworkParams from flat key-value settings

    Keys: lambda, r, theta, alpha or delta, p. When both alpha and delta are
    given they must agree.

    Raises:
        ValueError: On missing or inconsistent keys
    """
    missing = [key for key in ("lambda", "r", "theta", "p") if values.get(key) is None]
    if missing:
        raise ValueError(f"missing network parameters: {', '.join(missing)}")

    delta = values.get("delta")
    alpha = values.get("alpha")
    if delta is None and alpha is None:
        raise ValueError("one of 'alpha' or 'delta' is required")
    if delta is not None and alpha is not None and not math.isclose(float(delta), 2.0 / float(alpha), rel_tol=1e-12):
        raise ValueError(f"alpha={alpha} and delta={delta} disagree (delta must equal 2/alpha)")
    if delta is None:
        alpha = float(alpha)
        if not alpha > 2.0:
            raise DomainError(f"path-loss exponent must exceed 2, got {alpha}")
        delta = 2.0 / alpha

    params = NetworkParams(
        lam=float(values["lambda"]),
        r=float(values["r"]),
        theta=float(values["theta"]),
        delta=float(delta),
        p=float(values["p"]),
    )
    logger.debug(f"[NETWORK] Loaded parameters {params.model_dump()}")
    return params
