"""
Network Parameter Tests
"""
import math

import pytest
from pydantic import ValidationError

from services.analytic.network import NetworkParams, contention, gamma_product, load_params
from services.errors import DomainError


def test_gamma_product_is_reflection_formula():
    for delta in (0.1, 0.5, 2.0 / 3.0, 0.9):
        expected = math.pi * delta / math.sin(math.pi * delta)
        assert gamma_product(delta) == pytest.approx(expected, rel=1e-13)


def test_gamma_product_domain():
    with pytest.raises(DomainError):
        gamma_product(1.0)


def test_contention_constants():
    params = NetworkParams(lam=0.1, r=2.0, theta=4.0, delta=0.5, p=0.3)
    result = contention(params)
    expected = 0.1 * math.pi * 4.0 * 2.0 * (math.pi / 2.0)
    assert result.big_delta == pytest.approx(expected, rel=1e-13)
    assert result.delta_hat == pytest.approx(expected / 2.0, rel=1e-13)
    assert result.delta_prime == pytest.approx(expected / 4.0, rel=1e-13)
    assert params.contention() == result


def test_from_contention_hits_target():
    params = NetworkParams.from_contention(0.5, 0.5, 0.2)
    assert contention(params).big_delta == pytest.approx(0.5, rel=1e-13)
    assert params.r == 1.0 and params.theta == 1.0


def test_from_alpha():
    params = NetworkParams.from_alpha(lam=0.2, r=1.0, theta=1.0, alpha=4.0, p=0.5)
    assert params.delta == 0.5
    assert params.alpha == 4.0
    with pytest.raises(DomainError):
        NetworkParams.from_alpha(lam=0.2, r=1.0, theta=1.0, alpha=2.0, p=0.5)


def test_lambda_alias_and_zero_intensity():
    params = NetworkParams(**{"lambda": 0.0, "r": 1.0, "theta": 1.0, "delta": 0.5, "p": 0.5})
    assert params.lam == 0.0
    assert contention(params).big_delta == 0.0


@pytest.mark.parametrize("field, value", [
    ("p", 1.2),
    ("p", -0.1),
    ("r", 0.0),
    ("theta", -1.0),
    ("delta", 0.0),
    ("delta", 1.0),
    ("lam", -0.5),
])
def test_invalid_parameters_rejected(field, value):
    values = dict(lam=0.1, r=1.0, theta=1.0, delta=0.5, p=0.5)
    values[field] = value
    with pytest.raises(ValidationError):
        NetworkParams(**values)


def test_params_are_frozen():
    params = NetworkParams(lam=0.1, r=1.0, theta=1.0, delta=0.5, p=0.5)
    with pytest.raises(ValidationError):
        params.p = 0.2
    assert params.with_updates(p=0.2).p == 0.2
    assert params.p == 0.5


def test_load_params_from_alpha_or_delta():
    from_alpha = load_params({"lambda": 0.1, "r": 1, "theta": 1, "alpha": 4, "p": 0.5})
    from_delta = load_params({"lambda": 0.1, "r": 1, "theta": 1, "delta": 0.5, "p": 0.5})
    assert from_alpha == from_delta


def test_load_params_errors():
    with pytest.raises(ValueError, match="missing"):
        load_params({"lambda": 0.1, "r": 1, "delta": 0.5})
    with pytest.raises(ValueError, match="alpha"):
        load_params({"lambda": 0.1, "r": 1, "theta": 1, "p": 0.5})
    with pytest.raises(ValueError, match="disagree"):
        load_params({"lambda": 0.1, "r": 1, "theta": 1, "p": 0.5, "alpha": 4, "delta": 0.4})
