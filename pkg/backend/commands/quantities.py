"""
Scalar Quantities
Registry of the analytic quantities the eval and curve subcommands compute
"""
from typing import Any, Callable, Dict
import argparse

from services.analytic import diversity, joint_stats, local_delay, two_threshold
from services.analytic.network import NetworkParams, contention
from services.analytic.two_threshold import TwoThresholdSpec


def _require(options: Any, *names: str):
    missing = [name for name in names if getattr(options, name, None) is None]
    if missing:
        raise ValueError(f"this quantity needs --{', --'.join(name.replace('_', '-') for name in missing)}")


def _p2(params: NetworkParams, options) -> float:
    _require(options, "theta1", "theta2")
    return two_threshold.joint_sir_cdf(params, TwoThresholdSpec(theta1=options.theta1, theta2=options.theta2))


def _psi2(params: NetworkParams, options) -> float:
    _require(options, "theta_bar")
    return two_threshold.psi_two(params, options.theta_bar, options.nu)


def _quadratic(index: int) -> Callable[[NetworkParams, Any], float]:
    def compute(params: NetworkParams, options) -> float:
        _require(options, "theta_bar")
        return two_threshold.quadratic_coeffs(params, options.theta_bar)[index]
    return compute


def _design_nu(params: NetworkParams, options) -> float:
    _require(options, "theta_bar")
    return two_threshold.equalize_at_least_once(params, options.theta_bar, exact=options.exact)


def _post_failure(params: NetworkParams, options) -> float:
    _require(options, "theta1")
    return two_threshold.post_failure_threshold(params, options.theta1)


QUANTITIES: Dict[str, Dict[str, Any]] = {
    'contention': {
        'function': lambda params, options: contention(params).big_delta,
        'description': 'Spatial contention Δ = λπr²θ^δΓ(1+δ)Γ(1-δ)'
    },
    'delta_hat': {
        'function': lambda params, options: contention(params).delta_hat,
        'description': 'Δ̂ = Δ/θ^δ'
    },
    'div_poly': {
        'function': lambda params, options: diversity.evaluate(options.n, params.p, params.delta,
                                                                form=options.form).value,
        'description': 'Diversity polynomial D_n(p, δ)'
    },
    'ps': {
        'function': lambda params, options: joint_stats.joint_success(params, options.n),
        'description': 'Joint success of n transmissions p_s^(n)'
    },
    'psone': {
        'function': lambda params, options: joint_stats.at_least_one_success(params, options.n),
        'description': 'At least one success in n transmissions'
    },
    'outage': {
        'function': lambda params, options: joint_stats.joint_outage(params, options.n),
        'description': 'Joint outage of n transmissions'
    },
    'cond_success': {
        'function': lambda params, options: joint_stats.cond_success_after_successes(params, options.n),
        'description': 'Success after n successes'
    },
    'cond_failure': {
        'function': lambda params, options: joint_stats.cond_success_after_failure(params).value,
        'description': 'Success after a failure'
    },
    'cond_failure_bound': {
        'function': lambda params, options: joint_stats.cond_success_after_failure(params).bound,
        'description': 'Upper bound 1 - p(1-δ) on success after a failure'
    },
    'cond_outage': {
        'function': lambda params, options: joint_stats.cond_outage_after_failures(params, options.n),
        'description': 'Outage after n failures'
    },
    'zeta': {
        'function': lambda params, options: joint_stats.correlation_coefficient(params),
        'description': 'Correlation coefficient of two success events'
    },
    'failure_ratio': {
        'function': lambda params, options: joint_stats.failure_correlation_ratio(params),
        'description': 'P(two failures)/P(failure)²'
    },
    'diversity_gain': {
        'function': lambda params, options: joint_stats.diversity_gain_estimate(params, options.n,
                                                                                mode=options.mode),
        'description': 'Numerical diversity gain (slope of the joint outage)'
    },
    'bounded': {
        'function': lambda params, options: joint_stats.joint_success_bounded(params, options.n),
        'description': 'Joint success with bounded path loss'
    },
    'p2': {
        'function': _p2,
        'description': 'Joint SIR distribution P(SIR_1 <= θ1, SIR_2 <= θ2)'
    },
    'psi2': {
        'function': _psi2,
        'description': 'At-least-once success with thresholds θ̄e^{-ν}, θ̄e^{ν}'
    },
    'curvature_A': {
        'function': _quadratic(0),
        'description': 'Constant A of ψ^(2)(ν) ≈ A + Bν²'
    },
    'curvature_B': {
        'function': _quadratic(1),
        'description': 'Coefficient B of ψ^(2)(ν) ≈ A + Bν²'
    },
    'design_nu': {
        'function': _design_nu,
        'description': 'Asymmetry ν that equalizes the at-least-once success'
    },
    'post_failure_theta2': {
        'function': _post_failure,
        'description': 'Second threshold keeping success after a failure at the first-slot level'
    },
    'mean_delay': {
        'function': lambda params, options: local_delay.mean_delay_fixed(params),
        'description': 'Mean local delay, fixed link distance'
    },
    'delay_tail': {
        'function': lambda params, options: local_delay.delay_tail_fixed(params, options.n),
        'description': 'P(M > n), fixed link distance'
    },
    'taylor_mean_delay': {
        'function': lambda params, options: local_delay.taylor_mean_delay(params, options.n).m_hat_n,
        'description': 'First-order mean-delay estimate M̂_n'
    },
}


def get_available_quantities():
    return {name: info['description'] for name, info in QUANTITIES.items()}


def add_quantity_options(parser: argparse.ArgumentParser):
    """Options some quantities need"""
    parser.add_argument("--n", type=int, default=1, help="Number of transmissions (default: 1)")
    parser.add_argument("--form", default="binomial",
                        choices=["binomial", "one_minus_delta_expansion", "delta_polynomial"],
                        help="Algebraic form of D_n")
    parser.add_argument("--mode", default="vary_Delta", choices=["vary_Delta", "vary_p", "independent"],
                        help="Diversity-gain slope")
    parser.add_argument("--theta-bar", type=float, dest="theta_bar", help="Geometric-mean threshold θ̄")
    parser.add_argument("--nu", type=float, default=0.0, help="Threshold asymmetry ν (default: 0)")
    parser.add_argument("--theta1", type=float, help="First-slot threshold")
    parser.add_argument("--theta2", type=float, help="Second-slot threshold")
    parser.add_argument("--exact", action="store_true", help="Solve the design equation exactly")


def compute(name: str, params: NetworkParams, options) -> float:
    """
    Evaluate a registered quantity

    Raises:
        ValueError: If the quantity is unknown or an option it needs is missing
    """
    if name not in QUANTITIES:
        raise ValueError(f"Quantity '{name}' not found. Available quantities: {list(QUANTITIES.keys())}")
    return float(QUANTITIES[name]['function'](params, options))
