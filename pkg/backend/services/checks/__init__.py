"""
Checks Package
Analytic-versus-simulation comparisons and published anchors
"""

from .base_check import BaseCheck
from .anchor_checks import AnchorCheck, check_anchors
from .simulation_checks import (
    AtLeastOnceCheck,
    BoundedCheck,
    CondAfterFailureCheck,
    CorrelationCheck,
    IndependentGapCheck,
    IndependentMeanDelayCheck,
    JointCdfCheck,
    JointSuccessCheck,
    LocalDelayCheck,
    RandomDistanceCheck,
    check_at_least_once,
    check_bounded,
    check_cond_after_failure,
    check_correlation,
    check_independent_gap,
    check_independent_mean_delay,
    check_joint_cdf,
    check_joint_success,
    check_local_delay,
    check_random_distance,
)

__all__ = [
    'BaseCheck',
    'CHECKS',
    'get_available_checks',
    'create_check_instance',
    'execute_check',
]

# Check registry for easy access
CHECKS = {
    'joint_success': {
        'class': JointSuccessCheck,
        'function': check_joint_success,
        'description': 'Joint success p_s^(n), n = 1..4',
        'category': 'simulation'
    },
    'at_least_once': {
        'class': AtLeastOnceCheck,
        'function': check_at_least_once,
        'description': 'At least one success in n slots',
        'category': 'simulation'
    },
    'correlation': {
        'class': CorrelationCheck,
        'function': check_correlation,
        'description': 'Correlation coefficient and success after successes',
        'category': 'simulation'
    },
    'cond_after_failure': {
        'class': CondAfterFailureCheck,
        'function': check_cond_after_failure,
        'description': 'Success after a failure',
        'category': 'simulation'
    },
    'independent_gap': {
        'class': IndependentGapCheck,
        'function': check_independent_gap,
        'description': 'Static versus redrawn interferers, gap exp(Δ(1-δ)p²)',
        'category': 'simulation'
    },
    'joint_cdf': {
        'class': JointCdfCheck,
        'function': check_joint_cdf,
        'description': 'Joint SIR distribution at three (θ̄, ν) points',
        'category': 'simulation'
    },
    'bounded': {
        'class': BoundedCheck,
        'function': check_bounded,
        'description': 'Joint success with bounded path loss',
        'category': 'simulation'
    },
    'local_delay': {
        'class': LocalDelayCheck,
        'function': check_local_delay,
        'description': 'Local delay survival, fixed distance',
        'category': 'simulation'
    },
    'random_distance': {
        'class': RandomDistanceCheck,
        'function': check_random_distance,
        'description': 'Joint success, Rayleigh link distance',
        'category': 'simulation'
    },
    'independent_mean_delay': {
        'class': IndependentMeanDelayCheck,
        'function': check_independent_mean_delay,
        'description': 'Mean local delay, Rayleigh distance, independent interference',
        'category': 'simulation'
    },
    'anchors': {
        'class': AnchorCheck,
        'function': check_anchors,
        'description': 'Published quantitative anchors (no simulation)',
        'category': 'analytic'
    },
}


def get_available_checks():
    """
    Get list of all available checks

    Returns:
        dict: Check descriptions, class names and categories
    """
    return {
        check_id: {
            'description': check_info['description'],
            'class_name': check_info['class'].__name__,
            'category': check_info.get('category', 'simulation')
        }
        for check_id, check_info in CHECKS.items()
    }


def create_check_instance(check_id: str):
    """
    Create an instance of a specific check

    Raises:
        ValueError: If check_id is not found
    """
    if check_id not in CHECKS:
        raise ValueError(f"Check '{check_id}' not found. Available checks: {list(CHECKS.keys())}")

    return CHECKS[check_id]['class']()


def execute_check(check_id: str, **kwargs):
    """
    Execute a check by ID with given parameters

    Args:
        check_id: ID of the check to execute
        **kwargs: Check parameters

    Returns:
        dict: Check results

    Raises:
        ValueError: If check_id is not found
    """
    if check_id not in CHECKS:
        raise ValueError(f"Check '{check_id}' not found. Available checks: {list(CHECKS.keys())}")

    return CHECKS[check_id]['function'](**kwargs)
