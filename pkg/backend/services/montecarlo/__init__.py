"""
Monte Carlo Package
Simulation oracle for the analytic success, correlation and delay results
"""

from .estimators import DelayTail, SimEstimate
from .simulator import (
    SimConfig,
    SimulationResult,
    independent_interference_toggle,
    interference_tail_slope,
    joint_cdf_grid,
    local_delay_samples,
    run,
    simulate,
)

__all__ = [
    'DelayTail',
    'SimConfig',
    'SimEstimate',
    'SimulationResult',
    'independent_interference_toggle',
    'interference_tail_slope',
    'joint_cdf_grid',
    'local_delay_samples',
    'run',
    'simulate',
]
