"""
Base check class for analytic-versus-simulation and anchor checks
"""
from datetime import datetime
from typing import Any, Optional
import json
import math

from services.montecarlo.estimators import SimEstimate

# |z| above this fails a Monte Carlo comparison
Z_FAIL = 4.0
Z_FLAG = 3.0


class BaseCheck:
    """
    Base class for all checks
    Collects inputs and per-quantity results and reduces them to PASS/FAIL
    """

    def __init__(self, check_name: str, description: str):
        self.check_name = check_name
        self.description = description
        self.run_date = None
        self.seed = None
        self.inputs = {}
        self.results = {}
        self.overall_result = None
        self.overall_status = None

    def set_run_info(self, seed: Optional[int] = None, run_date: Optional[datetime] = None):
        """
        Set basic run information

        Args:
            seed: Master seed of the simulation (None for analytic-only checks)
            run_date: Date of the run (defaults to now)
        """
        self.seed = seed
        self.run_date = run_date or datetime.now()

    def add_input(self, name: str, value: Any, unit: str = None):
        self.inputs[name] = {
            'value': value,
            'unit': unit
        }

    def add_result(self, name: str, value: Any, status: str, unit: str = None, tolerance: Any = None,
                   details: Any = None):
        """
        Add a result to the check

        Args:
            name: Name of the checked quantity
            value: Observed value
            status: PASS, FAIL or INFO (INFO never affects the overall result)
            unit: Unit of measurement (optional)
            tolerance: Tolerance criteria (optional)
            details: Additional details (optional)
        """
        self.results[name] = {
            'value': value,
            'status': status,
            'unit': unit,
            'tolerance': tolerance,
            'details': details
        }

    def add_comparison(self, name: str, analytic: float, estimate: SimEstimate):
        """
        Add an analytic-versus-Monte-Carlo comparison

        FAIL when |z| > 4; the details also flag |z| <= 3.
        """
        z = estimate.z_score(analytic)
        status = "PASS" if abs(z) <= Z_FAIL else "FAIL"
        self.add_result(
            name=name,
            value=estimate.mean,
            status=status,
            tolerance=f"|z| <= {Z_FAIL:g}",
            details={
                'analytic': analytic,
                'estimate': estimate.mean,
                'std_error': estimate.std_error,
                'ci95': list(estimate.ci95),
                'n_effective': estimate.n_effective,
                'z': z if math.isfinite(z) else str(z),
                'within_3_sigma': abs(z) <= Z_FLAG,
            }
        )

    def add_tolerance(self, name: str, value: float, expected: float, tolerance: float):
        """Add a published-number check |value - expected| <= tolerance"""
        status = "PASS" if abs(value - expected) <= tolerance else "FAIL"
        self.add_result(name=name, value=value, status=status, tolerance=f"{expected} ± {tolerance}")

    def calculate_overall_result(self):
        """
        Calculate overall check result based on individual results
        PASS if every non-INFO result passes, otherwise FAIL
        """
        graded = [result for result in self.results.values() if result['status'] != 'INFO']
        if not graded:
            self.overall_result = "UNKNOWN"
            self.overall_status = "UNKNOWN"
            return

        all_pass = all(result['status'] == 'PASS' for result in graded)
        self.overall_result = "PASS" if all_pass else "FAIL"
        self.overall_status = "PASS" if all_pass else "FAIL"

    def execute(self, **kwargs):
        """
        Run the check
        This method should be overridden by specific check implementations

        Returns:
            dict: Check results
        """
        raise NotImplementedError("execute method must be implemented by specific check classes")

    def to_dict(self):
        return {
            'check_name': self.check_name,
            'description': self.description,
            'run_date': self.run_date.isoformat() if self.run_date else None,
            'seed': self.seed,
            'inputs': self.inputs,
            'results': self.results,
            'overall_result': self.overall_result,
            'overall_status': self.overall_status
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, default=str)

    def get_summary(self):
        """
        Get a summary of the check results

        Returns:
            dict: Summary information
        """
        graded = [result for result in self.results.values() if result['status'] != 'INFO']
        passed_checks = sum(1 for result in graded if result['status'] == 'PASS')

        return {
            'check_name': self.check_name,
            'overall_result': self.overall_result,
            'total_checks': len(graded),
            'passed_checks': passed_checks,
            'failed_checks': len(graded) - passed_checks,
            'seed': self.seed,
            'run_date': self.run_date.isoformat() if self.run_date else None
        }
