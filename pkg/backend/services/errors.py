"""
Error Types
Exceptions raised by the analytic and simulation services
"""
from typing import Optional, Tuple


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined"""


class ConvergenceError(ArithmeticError):
    """A series or iteration did not reach its tolerance within the term cap"""

    def __init__(self, message: str, terms: int = 0, last_term: float = float('nan')):
        super().__init__(message)
        self.terms = terms
        self.last_term = last_term


class InstabilityError(ArithmeticError):
    """Cancellation in an alternating sum exceeds what the result can absorb"""

    def __init__(self, message: str, condition: float = float('inf')):
        super().__init__(message)
        self.condition = condition


class NoSolutionError(ArithmeticError):
    """Root bracketing found no sign change"""

    def __init__(self, message: str, bracket: Optional[Tuple[float, float]] = None,
                 residuals: Optional[Tuple[float, float]] = None):
        super().__init__(message)
        self.bracket = bracket
        self.residuals = residuals


class SimulationConfigError(ValueError):
    """Inconsistent estimator / model combination in a simulation config"""
