"""
Comparison Run Database
Run history of analytic-versus-simulation checks
"""

from .config import Base, SessionLocal, configure, init_db
from .comparison_runs import ComparisonResult, ComparisonRun
from .queries import delete_comparison_run, get_all_comparison_runs, get_comparison_run_by_id

# Initialize database on import
init_db()

__all__ = [
    # Core
    'Base', 'SessionLocal', 'configure', 'init_db',
    # Models
    'ComparisonRun', 'ComparisonResult',
    # Queries
    'get_all_comparison_runs', 'get_comparison_run_by_id', 'delete_comparison_run',
]
