"""
Database Helper Functions
Saving check reports to the comparison run history
"""

from datetime import datetime
from typing import Any, Dict, Optional
import json
import logging

from database import ComparisonResult, ComparisonRun, SessionLocal

logger = logging.getLogger(__name__)


def _as_float(value: Any) -> Optional[float]:
    try:
        return float(value)
    except (TypeError, ValueError):
        return None


def save_comparison_to_database(report: Dict[str, Any], notes: Optional[str] = None) -> int:
    """
    Save a check report (BaseCheck.to_dict()) to database

    Args:
        report: Check report with inputs and per-quantity results
        notes: Optional notes

    Returns:
        run_id: ID of saved run
    """
    db = SessionLocal()
    try:
        inputs = report.get('inputs', {})
        run_date = report.get('run_date')
        run = ComparisonRun(
            run_date=datetime.fromisoformat(run_date) if run_date else datetime.now(),
            check_name=report['check_name'],
            seed=report.get('seed'),
            n_realizations=inputs.get('n_realizations', {}).get('value'),
            overall_result=report.get('overall_result') or "UNKNOWN",
            parameters=json.dumps({name: item.get('value') for name, item in inputs.items()}, default=str),
            notes=notes
        )
        db.add(run)
        db.flush()  # Get the run ID

        for quantity, result in report.get('results', {}).items():
            details = result.get('details') if isinstance(result.get('details'), dict) else {}
            interval = details.get('ci95') or [None, None]
            db.add(ComparisonResult(
                run_id=run.id,
                quantity=quantity,
                status=result['status'],
                value=_as_float(result.get('value')),
                analytic=_as_float(details.get('analytic')),
                std_error=_as_float(details.get('std_error')),
                ci_lo=_as_float(interval[0]),
                ci_hi=_as_float(interval[1]),
                z_score=_as_float(details.get('z'))
            ))

        db.commit()
        logger.info(f"[DB] Saved {run.check_name} comparison to database (ID: {run.id})")
        return run.id

    except Exception as e:
        db.rollback()
        logger.error(f"[DB] Error saving comparison to database: {e}")
        raise
    finally:
        db.close()
