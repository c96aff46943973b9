"""
Database query functions for retrieving comparison runs
"""
from datetime import datetime
from typing import Dict, List, Optional
import json

from sqlalchemy import desc

from .config import SessionLocal
from .comparison_runs import ComparisonResult, ComparisonRun


def _run_to_dict(run, with_results: bool = False) -> Dict:
    """Convert a run model to dictionary"""
    result = {
        'id': run.id,
        'check_name': run.check_name,
        'run_date': run.run_date.isoformat() if run.run_date else None,
        'upload_date': run.upload_date.isoformat() if run.upload_date else None,
        'seed': run.seed,
        'n_realizations': run.n_realizations,
        'overall_result': run.overall_result,
        'parameters': json.loads(run.parameters) if run.parameters else {},
        'notes': run.notes,
        'result_count': len(run.results),
    }
    if with_results:
        result['results'] = [
            {
                'quantity': item.quantity,
                'status': item.status,
                'value': item.value,
                'analytic': item.analytic,
                'std_error': item.std_error,
                'ci95': [item.ci_lo, item.ci_hi] if item.ci_lo is not None else None,
                'z': item.z_score,
            }
            for item in sorted(run.results, key=lambda item: item.id)
        ]
    return result


def get_all_comparison_runs(limit: int = 100, offset: int = 0, check_name: Optional[str] = None,
                            start_date: Optional[str] = None) -> List[Dict]:
    """Saved runs, most recent first"""
    db = SessionLocal()
    try:
        query = db.query(ComparisonRun).order_by(desc(ComparisonRun.run_date), desc(ComparisonRun.id))

        if check_name:
            query = query.filter(ComparisonRun.check_name == check_name)

        if start_date:
            start_dt = datetime.fromisoformat(start_date.replace('Z', '+00:00'))
            query = query.filter(ComparisonRun.run_date >= start_dt)

        runs = query.offset(offset).limit(limit).all()
        return [_run_to_dict(run) for run in runs]
    finally:
        db.close()


def get_comparison_run_by_id(run_id: int) -> Optional[Dict]:
    """A saved run with its per-quantity results"""
    db = SessionLocal()
    try:
        run = db.query(ComparisonRun).filter(ComparisonRun.id == run_id).first()
        return _run_to_dict(run, with_results=True) if run else None
    finally:
        db.close()


def delete_comparison_run(run_id: int) -> bool:
    db = SessionLocal()
    try:
        run = db.query(ComparisonRun).filter(ComparisonRun.id == run_id).first()
        if not run:
            return False
        db.delete(run)
        db.commit()
        return True
    except Exception:
        db.rollback()
        raise
    finally:
        db.close()


