"""
Comparison Run Display
Retrieve and format saved comparison runs from database
"""
from typing import Dict, List, Optional
import json
import logging

import pandas as pd

from database import get_all_comparison_runs, get_comparison_run_by_id

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["id", "run_date", "check_name", "overall_result", "seed", "n_realizations", "results"]


def display_comparison_run(run_id: int) -> Optional[Dict]:
    """
    Retrieve and format one comparison run

    Args:
        run_id: Database ID of the run

    Returns:
        dict: Run header, decoded parameters and a per-quantity results table
        None: If the run is not found
    """
    logger.info(f"[COMPARE-DISPLAY] Retrieving run ID: {run_id}")
    run = get_comparison_run_by_id(run_id)
    if not run:
        logger.warning(f"[COMPARE-DISPLAY] Run ID {run_id} not found")
        return None

    parameters = run.get("parameters") or {}
    if isinstance(parameters, str):
        try:
            parameters = json.loads(parameters)
        except json.JSONDecodeError as e:
            logger.warning(f"[COMPARE-DISPLAY] Failed to parse parameters: {e}")
            parameters = {}

    results = pd.DataFrame(run.get("results", []))
    if not results.empty:
        interval = results.pop("ci95")
        results["ci_lo"] = [item[0] if item else None for item in interval]
        results["ci_hi"] = [item[1] if item else None for item in interval]

    return {
        "run_id": run["id"],
        "check_name": run["check_name"],
        "run_date": run["run_date"],
        "seed": run["seed"],
        "n_realizations": run["n_realizations"],
        "overall_result": run["overall_result"],
        "notes": run.get("notes") or "",
        "parameters": parameters,
        "results": results,
    }


def history_frame(limit: int = 50, check_name: Optional[str] = None) -> pd.DataFrame:
    """Saved runs, newest first, one row each"""
    runs: List[Dict] = get_all_comparison_runs(limit=limit, check_name=check_name)
    rows = [{
        "id": run["id"],
        "run_date": run["run_date"],
        "check_name": run["check_name"],
        "overall_result": run["overall_result"],
        "seed": run["seed"],
        "n_realizations": run["n_realizations"],
        "results": run.get("result_count", 0),
    } for run in runs]
    return pd.DataFrame(rows, columns=HISTORY_COLUMNS)
