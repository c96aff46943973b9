"""
Realization Records
Per-realization export of a simulation for offline analysis
"""
from pathlib import Path
from typing import Union
import logging

import numpy as np
import pandas as pd

from services.montecarlo.estimators import first_success, success_matrix
from services.montecarlo.simulator import SimulationResult

logger = logging.getLogger(__name__)


def build_records(result: SimulationResult) -> pd.DataFrame:
    """
    One row per realization

    Columns: realization_id, n_points, success_bits (slot 1 first, e.g. "0110")
    and delay (first success slot, max_slots + 1 when none).
    """
    success = success_matrix(result.sir, result.config.params.theta)
    bits = ["".join("1" if hit else "0" for hit in row) for row in success]
    return pd.DataFrame({
        "realization_id": np.arange(success.shape[0]),
        "n_points": result.n_points.astype(int),
        "success_bits": bits,
        "delay": first_success(success).astype(int),
    })


def write_records(result: SimulationResult, path: Union[str, Path]) -> Path:
    """Write the per-realization records as CSV"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = build_records(result)
    frame.to_csv(path, index=False)
    logger.info(f"[MC] Wrote {len(frame)} realization records to {path}")
    return path


def read_records(path: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(path, dtype={"success_bits": str})
