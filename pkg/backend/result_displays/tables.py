"""
Report Tables
Flatten check reports into tables and format them for the terminal
"""
from typing import Any, Dict, Mapping
import math

import pandas as pd

REPORT_COLUMNS = ["quantity", "status", "analytic", "estimate", "std_error", "ci_lo", "ci_hi", "z", "n_effective"]


def _number(value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        return math.nan


def report_frame(report: Mapping[str, Any]) -> pd.DataFrame:
    """
    One row per checked quantity of a BaseCheck report

    Comparison rows carry analytic, estimate, CI and z; tolerance and INFO
    rows carry the observed value in the estimate column.
    """
    rows = []
    for quantity, result in report.get("results", {}).items():
        details = result.get("details") if isinstance(result.get("details"), dict) else {}
        interval = details.get("ci95") or [None, None]
        rows.append({
            "quantity": quantity,
            "status": result["status"],
            "analytic": _number(details.get("analytic")),
            "estimate": _number(details.get("estimate", result.get("value"))),
            "std_error": _number(details.get("std_error")),
            "ci_lo": _number(interval[0]),
            "ci_hi": _number(interval[1]),
            "z": _number(details.get("z")),
            "n_effective": _number(details.get("n_effective")),
        })
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def report_parameters(report: Mapping[str, Any]) -> Dict[str, Any]:
    """Parameter block of a report: check name, seed, overall result and inputs"""
    parameters = {
        "check": report["check_name"],
        "seed": report.get("seed"),
        "overall_result": report.get("overall_result"),
    }
    parameters.update({name: item.get("value") for name, item in report.get("inputs", {}).items()})
    return parameters


def format_report(report: Mapping[str, Any]) -> str:
    """Human-readable report with a header line and the comparison table"""
    frame = report_frame(report)
    header = f"{report['check_name']}: {report.get('overall_result')} ({report.get('description', '')})"
    if frame.empty:
        return header
    return header + "\n" + frame.to_string(index=False, float_format=lambda value: f"{value:.6g}")


def format_table(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False, float_format=lambda value: f"{value:.10g}")
