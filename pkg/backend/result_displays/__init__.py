"""
Result Display Package
Write result tables and format check reports for display

Saved comparison runs are formatted by result_displays.comparison_display,
which opens the run database on import.
"""

from .tables import format_report, format_table, report_frame, report_parameters
from .writers import SCHEMA_VERSION, read_table, render, write_table

__all__ = [
    'SCHEMA_VERSION',
    'format_report',
    'format_table',
    'read_table',
    'render',
    'report_frame',
    'report_parameters',
    'write_table',
]
