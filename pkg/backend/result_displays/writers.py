"""
Result Writers
CSV and JSON output of result tables with their parameter block
"""
from io import StringIO
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Tuple, Union
import json
import logging
import math

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
# 17 significant digits reproduce every double exactly
FLOAT_FORMAT = "%.17g"

OutputFormat = Literal["csv", "json"]


def _plain(value: Any) -> Any:
    """numpy scalars and arrays to plain Python values"""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def _header_value(value: Any) -> str:
    value = _plain(value)
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    if isinstance(value, str):
        return value
    return json.dumps(value, default=str)


def _parse_header_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def render_csv(frame: pd.DataFrame, parameters: Optional[Mapping[str, Any]] = None) -> str:
    """
    CSV text: one `# key=value` line per parameter, then the table

    Floats are written with 17 significant digits.
    """
    buffer = StringIO()
    for key, value in (parameters or {}).items():
        buffer.write(f"# {key}={_header_value(value)}\n")
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def parse_csv(text: str) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Inverse of render_csv: (table, parameters)"""
    parameters = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, raw = line[1:].strip().partition("=")
            parameters[key] = _parse_header_value(raw)
        else:
            body.append(line)
    frame = pd.read_csv(StringIO("\n".join(body)), float_precision="round_trip")
    return frame, parameters


def _json_number(value: Any) -> Any:
    value = _plain(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def render_json(frame: pd.DataFrame, name: str, parameters: Optional[Mapping[str, Any]] = None) -> str:
    """
    Versioned JSON document

    {"schema_version": 1, "name", "parameters", "columns", "rows"}; infinite
    and NaN values are written as the strings "inf", "-inf" and "nan".
    """
    document = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "parameters": _plain(dict(parameters or {})),
        "columns": [str(column) for column in frame.columns],
        "rows": [[_json_number(value) for value in row] for row in frame.itertuples(index=False, name=None)],
    }
    return json.dumps(document, indent=2, default=str)


def parse_json(text: str) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Inverse of render_json: (table, parameters)"""
    document = json.loads(text)
    if document.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {document.get('schema_version')!r}")
    rows = [[float(value) if value in ("inf", "-inf", "nan") else value for value in row]
            for row in document["rows"]]
    return pd.DataFrame(rows, columns=document["columns"]), document["parameters"]


def render(frame: pd.DataFrame, name: str, parameters: Optional[Mapping[str, Any]] = None,
           output_format: OutputFormat = "csv") -> str:
    if output_format == "csv":
        return render_csv(frame, parameters)
    if output_format == "json":
        return render_json(frame, name, parameters)
    raise ValueError(f"Unsupported output format '{output_format}'. Formats: csv, json")


def write_table(frame: pd.DataFrame, name: str, parameters: Optional[Mapping[str, Any]] = None,
                output_format: OutputFormat = "csv", path: Optional[Union[str, Path]] = None) -> str:
    """
    Render a table and write it to path (or return the text only when path is None)

    Returns:
        str: The rendered text
    """
    text = render(frame, name, parameters, output_format)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"[OUTPUT] Wrote {name} ({len(frame)} rows, {output_format}) to {path}")
    return text


def read_table(path: Union[str, Path]) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Read a table written by write_table; the format follows the file suffix"""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_csv(text)
