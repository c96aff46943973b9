"""
Result Writer Tests
"""
import json
import math

import numpy as np
import pandas as pd
import pytest

from result_displays import SCHEMA_VERSION, format_report, read_table, render, report_frame, write_table
from result_displays.writers import parse_csv, parse_json


@pytest.fixture
def frame():
    return pd.DataFrame({
        "p": np.linspace(0.0, 1.0, 7),
        "value": [math.exp(-k / 3.0) for k in range(7)],
        "label": list("abcdefg"),
    })


def test_csv_floats_round_trip_exactly(frame, tmp_path):
    path = tmp_path / "table.csv"
    write_table(frame, "demo", {"delta": 2.0 / 3.0, "n": 4, "design": {"nu": -0.649}}, path=path)
    loaded, parameters = read_table(path)
    assert loaded["value"].tolist() == frame["value"].tolist()
    assert loaded["p"].tolist() == frame["p"].tolist()
    assert parameters == {"delta": 2.0 / 3.0, "n": 4, "design": {"nu": -0.649}}


def test_csv_header_lines(frame):
    text = render(frame, "demo", {"theta": 10.0, "view": "tail"})
    lines = text.splitlines()
    assert lines[0] == "# theta=10"
    assert lines[1] == "# view=tail"
    assert lines[2] == "p,value,label"


def test_json_document(frame):
    text = render(frame, "demo", {"p": 0.5}, output_format="json")
    document = json.loads(text)
    assert document["schema_version"] == SCHEMA_VERSION
    assert document["name"] == "demo"
    assert document["columns"] == ["p", "value", "label"]
    assert len(document["rows"]) == 7
    loaded, parameters = parse_json(text)
    assert loaded["value"].tolist() == frame["value"].tolist()
    assert parameters == {"p": 0.5}


def test_non_finite_values():
    frame = pd.DataFrame({"mode": ["dependent", "independent"], "value": [math.inf, float("nan")]})
    document = json.loads(render(frame, "mean", output_format="json"))
    assert document["rows"] == [["dependent", "inf"], ["independent", "nan"]]
    loaded, _ = parse_json(json.dumps(document))
    assert math.isinf(loaded["value"][0]) and math.isnan(loaded["value"][1])
    csv_frame, _ = parse_csv(render(frame, "mean"))
    assert math.isinf(csv_frame["value"][0])


def test_schema_version_checked():
    with pytest.raises(ValueError, match="schema_version"):
        parse_json(json.dumps({"schema_version": 99, "columns": [], "rows": [], "parameters": {}}))


def test_unknown_format(frame):
    with pytest.raises(ValueError):
        render(frame, "demo", output_format="xml")


def test_report_table():
    report = {
        "check_name": "demo",
        "description": "Demo check",
        "seed": 1,
        "overall_result": "PASS",
        "inputs": {"p": {"value": 0.5, "unit": None}},
        "results": {
            "ps_1": {"value": 0.78, "status": "PASS", "details": {
                "analytic": 0.7788, "estimate": 0.78, "std_error": 0.003, "ci95": [0.774, 0.786],
                "n_effective": 20000, "z": 0.4, "within_3_sigma": True}},
            "bound": {"value": 0.75, "status": "INFO", "details": None},
        },
    }
    frame = report_frame(report)
    assert frame["quantity"].tolist() == ["ps_1", "bound"]
    assert frame.loc[0, "ci_hi"] == 0.786
    assert math.isnan(frame.loc[1, "z"])
    assert format_report(report).splitlines()[0] == "demo: PASS (Demo check)"
