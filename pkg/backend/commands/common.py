"""
Command Helpers
Settings resolution and table output shared by the subcommands
"""
from typing import Any, Dict, List, Mapping, Optional
import argparse
import logging

import pandas as pd

import config
from result_displays import write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_COMPARISON = 3

# argparse dest -> settings key
FLAG_KEYS = {
    "lam": "lambda",
    "r": "r",
    "theta": "theta",
    "alpha": "alpha",
    "delta": "delta",
    "p": "p",
    "mu": "mu",
    "seed": "seed",
    "n_realizations": "n_realizations",
    "window_radius": "window_radius",
    "workers": "workers",
}


def settings_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Config file values overridden by the global flags"""
    file_values = config.load_config(args.config) if getattr(args, "config", None) else {}
    overrides = {key: getattr(args, dest, None) for dest, key in FLAG_KEYS.items()}
    return config.merge_settings(file_values, overrides)


def parameter_block(settings: Mapping[str, Any], **extra: Any) -> Dict[str, Any]:
    """Settings that are set, plus extra entries, in a stable order"""
    block = {key: settings[key] for key in config.CONFIG_KEYS if settings.get(key) is not None}
    block.update(extra)
    return block


def emit(frame: pd.DataFrame, name: str, parameters: Mapping[str, Any], args: argparse.Namespace):
    """Write a result table to --out, or print it when no path is given"""
    text = write_table(frame, name, parameters, output_format=args.format, path=args.out)
    if args.out is None:
        print(text, end="" if text.endswith("\n") else "\n")


def parse_assignments(pairs: Optional[List[str]]) -> Dict[str, str]:
    """`key=value` strings to a dict"""
    result = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"expected key=value, got '{pair}'")
        result[key.strip()] = value.strip()
    return result


def parse_grid(values: Optional[str], start: Optional[float], stop: Optional[float], points: int) -> List[float]:
    """
    Sweep grid from an explicit comma list or from start/stop/points

    Raises:
        ValueError: If the grid would be empty
    """
    if values:
        grid = [float(item) for item in values.split(",") if item.strip()]
    elif start is not None and stop is not None:
        if points < 1:
            raise ValueError(f"--points must be at least 1, got {points}")
        grid = [start] if points == 1 else [start + (stop - start) * k / (points - 1) for k in range(points)]
    else:
        raise ValueError("a sweep needs --values or both --start and --stop")
    if not grid:
        raise ValueError("sweep grid is empty")
    return grid
