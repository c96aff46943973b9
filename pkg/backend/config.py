"""
Run Configuration
Flat key-value settings file merged with command-line flags
"""
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union
import logging

from services.analytic.local_delay import DelayModel
from services.analytic.network import NetworkParams, load_params

logger = logging.getLogger(__name__)

NETWORK_KEYS = ("lambda", "r", "theta", "alpha", "delta", "p")
RUN_KEYS = ("mu", "seed", "n_realizations", "window_radius", "workers")
CONFIG_KEYS = NETWORK_KEYS + RUN_KEYS
INT_KEYS = {"seed", "n_realizations", "workers"}

DEFAULTS = {
    "seed": 0,
    "workers": 1,
}


def _convert(key: str, raw: str) -> Union[int, float]:
    if key in INT_KEYS:
        return int(raw)
    return float(raw)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, Any]:
    """
    Parse `key = value` lines

    Blank lines and anything after `#` are ignored. Keys are those of
    CONFIG_KEYS; a repeated key keeps its last value.

    Raises:
        ValueError: On a malformed line, an unknown key or a non-numeric value
    """
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{number}: expected 'key = value', got '{line}'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ValueError(f"{source}:{number}: unknown key '{key}'. Known keys: {', '.join(CONFIG_KEYS)}")
        try:
            values[key] = _convert(key, raw)
        except ValueError:
            raise ValueError(f"{source}:{number}: '{key}' needs a number, got '{raw}'") from None
    return values


def load_config(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a settings file (see parse_config_text)"""
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"config file not found: {path}")
    values = parse_config_text(path.read_text(encoding="utf-8"), source=str(path))
    logger.debug(f"[CONFIG] Loaded {len(values)} setting(s) from {path}")
    return values


def merge_settings(file_values: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Defaults, then file values, then flags (None means not given)

    A flag for alpha drops a file delta and vice versa, so the exponent
    given on the command line always wins.
    """
    settings = dict(DEFAULTS)
    settings.update(file_values)
    given = {key: value for key, value in overrides.items() if value is not None}
    if "alpha" in given:
        settings.pop("delta", None)
    if "delta" in given:
        settings.pop("alpha", None)
    settings.update(given)
    return settings


def has_network(settings: Mapping[str, Any]) -> bool:
    """True when any network key is set"""
    return any(settings.get(key) is not None for key in NETWORK_KEYS)


def network_params(settings: Mapping[str, Any]) -> NetworkParams:
    """
    NetworkParams from merged settings

    Raises:
        ValueError: On missing or invalid network keys
    """
    return load_params(settings)


def delay_model(settings: Mapping[str, Any], rayleigh: bool = True) -> DelayModel:
    """Delay model; the Rayleigh link distance needs mu"""
    base = network_params(settings)
    if not rayleigh:
        return DelayModel(base=base)
    mu: Optional[float] = settings.get("mu")
    if mu is None:
        raise ValueError("rayleigh link distance requires 'mu'")
    return DelayModel(base=base, distance_mode="rayleigh", mu=mu)
