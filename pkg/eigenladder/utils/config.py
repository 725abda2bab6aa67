"""
YAML configuration utilities.

Numbers may be written as decimals or as rational strings ``"p/q"``;
:func:`parse_number` turns either into an exact :class:`fractions.Fraction`.
"""

import copy
import hashlib
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import yaml

from .error_handling import ConfigError, validate_config

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "oscillator": {
        "epsilon0": 1.0,
        "potential": "quartic",
        "kappa": "1/100",
        "degree": 4,
        "alpha2": 0.25,
    },
    "method": {"name": "sc-closed"},
    "ladder": {"n_max": 20},
    "lambda_grid": {"start": 0.75, "stop": 20.0, "num": 12},
    "thermal": {"betas": [0.5, 1.0, 2.0], "tolerance": 1e-12, "n_max": 4000},
    "oracle": {
        "tolerance": 1e-10,
        "start_dim": 64,
        "max_dim": 4096,
        "allow_negative": False,
    },
    "quadrature": {"tolerance": 1e-10, "max_depth": 40, "root_tolerance": 1e-14},
    "output": {"path": None},
}

METHODS = ("pert", "sc-closed", "sc-quadrature", "oracle")


def load_config(path: str) -> Dict[str, Any]:
    """
    Load configuration from YAML file.

    Args:
        path: Path to YAML configuration file

    Returns:
        Configuration dictionary

    Raises:
        ConfigError: if the file is missing or not a YAML mapping
    """
    if not os.path.exists(path):
        raise ConfigError(f"Config file not found: {path}")
    try:
        with open(path, "r") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Error parsing config {path}: {e}") from e

    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError(f"Config {path} must be a mapping of sections")

    logger.info("Loaded configuration from %s", path)
    return config


def save_config(config: Dict[str, Any], path: str):
    """
    Save configuration to YAML file.

    Args:
        config: Configuration dictionary
        path: Path to save YAML file
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(path, "w") as f:
        yaml.safe_dump(canonical_config(config), f, default_flow_style=False, sort_keys=True)

    logger.info("Saved configuration to %s", path)


def merge_configs(base_config: Dict[str, Any], override_config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge two configuration dictionaries.

    Args:
        base_config: Base configuration
        override_config: Configuration to override with

    Returns:
        Merged configuration
    """
    merged = copy.deepcopy(base_config)

    for key, value in override_config.items():
        if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
            merged[key] = merge_configs(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)

    return merged


def parse_number(value: Any, name: str = "value") -> Fraction:
    """
    Parse a decimal or ``p/q`` rational into an exact Fraction.

    Floats go through their shortest repr so ``0.01`` becomes ``1/100``.
    """
    if isinstance(value, bool):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"{name}: cannot parse {value!r} as a number") from e
    raise ConfigError(f"{name}: expected a number, got {value!r}")


def canonical_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Return a copy with Fractions rendered as strings (YAML-safe)."""
    if isinstance(config, dict):
        return {str(k): canonical_config(v) for k, v in config.items()}
    if isinstance(config, (list, tuple)):
        return [canonical_config(v) for v in config]
    if isinstance(config, Fraction):
        return str(config)
    return config


def config_hash(config: Dict[str, Any]) -> str:
    """First 16 hex digits of the SHA-256 of the canonical YAML dump."""
    text = dump_config(config)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass
class RunConfig:
    """Typed view of a merged configuration mapping."""

    epsilon0: float = 1.0
    potential: str = "quartic"
    kappa: Fraction = Fraction(1, 100)
    degree: int = 4
    alpha2: float = 0.25
    method: str = "sc-closed"
    n_max: int = 20
    e_grid: List[float] = field(default_factory=list)
    betas: List[float] = field(default_factory=list)
    thermal_tolerance: float = 1e-12
    thermal_n_max: int = 4000
    oracle_tolerance: float = 1e-10
    oracle_start_dim: int = 64
    oracle_max_dim: int = 4096
    allow_negative_oracle: bool = False
    quad_tolerance: float = 1e-10
    quad_max_depth: int = 40
    root_tolerance: float = 1e-14
    out_path: Optional[str] = None
    raw: Dict[str, Any] = field(default_factory=dict)

    @property
    def kappa_float(self) -> float:
        return float(self.kappa)

    @property
    def hash(self) -> str:
        return config_hash(self.raw)

    @classmethod
    def from_mapping(cls, config: Dict[str, Any]) -> "RunConfig":
        """
        Build a RunConfig from a (possibly partial) mapping.

        Args:
            config: Mapping of sections; missing keys fall back to DEFAULT_CONFIG

        Returns:
            Validated RunConfig

        Raises:
            ConfigError: on unparseable or inconsistent values
        """
        merged = merge_configs(DEFAULT_CONFIG, config or {})
        try:
            typed = _coerce(merged)
        except (TypeError, ValueError, KeyError) as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

        problems = validate_config(typed)
        if problems:
            raise ConfigError("; ".join(problems))

        osc = typed["oscillator"]
        run = cls(
            epsilon0=osc["epsilon0"],
            potential=osc["potential"],
            kappa=osc["kappa"],
            degree=osc["degree"],
            alpha2=osc["alpha2"],
            method=typed["method"]["name"],
            n_max=typed["ladder"]["n_max"],
            e_grid=_linspace(*typed["lambda_grid"]),
            betas=typed["thermal"]["betas"],
            thermal_tolerance=typed["thermal"]["tolerance"],
            thermal_n_max=typed["thermal"]["n_max"],
            oracle_tolerance=typed["oracle"]["tolerance"],
            oracle_start_dim=typed["oracle"]["start_dim"],
            oracle_max_dim=typed["oracle"]["max_dim"],
            allow_negative_oracle=typed["oracle"]["allow_negative"],
            quad_tolerance=typed["quadrature"]["tolerance"],
            quad_max_depth=typed["quadrature"]["max_depth"],
            root_tolerance=typed["quadrature"]["root_tolerance"],
            out_path=typed["output"]["path"],
            raw=merged,
        )

        if run.epsilon0 <= 0:
            raise ConfigError("oscillator.epsilon0 must be positive")
        if run.method == "oracle" and run.kappa < 0 and not run.allow_negative_oracle:
            raise ConfigError("method 'oracle' refuses kappa < 0 without allow_negative_oracle")
        if any(b <= 0 for b in run.betas):
            raise ConfigError("thermal.betas must be positive")
        return run


def _coerce(merged: Dict[str, Any]) -> Dict[str, Any]:
    typed = copy.deepcopy(merged)
    osc = typed["oscillator"]
    osc["epsilon0"] = float(parse_number(osc["epsilon0"], "oscillator.epsilon0"))
    osc["kappa"] = parse_number(osc["kappa"], "oscillator.kappa")
    osc["alpha2"] = float(parse_number(osc["alpha2"], "oscillator.alpha2"))
    osc["degree"] = int(osc["degree"])

    grid = typed["lambda_grid"]
    typed["lambda_grid"] = (
        float(parse_number(grid["start"], "lambda_grid.start")),
        float(parse_number(grid["stop"], "lambda_grid.stop")),
        int(grid["num"]),
    )

    betas = typed["thermal"]["betas"]
    if not isinstance(betas, (list, tuple)):
        betas = [betas]
    typed["thermal"]["betas"] = [float(parse_number(b, "thermal.betas")) for b in betas]
    for section in ("thermal", "oracle", "quadrature"):
        typed[section]["tolerance"] = float(parse_number(typed[section]["tolerance"], f"{section}.tolerance"))
    typed["quadrature"]["root_tolerance"] = float(parse_number(typed["quadrature"]["root_tolerance"]))
    typed["oracle"]["allow_negative"] = bool(typed["oracle"]["allow_negative"])
    return typed


def _linspace(start: float, stop: float, num: int) -> List[float]:
    if num < 1:
        raise ConfigError("lambda_grid.num must be at least 1")
    return np.linspace(start, stop, num).tolist()


def flag_overrides(pairs: List[Tuple[str, str, Any]]) -> Dict[str, Any]:
    """Turn ``(section, key, value)`` triples into an override mapping, skipping ``None`` values."""
    override: Dict[str, Any] = {}
    for section, key, value in pairs:
        if value is None:
            continue
        override.setdefault(section, {})[key] = value
    return override


def dump_config(config: Dict[str, Any]) -> str:
    """Canonical YAML text of a configuration mapping."""
    return yaml.safe_dump(canonical_config(config), default_flow_style=False, sort_keys=True)
