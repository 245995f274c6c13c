"""
Configuration Management.

Loads and merges configuration from configs/app.yaml and environment variables.
Environment variables take precedence over YAML values.

Architecture:
    - YAML provides baseline configuration (configs/app.yaml)
    - Environment variables override YAML for machine-specific settings
    - Dataclasses provide type-safe configuration objects
    - Single source of truth via load_config() function

Configuration Hierarchy:
    1. Defaults (hardcoded in dataclasses)
    2. configs/app.yaml (if exists)
    3. .env file (loaded via python-dotenv)
    4. Environment variables (highest priority)

Library functions never read configuration themselves; the CLI resolves an
AppConfig once and passes the values down as keyword arguments.

Usage:
    from src.utils.config import load_config

    cfg = load_config()
    print(cfg.simulation.n)  # 100000
    print(cfg.numerics.root_grid_points)  # 10000
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ROOT = Path(__file__).resolve().parents[2]
CONFIG_FILE = ROOT / "configs" / "app.yaml"

_TRUTHY = {"1", "true", "yes"}


# ============================================================================
# Application Configuration - Data Classes
# ============================================================================

@dataclass
class NumericsConfig:
    """
    Solver tolerances shared by the analytic modules.

    Attributes:
        root_grid_points: Points in the descending fixed-point scan
        root_xtol: Bracketing tolerance for fixed points
        threshold_xtol: Bisection tolerance for pi_c and tuner gamma
        regularity_eps: Left-neighbourhood width for the regularity check
        truncation_tail: Maximal dropped tail mass for Poisson laws
        debug_monotone: Evaluate the pi_c objective on a grid and fail on
            non-monotone sign patterns
    """
    root_grid_points: int = 10_000
    root_xtol: float = 1e-10
    threshold_xtol: float = 1e-10
    regularity_eps: float = 1e-4
    truncation_tail: float = 1e-10
    debug_monotone: bool = False


@dataclass
class SimulationConfig:
    """
    Monte Carlo defaults.

    Attributes:
        n: Number of vertices before clique substitution
        replicas: Independent replicas per parameter point
        base_seed: Root seed for replica seed derivation
        simple_policy: multigraph, erase or reject
        max_tries: Attempt budget of the reject policy
        kappa: Default exponential cutoff of power-law presets
        r_max: Default truncation degree of power-law presets
    """
    n: int = 100_000
    replicas: int = 50
    base_seed: int = 42
    simple_policy: str = "reject"
    max_tries: int = 1000
    kappa: float = 50.0
    r_max: int = 500


@dataclass
class OutputConfig:
    """
    Output and logging settings.

    Attributes:
        output_dir: Directory for CSV and graph files
        log_level: Root log level
        log_file: Optional log file path
    """
    output_dir: str = "results"
    log_level: str = "INFO"
    log_file: Optional[str] = None


@dataclass
class AppConfig:
    """
    Complete application configuration.

    Attributes:
        numerics: Solver tolerances
        simulation: Monte Carlo defaults
        output: Output locations and logging
    """
    numerics: NumericsConfig
    simulation: SimulationConfig
    output: OutputConfig


# ============================================================================
# Application Configuration - Functions
# ============================================================================

def _read_yaml(path: Path) -> Dict[str, Any]:
    """
    Read YAML configuration file.

    Args:
        path: Path to YAML file

    Returns:
        Parsed YAML as dictionary (empty dict if file doesn't exist)
    """
    if not path.exists():
        return {}
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def _env_bool(name: str, fallback: bool) -> bool:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return fallback
    return raw.lower() in _TRUTHY


def load_config(path: Optional[Path] = None) -> AppConfig:
    """
    Load configuration from YAML and environment variables.

    Configuration Priority (highest to lowest):
        1. Environment variables (CASCADES_*)
        2. .env file
        3. YAML file (configs/app.yaml unless ``path`` is given)
        4. Dataclass defaults

    Args:
        path: Optional alternative YAML file

    Returns:
        Complete application configuration
    """
    # Load .env file (does not override existing env vars)
    load_dotenv(ROOT / ".env", override=False)

    config_path = path or CONFIG_FILE
    y = _read_yaml(config_path)
    if not y:
        logger.info("No configuration found at %s, using defaults/env only", config_path)

    num_y = y.get("numerics") or {}
    sim_y = y.get("simulation") or {}
    out_y = y.get("output") or {}

    defaults = NumericsConfig()
    numerics = NumericsConfig(
        root_grid_points=int(
            os.getenv("CASCADES_ROOT_GRID", num_y.get("root_grid_points", defaults.root_grid_points))
        ),
        root_xtol=float(num_y.get("root_xtol", defaults.root_xtol)),
        threshold_xtol=float(num_y.get("threshold_xtol", defaults.threshold_xtol)),
        regularity_eps=float(num_y.get("regularity_eps", defaults.regularity_eps)),
        truncation_tail=float(num_y.get("truncation_tail", defaults.truncation_tail)),
        debug_monotone=_env_bool(
            "CASCADES_DEBUG_MONOTONE", bool(num_y.get("debug_monotone", defaults.debug_monotone))
        ),
    )

    sim_defaults = SimulationConfig()
    simulation = SimulationConfig(
        n=int(os.getenv("CASCADES_N", sim_y.get("n", sim_defaults.n))),
        replicas=int(os.getenv("CASCADES_REPLICAS", sim_y.get("replicas", sim_defaults.replicas))),
        base_seed=int(os.getenv("CASCADES_SEED", sim_y.get("base_seed", sim_defaults.base_seed))),
        simple_policy=os.getenv(
            "CASCADES_SIMPLE_POLICY", sim_y.get("simple_policy", sim_defaults.simple_policy)
        ),
        max_tries=int(os.getenv("CASCADES_MAX_TRIES", sim_y.get("max_tries", sim_defaults.max_tries))),
        kappa=float(sim_y.get("kappa", sim_defaults.kappa)),
        r_max=int(sim_y.get("r_max", sim_defaults.r_max)),
    )

    output = OutputConfig(
        output_dir=os.getenv("CASCADES_OUTPUT_DIR", out_y.get("output_dir", "results")),
        log_level=os.getenv("CASCADES_LOG_LEVEL", out_y.get("log_level", "INFO")),
        log_file=os.getenv("CASCADES_LOG_FILE", out_y.get("log_file")) or None,
    )

    return AppConfig(numerics=numerics, simulation=simulation, output=output)
