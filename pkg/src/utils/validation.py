"""
Configuration Validation.

Validate the resolved configuration at startup.

Catches out-of-range tolerances, unknown policies and impossible simulation
sizes before any computation starts.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from src.utils.config import AppConfig

logger = logging.getLogger(__name__)

SIMPLE_POLICIES = ("multigraph", "erase", "reject")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def validate_config(cfg: AppConfig) -> Tuple[bool, List[str]]:
    """
    Validate a resolved configuration.

    Args:
        cfg: Configuration returned by load_config()

    Returns:
        Tuple of (is_valid, errors) where:
            - is_valid: True if all validations pass
            - errors: List of error messages (empty if valid)
    """
    errors = []

    num = cfg.numerics
    for name in ("root_xtol", "threshold_xtol", "regularity_eps", "truncation_tail"):
        value = getattr(num, name)
        if not 0.0 < value < 1.0:
            errors.append(f"numerics.{name} must lie in (0, 1), got {value}")
    if num.root_grid_points < 100:
        errors.append(f"numerics.root_grid_points must be >= 100, got {num.root_grid_points}")

    sim = cfg.simulation
    if sim.n < 1:
        errors.append(f"simulation.n must be >= 1, got {sim.n}")
    if sim.replicas < 2:
        errors.append(f"simulation.replicas must be >= 2 for confidence intervals, got {sim.replicas}")
    if sim.base_seed < 0:
        errors.append(f"simulation.base_seed must be non-negative, got {sim.base_seed}")
    if sim.simple_policy not in SIMPLE_POLICIES:
        errors.append(
            f"Invalid simulation.simple_policy: {sim.simple_policy} (must be one of {SIMPLE_POLICIES})"
        )
    if sim.max_tries < 1:
        errors.append(f"simulation.max_tries must be >= 1, got {sim.max_tries}")
    if sim.kappa <= 0:
        errors.append(f"simulation.kappa must be positive, got {sim.kappa}")
    if sim.r_max < 1:
        errors.append(f"simulation.r_max must be >= 1, got {sim.r_max}")

    if cfg.output.log_level.upper() not in LOG_LEVELS:
        errors.append(f"Invalid output.log_level: {cfg.output.log_level}")

    is_valid = len(errors) == 0

    if not is_valid:
        for error in errors:
            logger.error(error)
    else:
        logger.debug("Configuration validation passed")

    return is_valid, errors
