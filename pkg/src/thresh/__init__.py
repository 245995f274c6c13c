"""
Threshold and contagion analytics.
"""
from __future__ import annotations

from src.thresh.cascade import (
    CascadeCondition,
    CascadeFixedPoint,
    ContagionReport,
    ContagionThreshold,
    XiSolution,
    activation_cascade_fraction,
    cascade_condition,
    contagion_qc,
    contagion_report,
    contagion_zeta_L,
    pivotal_fraction,
    xi_solve,
)
from src.thresh.thresholds import (
    ThresholdDistribution,
    constant_thresholds,
    contagion_thresholds,
    threshold_prime,
    zero_thresholds,
)

__all__ = [
    "CascadeCondition",
    "CascadeFixedPoint",
    "ContagionReport",
    "ContagionThreshold",
    "ThresholdDistribution",
    "XiSolution",
    "activation_cascade_fraction",
    "cascade_condition",
    "constant_thresholds",
    "contagion_qc",
    "contagion_report",
    "contagion_thresholds",
    "contagion_zeta_L",
    "pivotal_fraction",
    "threshold_prime",
    "xi_solve",
]
