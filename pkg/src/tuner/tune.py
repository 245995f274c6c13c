"""
Clustering Tuner.

Inverts the forward laws: given a target degree law p~ for the substituted
graph and a target clustering, find a constant gamma and a pre-substitution
law p such that substituting cliques into a configuration-model graph with
law p yields degree law p~ and the requested clustering.

Order of construction:
    1. gamma from the monotone clustering curve (bisection)
    2. lambda = F(gamma)(1 - gamma) / (1 - gamma F(gamma)), or
       1 / sum p~_r / r when gamma = 1
    3. p_r = p~_r [(lambda - 1) gamma + 1] / ((r - 1) gamma + 1)
with F(gamma) = sum r p~_r / ((r - 1) gamma + 1).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from src.dist.degree import DegreeDistribution
from src.dist.profiles import CliqueProfile
from src.tuner.clustering import c2_max, c2_of_gamma, c_max, c_of_gamma, check_condition_two
from src.tuner.forward import biased_clustering_coefficient, clustering_coefficient
from src.utils.errors import InfeasibleError, NumericError, ParameterError

logger = logging.getLogger(__name__)

GAMMA_XTOL = 1e-12
# Slack when comparing a target to the reachable maximum
BOUNDARY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class TuneResult:
    """
    Tuned substitution parameters.

    Attributes:
        gamma: Constant substitution probability
        lam: Mean of the pre-substitution law
        p: Pre-substitution degree law (p_0 = 0)
        achieved_c: Clustering of (p, gamma) by the forward formula
        target_c: Requested clustering
        kind: ``"global"`` or ``"average_local"``
    """

    gamma: float
    lam: float
    p: DegreeDistribution
    achieved_c: float
    target_c: float
    kind: str = "global"

    @property
    def profile(self) -> CliqueProfile:
        return CliqueProfile.constant(self.gamma)

    def to_row(self) -> dict:
        return {
            "kind": self.kind,
            "target_c": self.target_c,
            "gamma": self.gamma,
            "lambda": self.lam,
            "achieved_c": self.achieved_c,
        }


def _f_of_gamma(p_tilde: DegreeDistribution, gamma: float) -> float:
    r = p_tilde.degrees.astype(float)
    return float(np.dot(r / ((r - 1.0) * gamma + 1.0), p_tilde.probs))


def mean_for_gamma(p_tilde: DegreeDistribution, gamma: float) -> float:
    """Mean degree lambda of the pre-substitution law for constant gamma."""
    if gamma >= 1.0:
        r = p_tilde.degrees[1:].astype(float)
        return 1.0 / float(np.dot(p_tilde.probs[1:], 1.0 / r))
    f = _f_of_gamma(p_tilde, gamma)
    slack = 1.0 - gamma * f
    if slack <= 0:
        raise NumericError("Mean degree equation is ill-posed", {"gamma": gamma, "F": f})
    return f * (1.0 - gamma) / slack


def law_for_gamma(p_tilde: DegreeDistribution, gamma: float, lam: float) -> DegreeDistribution:
    """Pre-substitution law p_r = p~_r [(lam - 1) gamma + 1] / ((r - 1) gamma + 1)."""
    r = p_tilde.degrees.astype(float)
    probs = p_tilde.probs * ((lam - 1.0) * gamma + 1.0) / ((r - 1.0) * gamma + 1.0)
    return DegreeDistribution(probs=probs, name=f"tuned({p_tilde.name},gamma={gamma:.6g})")


def _solve_gamma(curve: Callable[[float], float], target: float, upper: float) -> float:
    if target <= 0.0:
        return 0.0
    if target >= upper - BOUNDARY_ATOL:
        return 1.0
    return float(optimize.bisect(lambda g: curve(g) - target, 0.0, 1.0, xtol=GAMMA_XTOL))


def _tune(
    p_tilde: DegreeDistribution,
    target: float,
    curve: Callable[[DegreeDistribution, float], float],
    maximum: Callable[[DegreeDistribution], float],
    forward: Callable[[DegreeDistribution, CliqueProfile], float],
    kind: str,
) -> TuneResult:
    if target < 0:
        raise ParameterError(f"Clustering target must be >= 0, got {target}")
    check_condition_two(p_tilde)
    upper = maximum(p_tilde)
    if target > upper + BOUNDARY_ATOL:
        raise InfeasibleError(f"Clustering {target} exceeds the reachable maximum {upper:.10g} ({kind})")

    gamma = _solve_gamma(lambda g: curve(p_tilde, g), target, upper)
    lam = mean_for_gamma(p_tilde, gamma)
    p = law_for_gamma(p_tilde, gamma, lam)
    achieved = forward(p, CliqueProfile.constant(gamma))
    logger.info("Tuned %s clustering %.6g: gamma=%.10g, lambda=%.10g", kind, target, gamma, lam)
    return TuneResult(gamma=gamma, lam=lam, p=p, achieved_c=achieved, target_c=target, kind=kind)


def tune(p_tilde: DegreeDistribution, C: float) -> TuneResult:
    """
    Find (p, gamma) reaching global clustering C with substituted degree law p~.

    Args:
        p_tilde: Target degree law of the substituted graph
        C: Target global clustering, 0 <= C <= c_max(p~)

    Returns:
        TuneResult

    Raises:
        InfeasibleError: p~ fails the feasibility clauses or C > c_max(p~)
    """
    return _tune(p_tilde, C, c_of_gamma, c_max, clustering_coefficient, "global")


def tune_biased(p_tilde: DegreeDistribution, C2: float) -> TuneResult:
    """Same as tune, for the average local clustering C2 <= c2_max(p~)."""
    return _tune(p_tilde, C2, c2_of_gamma, c2_max, biased_clustering_coefficient, "average_local")
