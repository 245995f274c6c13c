"""
Reachable Clustering.

Clustering of the substituted graph as a function of a constant gamma, written
in terms of the target degree law p~ of the substituted graph, and the largest
reachable values.

Feasibility (checked by check_condition_two):
    - p~_0 = 0
    - p~ has mass on degrees >= 3
The second-moment clause holds for every finite-support law.
"""
from __future__ import annotations

import logging

import numpy as np

from src.dist.degree import DegreeDistribution
from src.utils.errors import InfeasibleError, ParameterError

logger = logging.getLogger(__name__)


def check_condition_two(p_tilde: DegreeDistribution) -> None:
    """
    Raise when p~ cannot be reached by clique substitution with positive clustering.

    Raises:
        InfeasibleError: Naming the violated clause
    """
    if p_tilde.pmf(0) > 0:
        raise InfeasibleError(
            f"Target law {p_tilde.name} has p_0 = {p_tilde.pmf(0):.3g} > 0 "
            "(clause: no isolated vertices)"
        )
    if float(p_tilde.probs[3:].sum()) <= 0:
        raise InfeasibleError(
            f"Target law {p_tilde.name} has no mass on degrees >= 3 "
            "(clause: positive clustering needs cliques of size >= 3)"
        )


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must lie in [0, 1], got {gamma}")
    return gamma


def c_max(p_tilde: DegreeDistribution) -> float:
    """
    Largest global clustering reachable for p~ (all vertices in cliques).

    Returns:
        1 - 2 sum (r-1) p~_r / sum r(r-1) p~_r over r >= 2
    """
    check_condition_two(p_tilde)
    r = p_tilde.degrees[2:].astype(float)
    probs = p_tilde.probs[2:]
    return 1.0 - 2.0 * float(np.dot(r - 1.0, probs)) / float(np.dot(r * (r - 1.0), probs))


def c_of_gamma(p_tilde: DegreeDistribution, gamma: float) -> float:
    """Global clustering for constant gamma; increasing in gamma."""
    gamma = _check_gamma(gamma)
    r = p_tilde.degrees.astype(float)
    probs = p_tilde.probs
    wedges = float(np.dot(r * (r - 1.0), probs))
    if wedges <= 0:
        return 0.0
    mask = r >= 3
    rm = r[mask]
    closed = rm * (rm - 1.0) * (rm - 2.0) * gamma / ((rm - 1.0) * gamma + 1.0)
    return float(np.dot(closed, probs[mask])) / wedges


def c2_max(p_tilde: DegreeDistribution) -> float:
    """Largest average local clustering: sum over r >= 3 of (r-2)/r p~_r."""
    check_condition_two(p_tilde)
    r = p_tilde.degrees[3:].astype(float)
    return float(np.dot((r - 2.0) / r, p_tilde.probs[3:]))


def c2_of_gamma(p_tilde: DegreeDistribution, gamma: float) -> float:
    """Average local clustering for constant gamma."""
    gamma = _check_gamma(gamma)
    r = p_tilde.degrees[3:].astype(float)
    return float(np.dot((r - 2.0) * gamma / (r * gamma + 1.0 - gamma), p_tilde.probs[3:]))
