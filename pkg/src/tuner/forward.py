"""
Forward Laws of the Clique-Substituted Graph.

Given the pre-substitution degree law p and the profile gamma, these are the
asymptotic quantities of the substituted graph:
    - gamma_tilde: vertices after substitution per original vertex
    - tilde_distribution: its degree law
    - clustering_coefficient: global clustering C
    - biased_clustering_coefficient: average local clustering C2
"""
from __future__ import annotations

import logging

import numpy as np

from src.dist.degree import DegreeDistribution
from src.dist.profiles import CliqueProfile

logger = logging.getLogger(__name__)


def _arrays(p: DegreeDistribution, gamma: CliqueProfile):
    r = p.degrees.astype(float)
    return r, p.probs, gamma.as_array(p.support_max)


def gamma_tilde(p: DegreeDistribution, gamma: CliqueProfile) -> float:
    """Sum over r of [r gamma_r + 1 - gamma_r] p_r."""
    r, probs, g = _arrays(p, gamma)
    return float(np.dot(r * g + 1.0 - g, probs))


def tilde_distribution(p: DegreeDistribution, gamma: CliqueProfile) -> DegreeDistribution:
    """
    Degree law of the substituted graph.

    A degree-r vertex turns into r vertices of degree r with probability
    gamma_r, so p~_r = [r gamma_r + 1 - gamma_r] p_r / gamma_tilde.
    """
    r, probs, g = _arrays(p, gamma)
    weights = (r * g + 1.0 - g) * probs
    total = float(weights.sum())
    return DegreeDistribution(probs=weights / total, name=f"tilde({p.name})")


def clustering_coefficient(p: DegreeDistribution, gamma: CliqueProfile) -> float:
    """
    Asymptotic global clustering of the substituted graph.

    Returns:
        sum r(r-1)(r-2) gamma_r p_r / sum ((r-1) gamma_r + 1) r(r-1) p_r,
        or 0 when the substituted graph has no wedges
    """
    r, probs, g = _arrays(p, gamma)
    wedges = float(np.dot(((r - 1.0) * g + 1.0) * r * (r - 1.0), probs))
    if wedges <= 0:
        return 0.0
    closed = float(np.dot(r * (r - 1.0) * (r - 2.0) * g, probs))
    return closed / wedges


def biased_clustering_coefficient(p: DegreeDistribution, gamma: CliqueProfile) -> float:
    """Average local clustering: sum over r >= 3 of gamma_r (r-2) p_r / gamma_tilde."""
    r, probs, g = _arrays(p, gamma)
    mask = r >= 3
    numerator = float(np.dot(g[mask] * (r[mask] - 2.0), probs[mask]))
    return numerator / gamma_tilde(p, gamma)
