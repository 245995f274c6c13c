"""
Derived Degree Law.

Percolating the internal edges of every clique splits it into fragments. Seen
from the original graph, a fragment of size k coming from a degree-d clique is
one vertex of degree k. The derived law collects these:

    rho_k   = p_k (1 - gamma_k) + sum_{d >= k} (d / k) f(d, k, pi) p_d gamma_d
    sigma_k = p_k (1 - gamma_k) + sum_{d >= k} d f(d, k, pi) p_d gamma_d
    rho     = sum_k rho_k,   mu = sum_k k rho_k / rho,   p'_k = rho_k / rho

rho_k counts fragments per original vertex; sigma_k counts the substituted
vertices inside them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from src.dist.degree import DegreeDistribution
from src.dist.profiles import CliqueProfile
from src.perc.gilbert import GilbertTable, gilbert_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DerivedLaw:
    """
    Fragment law after internal percolation.

    Attributes:
        rho_k: Array indexed by k
        rho: Total fragment mass
        mu: Mean fragment degree
        sigma_k: Array indexed by k
    """

    rho_k: np.ndarray
    rho: float
    mu: float
    sigma_k: np.ndarray

    @property
    def p_prime(self) -> np.ndarray:
        """Degree law p'_k = rho_k / rho of the fragment graph."""
        return self.rho_k / self.rho


def clique_weights(p: DegreeDistribution, gamma: CliqueProfile) -> np.ndarray:
    """d p_d gamma_d for d = 0..support_max."""
    return p.degrees * p.probs * gamma.as_array(p.support_max)


def derived_law(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    table: GilbertTable | None = None,
) -> DerivedLaw:
    """
    Fragment law of (p, gamma) at retention probability pi.

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        pi: Edge retention probability
        table: Precomputed Gilbert table covering support_max (optional)

    Returns:
        DerivedLaw
    """
    d_max = max(p.support_max, 1)
    if table is None or table.d_max < d_max or table.pi != float(pi):
        table = gilbert_table(d_max, pi)
    f = table.f[: p.support_max + 1, : p.support_max + 1]

    g = gamma.as_array(p.support_max)
    plain = p.probs * (1.0 - g)
    spread = f.T @ clique_weights(p, gamma)

    k = p.degrees.astype(float)
    rho_k = plain.copy()
    rho_k[1:] += spread[1:] / k[1:]
    sigma_k = plain + spread

    rho = float(rho_k.sum())
    mu = float(np.dot(k, rho_k)) / rho
    for arr in (rho_k, sigma_k):
        arr.setflags(write=False)
    return DerivedLaw(rho_k=rho_k, rho=rho, mu=mu, sigma_k=sigma_k)
