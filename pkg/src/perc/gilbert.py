"""
Gilbert Component Probabilities.

f(d, k, pi): probability that a tagged vertex of the complete graph K_d, after
keeping each edge independently with probability pi, lies in a component of
size k. Computed with the recurrence

    f(d, k) = C(d-1, k-1) f(k, k) (1 - pi)^(k (d - k)),   1 <= k < d
    f(d, d) = 1 - sum_{k < d} f(d, k)

with the binomial prefactor and the power in log space. Tables are memoized
per (d_max, pi) and are read-only once built.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)

# Smallest representable term before clamping to zero
UNDERFLOW_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class GilbertTable:
    """
    Component-size probabilities of percolated cliques.

    Attributes:
        f: Array of shape (d_max + 1, d_max + 1) with f[d, k] = f(d, k, pi);
            row 0 and column 0 are zero
        pi: Edge retention probability
    """

    f: np.ndarray
    pi: float

    @property
    def d_max(self) -> int:
        return self.f.shape[0] - 1

    def prob(self, d: int, k: int) -> float:
        """f(d, k, pi); zero when k is outside 1..d."""
        self._check_degree(d)
        if 1 <= k <= d:
            return float(self.f[d, k])
        return 0.0

    def row(self, d: int) -> np.ndarray:
        """(f(d, 1), ..., f(d, d))."""
        self._check_degree(d)
        return self.f[d, 1 : d + 1]

    def component_means(self) -> np.ndarray:
        """m_d = sum_k k f(d, k) for d = 0..d_max."""
        return self.f @ np.arange(self.d_max + 1, dtype=float)

    def _check_degree(self, d: int) -> None:
        if not 1 <= d <= self.d_max:
            raise ParameterError(f"Degree {d} outside the table range 1..{self.d_max}")


def _check_pi(pi: float) -> float:
    pi = float(pi)
    if not 0.0 <= pi <= 1.0:
        raise ParameterError(f"pi must lie in [0, 1], got {pi}")
    return pi


@lru_cache(maxsize=16)
def _table(d_max: int, pi: float) -> np.ndarray:
    f = np.zeros((d_max + 1, d_max + 1))
    if d_max >= 1:
        f[1, 1] = 1.0
    log_q = np.log1p(-pi) if pi < 1.0 else -np.inf
    log_fkk = np.full(d_max + 1, -np.inf)
    log_fkk[1] = 0.0

    for d in range(2, d_max + 1):
        k = np.arange(1, d)
        log_binom = special.gammaln(d) - special.gammaln(k) - special.gammaln(d - k + 1)
        log_terms = log_binom + log_fkk[1:d] + k * (d - k) * log_q
        terms = np.exp(log_terms)
        terms[terms < UNDERFLOW_FLOOR] = 0.0
        f[d, 1:d] = terms
        f_dd = max(0.0, 1.0 - float(terms.sum()))
        f[d, d] = f_dd
        log_fkk[d] = np.log(f_dd) if f_dd > 0 else -np.inf

    f.setflags(write=False)
    logger.debug("Built Gilbert table d_max=%d pi=%.6g", d_max, pi)
    return f


def gilbert_table(d_max: int, pi: float) -> GilbertTable:
    """
    Gilbert probabilities for all 1 <= k <= d <= d_max.

    Args:
        d_max: Largest clique size (>= 1)
        pi: Edge retention probability in [0, 1]

    Returns:
        GilbertTable

    Raises:
        ParameterError: d_max < 1 or pi outside [0, 1]
    """
    if int(d_max) != d_max or d_max < 1:
        raise ParameterError(f"d_max must be an integer >= 1, got {d_max}")
    return GilbertTable(f=_table(int(d_max), _check_pi(pi)), pi=float(pi))


def k_mixture(d: int, pi: float, gamma_d: float, table: GilbertTable | None = None) -> np.ndarray:
    """
    Law of K(d, pi, gamma_d): d with probability 1 - gamma_d, otherwise the size of
    the tagged vertex's component in the percolated d-clique.

    Returns:
        Array of length d whose entry k - 1 is P(K = k)
    """
    if not 0.0 <= gamma_d <= 1.0:
        raise ParameterError(f"gamma_d must lie in [0, 1], got {gamma_d}")
    if table is None or table.d_max < d or table.pi != float(pi):
        table = gilbert_table(d, pi)
    probs = gamma_d * np.array(table.row(d), dtype=float)
    probs[d - 1] += 1.0 - gamma_d
    return probs
