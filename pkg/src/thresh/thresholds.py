"""
Threshold Distributions.

Row s of a ThresholdDistribution is the law (t_s0, ..., t_ss) of the threshold
of a degree-s vertex: the vertex activates once strictly more than its
threshold of neighbours are active.

Families:
    - contagion_thresholds(q): t_sl = 1(l = floor(q s))
    - constant_thresholds(k): t_sl = 1(l = min(k, s))
    - zero_thresholds: every threshold is zero
plus the transform threshold_prime, which folds clique membership into the
thresholds of the original graph.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from src.dist.profiles import CliqueProfile
from src.utils.errors import NumericError, ParameterError

logger = logging.getLogger(__name__)

ROW_ATOL = 1e-10
# Guards floor(q s) against products landing just below an integer
FLOOR_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class ThresholdDistribution:
    """
    Per-degree threshold laws.

    Attributes:
        t: Array of shape (s_max + 1, s_max + 1); t[s, l] = t_sl, zero for l > s
        name: Report label
    """

    t: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ParameterError("Threshold table must be a square (s_max + 1) x (s_max + 1) array")
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise ParameterError("Threshold probabilities must be finite and non-negative")
        if np.any(np.triu(t, k=1) > 0):
            raise ParameterError("Threshold of a degree-s vertex cannot exceed s")
        sums = t.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > ROW_ATOL)
        if bad.size:
            raise ParameterError(f"Threshold row {int(bad[0])} sums to {sums[bad[0]]!r}, expected 1")
        t.setflags(write=False)
        object.__setattr__(self, "t", t)

    @classmethod
    def from_rows(cls, rows: Mapping[int, Sequence[float]], s_max: int | None = None, name: str = "custom"):
        """
        Build from {s: (t_s0, ..., t_ss)}; missing rows default to threshold 0.
        """
        top = max(rows) if rows else 0
        s_max = top if s_max is None else s_max
        if top > s_max:
            raise ParameterError(f"Row {top} beyond s_max={s_max}")
        t = np.zeros((s_max + 1, s_max + 1))
        t[:, 0] = 1.0
        for s, row in rows.items():
            row = np.asarray(row, dtype=float)
            if row.size != s + 1:
                raise ParameterError(f"Row {s} must have {s + 1} entries, got {row.size}")
            t[s, :] = 0.0
            t[s, : s + 1] = row
        return cls(t=t, name=name)

    @property
    def s_max(self) -> int:
        return self.t.shape[0] - 1

    def row(self, s: int) -> np.ndarray:
        """(t_s0, ..., t_ss)."""
        if not 0 <= s <= self.s_max:
            raise ParameterError(f"Degree {s} outside the threshold table range 0..{self.s_max}")
        return self.t[s, : s + 1]

    def zero_mass(self, s_max: int | None = None) -> np.ndarray:
        """t_s0 for s = 0..s_max."""
        return self.covering(self.s_max if s_max is None else s_max).t[:, 0]

    def covering(self, s_max: int) -> "ThresholdDistribution":
        """
        Table restricted to degrees 0..s_max.

        Raises:
            ParameterError: The table does not reach s_max
        """
        if s_max > self.s_max:
            raise ParameterError(f"Threshold table covers degrees up to {self.s_max}, need {s_max}")
        if s_max == self.s_max:
            return self
        return ThresholdDistribution(t=self.t[: s_max + 1, : s_max + 1], name=self.name)

    def sample(self, degrees: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Draw one threshold per vertex from the row of its degree."""
        degrees = np.asarray(degrees, dtype=np.int64)
        if degrees.size and degrees.max() > self.s_max:
            raise ParameterError(f"Degree {int(degrees.max())} beyond the threshold table range")
        cdf = np.cumsum(self.t, axis=1)
        u = rng.random(degrees.size)
        draws = np.empty(degrees.size, dtype=np.int64)
        order = np.argsort(degrees, kind="stable")
        values, starts = np.unique(degrees[order], return_index=True)
        for s, idx in zip(values, np.split(order, starts[1:])):
            draws[idx] = np.searchsorted(cdf[s, : s + 1], u[idx], side="right")
        return np.minimum(draws, degrees)


def contagion_thresholds(q: float, s_max: int) -> ThresholdDistribution:
    """Contagion thresholds t_sl = 1(l = floor(q s)) for 0 < q < 1."""
    if not 0.0 < q < 1.0:
        raise ParameterError(f"q must lie in (0, 1), got {q}")
    s = np.arange(s_max + 1)
    levels = np.floor(q * s + FLOOR_SLACK).astype(np.int64)
    t = np.zeros((s_max + 1, s_max + 1))
    t[s, levels] = 1.0
    return ThresholdDistribution(t=t, name=f"contagion:q={q:g}")


def constant_thresholds(k: int, s_max: int) -> ThresholdDistribution:
    """Bootstrap-percolation thresholds t_sl = 1(l = min(k, s))."""
    if int(k) != k or k < 0:
        raise ParameterError(f"Constant threshold must be an integer >= 0, got {k}")
    s = np.arange(s_max + 1)
    t = np.zeros((s_max + 1, s_max + 1))
    t[s, np.minimum(int(k), s)] = 1.0
    return ThresholdDistribution(t=t, name=f"constant:k={int(k)}")


def zero_thresholds(s_max: int) -> ThresholdDistribution:
    """Every vertex has threshold zero."""
    t = np.zeros((s_max + 1, s_max + 1))
    t[:, 0] = 1.0
    return ThresholdDistribution(t=t, name="zero")


def threshold_prime(t: ThresholdDistribution, gamma: CliqueProfile) -> ThresholdDistribution:
    """
    Thresholds on the original graph that reproduce the clique dynamics.

    t'_s0 = t_s0, t'_sl = (1 - gamma_s) t_sl for 0 < l < s and
    t'_ss = (1 - gamma_s) t_ss + gamma_s (1 - t_s0).

    Raises:
        NumericError: A transformed row is not stochastic
    """
    g = gamma.as_array(t.s_max)
    out = t.t * (1.0 - g)[:, None]
    out[:, 0] = t.t[:, 0]
    s = np.arange(1, t.s_max + 1)
    out[s, s] = (1.0 - g[s]) * t.t[s, s] + g[s] * (1.0 - t.t[s, 0])

    sums = out.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > ROW_ATOL):
        raise NumericError("Transformed threshold rows are not stochastic", {"max_dev": float(np.abs(sums - 1).max())})
    return ThresholdDistribution(t=out, name=f"prime({t.name})")
