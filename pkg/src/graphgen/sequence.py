"""
Degree Sequences.

I.i.d. degree draws with the parity fix on the last entry.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from src.dist.degree import DegreeDistribution
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """
    Degrees d_1..d_n with an even sum.

    Attributes:
        degrees: Non-negative integer array
    """

    degrees: np.ndarray

    def __post_init__(self):
        degrees = np.array(self.degrees, dtype=np.int64)
        if degrees.ndim != 1:
            raise ParameterError("Degree sequence must be 1-d")
        if np.any(degrees < 0):
            raise ParameterError("Degrees must be non-negative")
        if int(degrees.sum()) % 2:
            raise ParameterError("Degree sum must be even")
        degrees.setflags(write=False)
        object.__setattr__(self, "degrees", degrees)

    @property
    def n(self) -> int:
        return int(self.degrees.size)

    @property
    def total(self) -> int:
        return int(self.degrees.sum())


def sample_degree_sequence(dist: DegreeDistribution, n: int, rng_seed: int) -> DegreeSequence:
    """
    Draw n i.i.d. degrees from dist, incrementing d_n when the sum is odd.

    Args:
        dist: Degree law
        n: Number of vertices (>= 1)
        rng_seed: Seed

    Returns:
        DegreeSequence
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(rng_seed)
    degrees = dist.sample(n, rng).astype(np.int64)
    if int(degrees.sum()) % 2:
        degrees[-1] += 1
    logger.debug("Sampled degree sequence: n=%d, total=%d, max=%d", n, degrees.sum(), degrees.max())
    return DegreeSequence(degrees)
