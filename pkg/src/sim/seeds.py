"""
Seeding Schemes.

Three ways to pick the initially active set S:
    - SingleSeed: one vertex, given or uniformly random
    - DegreeIndependentSeeding: every vertex independently with alpha_{deg(v)}
    - CliqueCorrelatedSeeding: every parent independently with alpha_d; a
      seeded parent seeds all of its clique members
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.dist.profiles import ActivationProfile
from src.graphgen.graph import GraphInstance
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SeedSet:
    """
    Initially active vertices.

    Attributes:
        active: Sorted vertex ids
        scheme: ``single``, ``degree_independent`` or ``clique_correlated``
        description: Parameters of the scheme for reports
    """

    active: np.ndarray
    scheme: str
    description: str = ""

    def __post_init__(self):
        active = np.unique(np.asarray(self.active, dtype=np.int64))
        active.setflags(write=False)
        object.__setattr__(self, "active", active)

    def __len__(self) -> int:
        return int(self.active.size)

    def mask(self, n_vertices: int) -> np.ndarray:
        out = np.zeros(n_vertices, dtype=bool)
        out[self.active] = True
        return out


@dataclass(frozen=True)
class SingleSeed:
    """One seed vertex; uniformly random when ``vertex`` is None."""

    vertex: Optional[int] = None

    def draw(self, g: GraphInstance, rng: np.random.Generator) -> SeedSet:
        if g.n_vertices == 0:
            raise ParameterError("Cannot seed an empty graph")
        v = int(rng.integers(g.n_vertices)) if self.vertex is None else int(self.vertex)
        if not 0 <= v < g.n_vertices:
            raise ParameterError(f"Seed vertex {v} out of range")
        return SeedSet(active=np.array([v]), scheme="single", description=str(v))


@dataclass(frozen=True)
class DegreeIndependentSeeding:
    """Each vertex seeded independently with probability alpha of its degree."""

    alpha: ActivationProfile

    def draw(self, g: GraphInstance, rng: np.random.Generator) -> SeedSet:
        degrees = g.degrees()
        probs = self.alpha.as_array(int(degrees.max()) if degrees.size else 0)[degrees]
        chosen = np.flatnonzero(rng.random(g.n_vertices) < probs)
        return SeedSet(active=chosen, scheme="degree_independent", description=self.alpha.describe())


@dataclass(frozen=True)
class CliqueCorrelatedSeeding:
    """Each parent seeded with probability alpha of its degree; cliques are seeded whole."""

    alpha: ActivationProfile

    def draw(self, g: GraphInstance, rng: np.random.Generator) -> SeedSet:
        if g.n_vertices == 0:
            return SeedSet(active=np.array([], dtype=np.int64), scheme="clique_correlated")
        degrees = g.degrees()
        probs = self.alpha.as_array(int(degrees.max()))[degrees]
        parent_draw = rng.random(int(g.parent.max()) + 1)
        chosen = np.flatnonzero(parent_draw[g.parent] < probs)
        return SeedSet(active=chosen, scheme="clique_correlated", description=self.alpha.describe())
