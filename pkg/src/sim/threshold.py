"""
Threshold Dynamics.

A vertex v becomes active once strictly more than k(v) of its neighbours are
active. Thresholds are drawn once per parent from the row of the parent's
degree and shared by all members of a clique.

The final active set does not depend on the processing order; run_threshold
can shuffle its frontier to check that.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.graphgen.graph import GraphInstance, component_labels
from src.sim.percolation import RunResult, run_result
from src.sim.seeds import SeedSet
from src.thresh.thresholds import ThresholdDistribution
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ThresholdAssignment:
    """Per-vertex thresholds k(v)."""

    k: np.ndarray

    def __post_init__(self):
        k = np.array(self.k, dtype=np.int64)
        if k.ndim != 1 or np.any(k < 0):
            raise ParameterError("Thresholds must be a 1-d array of non-negative integers")
        k.setflags(write=False)
        object.__setattr__(self, "k", k)

    def __len__(self) -> int:
        return int(self.k.size)


def assign_thresholds(g: GraphInstance, t: ThresholdDistribution, rng_seed: int) -> ThresholdAssignment:
    """
    Draw one threshold per parent and copy it to the clique members.

    Raises:
        ParameterError: Some parent degree has no row in t
    """
    rng = np.random.default_rng(rng_seed)
    _, first, inverse = np.unique(g.parent, return_index=True, return_inverse=True)
    parent_degree = g.degrees()[first]
    draws = t.sample(parent_degree, rng)
    return ThresholdAssignment(k=draws[inverse])


def run_threshold(
    g: GraphInstance,
    assignment: ThresholdAssignment,
    seed: SeedSet,
    shuffle_seed: Optional[int] = None,
) -> RunResult:
    """
    Propagate activations from the seed with per-vertex counters.

    Args:
        g: Graph
        assignment: Thresholds k(v)
        seed: Initially active vertices
        shuffle_seed: When given, pop the frontier in random order

    Returns:
        RunResult
    """
    if len(assignment) != g.n_vertices:
        raise ParameterError("Threshold assignment does not match the graph size")
    indptr, indices = g.adjacency
    starts = indptr.tolist()
    neighbours = indices.tolist()
    k = assignment.k.tolist()
    counts = [0] * g.n_vertices
    active = [False] * g.n_vertices

    frontier = seed.active.tolist()
    for v in frontier:
        active[v] = True
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    pending = list(frontier)

    while pending:
        if rng is not None:
            # swap a random entry to the end
            j = int(rng.integers(len(pending)))
            pending[j], pending[-1] = pending[-1], pending[j]
        v = pending.pop()
        for slot in range(starts[v], starts[v + 1]):
            w = neighbours[slot]
            counts[w] += 1
            if not active[w] and counts[w] > k[w]:
                active[w] = True
                pending.append(w)

    mask = np.array(active, dtype=bool)
    logger.debug("Threshold run: %d seeds -> %d active of %d", len(seed), int(mask.sum()), g.n_vertices)
    return run_result(g, mask)


def pivotal_set(g: GraphInstance, assignment: ThresholdAssignment) -> np.ndarray:
    """
    Largest component of the subgraph induced by zero-threshold vertices.

    Ties go to the component holding the smallest vertex id.

    Returns:
        Sorted vertex ids (empty when no vertex has threshold zero)
    """
    zero = assignment.k == 0
    if not zero.any():
        return np.zeros(0, dtype=np.int64)
    keep = zero[g.edges[:, 0]] & zero[g.edges[:, 1]]
    labels = component_labels(g.n_vertices, g.edges[keep])
    sizes = np.bincount(labels[zero], minlength=int(labels.max()) + 1)
    best = int(np.argmax(sizes))
    return np.flatnonzero(zero & (labels == best))


def pivotal_seed(pivotal: np.ndarray, rng: np.random.Generator) -> SeedSet:
    """A uniformly random pivotal vertex (empty seed when there is none)."""
    if pivotal.size == 0:
        return SeedSet(active=np.zeros(0, dtype=np.int64), scheme="single", description="no pivotal vertex")
    v = int(pivotal[rng.integers(pivotal.size)])
    return SeedSet(active=np.array([v]), scheme="single", description=f"pivotal {v}")
