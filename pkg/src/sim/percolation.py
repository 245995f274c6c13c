"""
Bond Percolation and Diffusion Runs.

The final state of a diffusion with transmission probability pi equals the
union of the components of the seeds after keeping every edge independently
with probability pi. run_diffusion uses that shortcut; the transmission
variant simulates each edge attempt directly.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from src.graphgen.graph import GraphInstance, component_labels
from src.sim.seeds import SeedSet
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RunResult:
    """
    Outcome of one simulated process.

    Attributes:
        final_active_count: Number of active vertices at the end
        n_vertices: Graph size
        active: Boolean mask of active vertices
        per_degree_active: {degree: active vertices of that degree}
        largest_component: Largest percolation cluster (percolation runs)
        replica_seed: Seed the run was driven by
    """

    final_active_count: int
    n_vertices: int
    active: np.ndarray
    per_degree_active: Dict[int, int] = field(default_factory=dict)
    largest_component: Optional[int] = None
    replica_seed: Optional[int] = None

    @property
    def fraction(self) -> float:
        return self.final_active_count / self.n_vertices if self.n_vertices else 0.0


def run_result(g: GraphInstance, active: np.ndarray, **extra) -> RunResult:
    """Package an active mask with per-degree counts."""
    degrees = g.degrees()
    counts = np.bincount(degrees[active], minlength=int(degrees.max()) + 1 if degrees.size else 0)
    active.setflags(write=False)
    return RunResult(
        final_active_count=int(active.sum()),
        n_vertices=g.n_vertices,
        active=active,
        per_degree_active={int(d): int(c) for d, c in enumerate(counts) if c},
        **extra,
    )


@dataclass(frozen=True, eq=False)
class PercolationResult:
    """
    Components after bond percolation.

    Attributes:
        largest: Size of the largest component
        second: Size of the second largest component (0 if none)
        component_of: Component label of every vertex
        kept: Per-edge retention mask
    """

    largest: int
    second: int
    component_of: np.ndarray
    kept: np.ndarray


def _check_pi(pi: float) -> None:
    if not 0.0 <= pi <= 1.0:
        raise ParameterError(f"pi must lie in [0, 1], got {pi}")


def bond_percolate_components(g: GraphInstance, pi: float, rng_seed: int) -> PercolationResult:
    """
    Keep each edge with probability pi and label the components.

    Args:
        g: Graph
        pi: Retention probability
        rng_seed: Seed

    Returns:
        PercolationResult
    """
    _check_pi(pi)
    rng = np.random.default_rng(rng_seed)
    kept = rng.random(g.n_edges) < pi
    labels = component_labels(g.n_vertices, g.edges[kept])
    sizes = np.sort(np.bincount(labels))[::-1] if labels.size else np.zeros(0, dtype=np.int64)
    largest = int(sizes[0]) if sizes.size else 0
    second = int(sizes[1]) if sizes.size > 1 else 0
    logger.debug("Percolation pi=%.4g: largest=%d, second=%d of %d", pi, largest, second, g.n_vertices)
    return PercolationResult(largest=largest, second=second, component_of=labels, kept=kept)


def run_diffusion(g: GraphInstance, pi: float, seed: SeedSet, rng_seed: int) -> RunResult:
    """
    Final active set of a diffusion: every percolation cluster that meets the seed.

    Args:
        g: Graph
        pi: Transmission probability
        seed: Initially active vertices
        rng_seed: Seed of the percolation draw

    Returns:
        RunResult with ``largest_component`` filled in
    """
    perc = bond_percolate_components(g, pi, rng_seed)
    reached = np.zeros(perc.component_of.max() + 1 if g.n_vertices else 0, dtype=bool)
    reached[perc.component_of[seed.active]] = True
    active = reached[perc.component_of] if g.n_vertices else np.zeros(0, dtype=bool)
    return run_result(g, active, largest_component=perc.largest, replica_seed=rng_seed)


def spread_by_transmission(
    g: GraphInstance, seeds: np.ndarray, transmits: Callable[[int], bool]
) -> np.ndarray:
    """
    Simulate transmissions directly.

    Every edge is tried at most once, from the endpoint that becomes active
    first; ``transmits(edge_index)`` decides the attempt.

    Returns:
        Boolean mask of active vertices
    """
    indptr, _ = g.adjacency
    # edge index of every adjacency slot, in the same order as g.adjacency
    sources = np.concatenate([g.edges[:, 0], g.edges[:, 1]])
    targets = np.concatenate([g.edges[:, 1], g.edges[:, 0]])
    edge_ids = np.concatenate([np.arange(g.n_edges), np.arange(g.n_edges)])
    order = np.argsort(sources, kind="stable")
    slot_edge = edge_ids[order].tolist()
    slot_target = targets[order].tolist()
    starts = indptr.tolist()

    active = [False] * g.n_vertices
    tried = [False] * g.n_edges
    queue = deque()
    for v in np.asarray(seeds, dtype=np.int64).tolist():
        if not active[v]:
            active[v] = True
            queue.append(v)
    while queue:
        v = queue.popleft()
        for slot in range(starts[v], starts[v + 1]):
            e = slot_edge[slot]
            if tried[e]:
                continue
            tried[e] = True
            w = slot_target[slot]
            if not active[w] and transmits(e):
                active[w] = True
                queue.append(w)
    return np.array(active, dtype=bool)


def run_diffusion_transmission(g: GraphInstance, pi: float, seed: SeedSet, rng_seed: int) -> RunResult:
    """Diffusion by direct transmission draws instead of a percolation pass."""
    _check_pi(pi)
    rng = np.random.default_rng(rng_seed)
    active = spread_by_transmission(g, seed.active, lambda _e: bool(rng.random() < pi))
    return run_result(g, active, replica_seed=rng_seed)
