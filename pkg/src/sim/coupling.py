"""
Projection Coupling.

Runs the threshold process on a clique-substituted graph and, with the same
threshold draws, on its projection (the original graph), where each parent j
gets

    k'(j) = 0      if k(j) = 0
    k'(j) = d_j    if k(j) > 0 and j was replaced by a clique
    k'(j) = k(j)   otherwise

A clique with positive threshold never activates unless seeded, and a
degree-d vertex with threshold d never activates either, so the projected
active set of the first run must equal the active set of the second.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.dist.profiles import CliqueProfile
from src.graphgen.graph import GraphInstance
from src.graphgen.projection import project
from src.sim.seeds import SeedSet
from src.sim.threshold import ThresholdAssignment, assign_thresholds, run_threshold
from src.thresh.thresholds import ThresholdDistribution, threshold_prime
from src.utils.errors import ParameterError
from src.utils.seeding import derive_seeds

logger = logging.getLogger(__name__)


def projected_thresholds(g_tilde: GraphInstance, assignment: ThresholdAssignment, vertex_map: np.ndarray,
                         n_projected: int) -> np.ndarray:
    """k' on the projected graph from the per-vertex thresholds of g_tilde."""
    k = assignment.k
    degrees = g_tilde.degrees()
    coupled = np.where(k == 0, 0, np.where(g_tilde.is_clique_member, degrees, k))
    out = np.zeros(n_projected, dtype=np.int64)
    out[vertex_map] = coupled
    return out


def coupling_check(
    g_tilde: GraphInstance,
    t: ThresholdDistribution,
    gamma: CliqueProfile,
    u: Optional[int] = None,
    rng_seed: int = 0,
) -> bool:
    """
    Compare the projected cascade on g_tilde with the coupled cascade on its projection.

    Args:
        g_tilde: Clique-substituted graph
        t: Threshold distribution
        gamma: Substitution profile g_tilde was built with
        u: Zero-threshold seed vertex (uniformly random among them when None)
        rng_seed: Seed for the thresholds and the choice of u

    Returns:
        True when both active sets coincide

    Raises:
        ParameterError: u has a positive threshold, or no vertex has threshold zero
    """
    threshold_seed, pick_seed = derive_seeds(rng_seed, 2)
    assignment = assign_thresholds(g_tilde, t, threshold_seed)
    zero = np.flatnonzero(assignment.k == 0)
    if u is None:
        if zero.size == 0:
            raise ParameterError("No zero-threshold vertex to seed the coupling check")
        u = int(np.random.default_rng(pick_seed).choice(zero))
    elif assignment.k[u] != 0:
        raise ParameterError(f"Seed vertex {u} has threshold {int(assignment.k[u])}, expected 0")

    full = run_threshold(g_tilde, assignment, SeedSet(active=np.array([u]), scheme="single"))
    projection = project(g_tilde)
    vertex_map = projection.vertex_map
    n_projected = projection.graph.n_vertices

    k_prime = projected_thresholds(g_tilde, assignment, vertex_map, n_projected)
    t_prime = threshold_prime(t, gamma).t
    degrees = projection.graph.degrees()
    if np.any(t_prime[np.minimum(degrees, t.s_max), np.minimum(k_prime, t.s_max)] <= 0):
        logger.warning("Coupled threshold outside the support of the transformed law")

    coupled = run_threshold(
        projection.graph,
        ThresholdAssignment(k=k_prime),
        SeedSet(active=np.array([vertex_map[u]]), scheme="single"),
    )
    projected_active = np.zeros(n_projected, dtype=bool)
    projected_active[vertex_map[full.active]] = True
    agree = bool(np.array_equal(projected_active, coupled.active))
    if not agree:
        logger.warning(
            "Coupling mismatch: %d projected vs %d coupled active vertices",
            int(projected_active.sum()), int(coupled.active.sum()),
        )
    return agree
