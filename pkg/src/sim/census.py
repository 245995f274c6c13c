"""
Internal Percolation Census.

Percolates only the internal (clique) edges and counts, for every clique of
size d, the fragments of each size k. Divided by the number of original
vertices, the count for (d, k) concentrates on (d / k) f(d, k, pi) p_d gamma_d.
"""
from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Tuple

import numpy as np

from src.graphgen.graph import GraphInstance, component_labels
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


def two_stage_internal_percolation_census(
    g_tilde: GraphInstance, pi: float, rng_seed: int
) -> Dict[Tuple[int, int], int]:
    """
    Fragment counts after keeping each internal edge with probability pi.

    Args:
        g_tilde: Clique-substituted graph
        pi: Retention probability of internal edges
        rng_seed: Seed

    Returns:
        {(d, k): number of size-k fragments from cliques of size d}
    """
    if not 0.0 <= pi <= 1.0:
        raise ParameterError(f"pi must lie in [0, 1], got {pi}")
    rng = np.random.default_rng(rng_seed)
    internal = np.flatnonzero(g_tilde.internal)
    kept = internal[rng.random(internal.size) < pi]
    labels = component_labels(g_tilde.n_vertices, g_tilde.edges[kept])

    members = np.flatnonzero(g_tilde.is_clique_member)
    if members.size == 0:
        return {}
    clique_size = np.bincount(g_tilde.parent[members])
    fragment_size = np.bincount(labels[members], minlength=int(labels.max()) + 1)

    # one representative member per fragment
    _, first = np.unique(labels[members], return_index=True)
    reps = members[first]
    pairs = zip(clique_size[g_tilde.parent[reps]].tolist(), fragment_size[labels[reps]].tolist())
    census = dict(Counter(pairs))
    logger.debug("Census at pi=%.4g: %d fragment classes", pi, len(census))
    return census
