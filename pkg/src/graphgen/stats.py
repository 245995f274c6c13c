"""
Empirical Graph Statistics.

Degree histogram and the two clustering coefficients:
    - c: global transitivity 2 sum_v P_v / sum_v d_v(d_v - 1)
    - c2: mean local coefficient, vertices of degree < 2 counting as zero
where P_v is the number of edges among the neighbours of v.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.dist.degree import DegreeDistribution
from src.graphgen.graph import GraphInstance
from src.utils.errors import DegenerateGraphError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClusteringStats:
    """Global (c) and average local (c2) clustering."""

    c: float
    c2: float


def empirical_degree_hist(g: GraphInstance) -> DegreeDistribution:
    """
    Proportion of vertices of each degree.

    Raises:
        DegenerateGraphError: No vertices, or no edges
    """
    if g.n_vertices == 0:
        raise DegenerateGraphError("Degree histogram of an empty graph")
    degrees = g.degrees()
    if not degrees.any():
        raise DegenerateGraphError("Degree histogram of an edgeless graph has zero mean")
    counts = np.bincount(degrees)
    return DegreeDistribution(probs=counts / g.n_vertices, name="empirical")


def triangles_per_vertex(g: GraphInstance) -> np.ndarray:
    """P_v for a simple graph."""
    adj = sparse.coo_matrix(
        (np.ones(2 * g.n_edges), (np.concatenate([g.edges[:, 0], g.edges[:, 1]]),
                                   np.concatenate([g.edges[:, 1], g.edges[:, 0]]))),
        shape=(g.n_vertices, g.n_vertices),
    ).tocsr()
    paths = (adj @ adj).multiply(adj)
    return np.asarray(paths.sum(axis=1)).ravel() / 2.0


def empirical_clustering(g: GraphInstance) -> ClusteringStats:
    """
    Global and average local clustering of a simple graph.

    Raises:
        ParameterError: The graph has loops or parallel edges
        DegenerateGraphError: No vertex of degree >= 2
    """
    if not g.is_simple():
        raise ParameterError("Clustering requires a simple graph (use the erase or reject policy)")
    degrees = g.degrees().astype(float)
    wedges = degrees * (degrees - 1)
    total_wedges = float(wedges.sum())
    if total_wedges == 0:
        raise DegenerateGraphError("Clustering is undefined without a vertex of degree >= 2")

    closed = triangles_per_vertex(g)
    c = 2.0 * float(closed.sum()) / total_wedges
    local = np.divide(2.0 * closed, wedges, out=np.zeros_like(closed), where=wedges > 0)
    c2 = float(local.mean())
    logger.debug("Empirical clustering: c=%.6f, c2=%.6f", c, c2)
    return ClusteringStats(c=c, c2=c2)
