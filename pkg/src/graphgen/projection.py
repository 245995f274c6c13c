"""
Projection.

Maps a subgraph of a clique-substituted graph back to the parent level: vertices
with the same parent that are connected through retained internal edges are
merged into one vertex; external edges are kept (an external edge between two
merged members becomes a loop).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.graphgen.graph import GraphInstance, component_labels
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """
    Projected graph and the vertex map.

    Attributes:
        graph: Projected graph; ``parent`` holds the shared parent id of each group
        vertex_map: For each vertex of the source graph, its projected id (-1 if
            outside the subgraph)
    """

    graph: GraphInstance
    vertex_map: np.ndarray


def _as_vertex_array(g: GraphInstance, sub_vertices) -> np.ndarray:
    if sub_vertices is None:
        return np.arange(g.n_vertices)
    arr = np.asarray(sub_vertices)
    if arr.dtype == bool:
        if arr.shape != (g.n_vertices,):
            raise ParameterError("Vertex mask must have one entry per vertex")
        return np.flatnonzero(arr)
    arr = np.unique(arr.astype(np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= g.n_vertices):
        raise ParameterError("Subgraph vertex out of range")
    return arr


def project(
    g: GraphInstance,
    sub_vertices: Optional[np.ndarray] = None,
    sub_edges: Optional[np.ndarray] = None,
) -> ProjectionResult:
    """
    Project a subgraph of g.

    Args:
        g: Source graph
        sub_vertices: Vertex ids or boolean mask (default: all vertices)
        sub_edges: Edge indices into g.edges (default: every edge with both
            endpoints in sub_vertices)

    Returns:
        ProjectionResult. Projected vertices are ordered by (parent, smallest
        member id).
    """
    vertices = _as_vertex_array(g, sub_vertices)
    in_sub = np.zeros(g.n_vertices, dtype=bool)
    in_sub[vertices] = True

    if sub_edges is None:
        edge_idx = np.flatnonzero(in_sub[g.edges[:, 0]] & in_sub[g.edges[:, 1]])
    else:
        edge_idx = np.asarray(sub_edges, dtype=np.int64)
        if edge_idx.size and (edge_idx.min() < 0 or edge_idx.max() >= g.n_edges):
            raise ParameterError("Subgraph edge index out of range")
        ends = g.edges[edge_idx]
        if not np.all(in_sub[ends]):
            raise ParameterError("Subgraph edge has an endpoint outside the vertex set")

    ends = g.edges[edge_idx]
    merge = g.internal[edge_idx] & (g.parent[ends[:, 0]] == g.parent[ends[:, 1]])

    roots = component_labels(g.n_vertices, ends[merge])[vertices]
    unique_roots, first = np.unique(roots, return_index=True)
    representatives = vertices[first]
    order = np.lexsort((representatives, g.parent[representatives]))
    projected_id = np.empty(unique_roots.size, dtype=np.int64)
    projected_id[order] = np.arange(unique_roots.size)

    vertex_map = np.full(g.n_vertices, -1, dtype=np.int64)
    vertex_map[vertices] = projected_id[np.searchsorted(unique_roots, roots)]

    kept = ends[~merge]
    projected = GraphInstance.from_edges(
        n_vertices=unique_roots.size,
        edges=vertex_map[kept],
        parent=g.parent[representatives[order]],
        metadata={"projected_from": g.n_vertices},
    )
    logger.debug("Projected %d vertices onto %d groups", vertices.size, unique_roots.size)
    vertex_map.setflags(write=False)
    return ProjectionResult(graph=projected, vertex_map=vertex_map)
