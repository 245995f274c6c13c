"""
Graph Instances.

Edge-array storage for configuration-model multigraphs and their
clique-substituted versions, plus the text serialization format.

Layout:
    - ``edges``: (m, 2) integer array, loops and parallel edges allowed
    - ``internal``: per-edge flag, True for edges inside a substituted clique
    - ``parent``: per-vertex id of the pre-substitution vertex
    - ``is_clique_member``: per-vertex flag X(parent)

Text format:
    n m
    u v kind            (m lines, kind = internal | external)
    # parents
    v parent is_clique  (n lines, is_clique = 0 | 1)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Optional, Tuple

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)

PARENTS_MARKER = "# parents"


def _frozen(values: np.ndarray, dtype) -> np.ndarray:
    out = np.array(values, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class GraphInstance:
    """
    Immutable multigraph with clique bookkeeping.

    Attributes:
        n_vertices: Number of vertices
        edges: (m, 2) endpoint array
        internal: (m,) True for internal (clique) edges
        parent: (n,) parent vertex id
        is_clique_member: (n,) True when the parent was replaced by a clique
        metadata: Construction details (policy, retries, deviation flags)
    """

    n_vertices: int
    edges: np.ndarray
    internal: np.ndarray
    parent: np.ndarray
    is_clique_member: np.ndarray
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        n = int(self.n_vertices)
        edges = _frozen(np.asarray(self.edges, dtype=np.int64).reshape(-1, 2), np.int64)
        internal = _frozen(self.internal, bool)
        parent = _frozen(self.parent, np.int64)
        members = _frozen(self.is_clique_member, bool)
        if n < 0:
            raise ParameterError(f"Vertex count must be non-negative, got {n}")
        if internal.shape != (edges.shape[0],):
            raise ParameterError("internal flags must have one entry per edge")
        if parent.shape != (n,) or members.shape != (n,):
            raise ParameterError("parent and is_clique_member must have one entry per vertex")
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ParameterError("Edge endpoint out of range")
        object.__setattr__(self, "n_vertices", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "internal", internal)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "is_clique_member", members)
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        edges,
        internal=None,
        parent=None,
        is_clique_member=None,
        metadata: Optional[Mapping[str, Any]] = None,
    ) -> "GraphInstance":
        """Build a graph, defaulting to all-external edges and parent[v] = v."""
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        return cls(
            n_vertices=n_vertices,
            edges=edges,
            internal=np.zeros(len(edges), dtype=bool) if internal is None else internal,
            parent=np.arange(n_vertices) if parent is None else parent,
            is_clique_member=(
                np.zeros(n_vertices, dtype=bool) if is_clique_member is None else is_clique_member
            ),
            metadata=metadata or {},
        )

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def degrees(self) -> np.ndarray:
        """Vertex degrees; a loop contributes 2."""
        return np.bincount(self.edges.ravel(), minlength=self.n_vertices)

    @cached_property
    def adjacency(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        CSR neighbour lists ``(indptr, indices)``.

        Parallel edges repeat the neighbour, a loop lists the vertex twice.
        """
        u, v = self.edges[:, 0], self.edges[:, 1]
        sources = np.concatenate([u, v])
        targets = np.concatenate([v, u])
        order = np.argsort(sources, kind="stable")
        counts = np.bincount(sources, minlength=self.n_vertices)
        indptr = np.zeros(self.n_vertices + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return _frozen(indptr, np.int64), _frozen(targets[order], np.int64)

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.adjacency
        return indices[indptr[v]: indptr[v + 1]]

    def loop_count(self) -> int:
        return int(np.count_nonzero(self.edges[:, 0] == self.edges[:, 1]))

    def multi_edge_count(self) -> int:
        """Number of edges beyond the first between the same pair of vertices."""
        if self.n_edges == 0:
            return 0
        lo = self.edges.min(axis=1)
        hi = self.edges.max(axis=1)
        keys = lo * np.int64(max(self.n_vertices, 1)) + hi
        return int(keys.size - np.unique(keys).size)

    def is_simple(self) -> bool:
        return self.loop_count() == 0 and self.multi_edge_count() == 0

    def clique_members(self, parent_id: int) -> np.ndarray:
        """Vertices whose parent is ``parent_id``."""
        return np.flatnonzero(self.parent == parent_id)

    def to_networkx(self) -> nx.MultiGraph:
        """Export as a networkx MultiGraph with kind/parent attributes."""
        graph = nx.MultiGraph()
        for v in range(self.n_vertices):
            graph.add_node(v, parent=int(self.parent[v]), is_clique_member=bool(self.is_clique_member[v]))
        for (u, v), is_internal in zip(self.edges.tolist(), self.internal.tolist()):
            graph.add_edge(u, v, kind="internal" if is_internal else "external")
        return graph

    def __repr__(self) -> str:
        return (
            f"GraphInstance(n_vertices={self.n_vertices}, n_edges={self.n_edges}, "
            f"clique_members={int(self.is_clique_member.sum())})"
        )


def component_labels(n_vertices: int, edges: np.ndarray) -> np.ndarray:
    """Connected-component label of every vertex."""
    if n_vertices == 0:
        return np.zeros(0, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    adj = sparse.coo_matrix(
        (np.ones(len(edges), dtype=np.int8), (edges[:, 0], edges[:, 1])),
        shape=(n_vertices, n_vertices),
    )
    _, labels = csgraph.connected_components(adj, directed=False)
    return labels.astype(np.int64)


# ============================================================================
# Serialization
# ============================================================================

def format_graph(g: GraphInstance) -> str:
    """Render a graph in the text edge-list format."""
    lines = [f"{g.n_vertices} {g.n_edges}"]
    lines.extend(
        f"{u} {v} {'internal' if k else 'external'}"
        for (u, v), k in zip(g.edges.tolist(), g.internal.tolist())
    )
    lines.append(PARENTS_MARKER)
    lines.extend(
        f"{v} {p} {int(x)}"
        for v, (p, x) in enumerate(zip(g.parent.tolist(), g.is_clique_member.tolist()))
    )
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> GraphInstance:
    """Parse the text edge-list format."""
    lines = text.splitlines()
    if not lines:
        raise ParameterError("Empty graph file")
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = np.zeros((m, 2), dtype=np.int64)
        internal = np.zeros(m, dtype=bool)
        for i in range(m):
            u, v, kind = lines[1 + i].split()
            if kind not in ("internal", "external"):
                raise ParameterError(f"Unknown edge kind {kind!r} on line {i + 2}")
            edges[i] = (int(u), int(v))
            internal[i] = kind == "internal"
        if lines[1 + m].strip() != PARENTS_MARKER:
            raise ParameterError(f"Expected {PARENTS_MARKER!r} after the edge list")
        parent = np.zeros(n, dtype=np.int64)
        members = np.zeros(n, dtype=bool)
        for line in lines[2 + m: 2 + m + n]:
            v, p, x = (int(t) for t in line.split())
            parent[v] = p
            members[v] = bool(x)
    except (ValueError, IndexError) as e:
        raise ParameterError(f"Malformed graph file: {e}") from e
    return GraphInstance(n, edges, internal, parent, members)


def write_graph(g: GraphInstance, path: Path) -> Path:
    """Write a graph; identical graphs produce identical files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(g), encoding="utf-8")
    logger.info("Wrote graph with %d vertices and %d edges to %s", g.n_vertices, g.n_edges, path)
    return path


def read_graph(path: Path) -> GraphInstance:
    path = Path(path)
    if not path.exists():
        raise ParameterError(f"Graph file not found: {path}")
    return parse_graph(path.read_text(encoding="utf-8"))
