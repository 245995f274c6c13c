"""
Clique Substitution.

Each vertex i is replaced, independently with probability gamma_{d_i}, by a
d_i-clique whose members inherit parent i and take one of i's external
attachments each. A selected vertex of degree zero disappears.
"""
from __future__ import annotations

import logging

import numpy as np

from src.dist.profiles import CliqueProfile
from src.graphgen.graph import GraphInstance
from src.utils.errors import ParameterError

logger = logging.getLogger(__name__)


def _half_edge_ranks(owner: np.ndarray) -> np.ndarray:
    # position of each half-edge among its owner's half-edges
    order = np.argsort(owner, kind="stable")
    sorted_owner = owner[order]
    first = np.searchsorted(sorted_owner, sorted_owner, side="left")
    ranks = np.empty_like(owner)
    ranks[order] = np.arange(owner.size) - first
    return ranks


def _clique_edges(bases: np.ndarray, d: int) -> np.ndarray:
    iu, ju = np.triu_indices(d, 1)
    u = (bases[:, None] + iu[None, :]).ravel()
    v = (bases[:, None] + ju[None, :]).ravel()
    return np.stack([u, v], axis=1)


def clique_substitute(g: GraphInstance, profile: CliqueProfile, rng_seed: int) -> GraphInstance:
    """
    Replace vertices by cliques.

    Members of parent i get contiguous ids. External edges come first in the
    output edge array, in input order, followed by the internal edges.

    Args:
        g: Graph without clique members
        profile: Substitution probabilities gamma_r
        rng_seed: Seed

    Returns:
        The substituted graph
    """
    if np.any(g.is_clique_member):
        raise ParameterError("clique_substitute expects a graph without clique members")

    degrees = g.degrees()
    rng = np.random.default_rng(rng_seed)
    gamma = profile.as_array(int(degrees.max()) if degrees.size else 0)
    selected = rng.random(g.n_vertices) < gamma[degrees]

    sizes = np.where(selected, degrees, 1)
    bases = np.zeros(g.n_vertices, dtype=np.int64)
    if g.n_vertices:
        np.cumsum(sizes[:-1], out=bases[1:])
    n_new = int(sizes.sum())

    owner = g.edges.ravel()
    offsets = np.where(selected[owner], _half_edge_ranks(owner), 0)
    external = (bases[owner] + offsets).reshape(-1, 2)

    internal_blocks = [external[:0]]
    for d in np.unique(degrees[selected & (degrees >= 2)]):
        internal_blocks.append(_clique_edges(bases[selected & (degrees == d)], int(d)))
    internal = np.concatenate(internal_blocks, axis=0)

    edges = np.concatenate([external, internal], axis=0)
    flags = np.concatenate([np.zeros(len(external), dtype=bool), np.ones(len(internal), dtype=bool)])

    removed = int(np.count_nonzero(selected & (degrees == 0)))
    metadata = dict(g.metadata)
    metadata.update(
        substituted=int(np.count_nonzero(selected & (degrees > 0))),
        removed_isolated=removed,
        gamma=profile.describe(),
    )
    logger.debug(
        "Clique substitution: %d of %d vertices replaced, %d isolated removed, n=%d",
        metadata["substituted"], g.n_vertices, removed, n_new,
    )
    return GraphInstance(
        n_vertices=n_new,
        edges=edges,
        internal=flags,
        parent=np.repeat(g.parent, sizes),
        is_clique_member=np.repeat(selected, sizes),
        metadata=metadata,
    )
