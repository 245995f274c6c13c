"""
Clustered Graph Pipeline.

Degree sequence -> configuration matching -> clique substitution, each step
seeded from its own child of the caller's seed.
"""
from __future__ import annotations

import logging
from typing import Union

from src.dist.degree import DegreeDistribution
from src.dist.profiles import CliqueProfile
from src.graphgen.cliques import clique_substitute
from src.graphgen.configuration import DEFAULT_MAX_TRIES, SimplePolicy, configuration_match
from src.graphgen.graph import GraphInstance
from src.graphgen.sequence import sample_degree_sequence
from src.utils.seeding import derive_seeds

logger = logging.getLogger(__name__)


def generate_base_graph(
    p: DegreeDistribution,
    n: int,
    rng_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> GraphInstance:
    """Configuration-model graph on n vertices with degree law p."""
    seq_seed, match_seed = derive_seeds(rng_seed, 2)
    seq = sample_degree_sequence(p, n, seq_seed)
    return configuration_match(seq, match_seed, simple_policy=simple_policy, max_tries=max_tries)


def generate_clustered_graph(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    n: int,
    rng_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> GraphInstance:
    """
    Sample a clique-substituted configuration-model graph.

    Args:
        p: Degree law of the pre-substitution graph
        gamma: Substitution probabilities
        n: Number of pre-substitution vertices
        rng_seed: Seed
        simple_policy: Loop/parallel-edge policy of the matching step
        max_tries: Reject-policy attempt budget

    Returns:
        GraphInstance
    """
    base_seed, clique_seed = derive_seeds(rng_seed, 2)
    base = generate_base_graph(p, n, base_seed, simple_policy=simple_policy, max_tries=max_tries)
    g = clique_substitute(base, gamma, clique_seed)
    logger.info(
        "Generated clustered graph: p=%s, gamma=%s, n=%d -> %d vertices, %d edges",
        p.name, gamma.describe(), n, g.n_vertices, g.n_edges,
    )
    return g
