"""
Graph generation: configuration model, clique substitution, projection and
empirical statistics.
"""
from __future__ import annotations

from src.dist.profiles import CliqueProfile
from src.graphgen.cliques import clique_substitute
from src.graphgen.configuration import SimplePolicy, configuration_match
from src.graphgen.graph import GraphInstance, read_graph, write_graph
from src.graphgen.pipeline import generate_base_graph, generate_clustered_graph
from src.graphgen.projection import ProjectionResult, project
from src.graphgen.sequence import DegreeSequence, sample_degree_sequence
from src.graphgen.stats import ClusteringStats, empirical_clustering, empirical_degree_hist

__all__ = [
    "CliqueProfile",
    "ClusteringStats",
    "DegreeSequence",
    "GraphInstance",
    "ProjectionResult",
    "SimplePolicy",
    "clique_substitute",
    "configuration_match",
    "empirical_clustering",
    "empirical_degree_hist",
    "generate_base_graph",
    "generate_clustered_graph",
    "project",
    "read_graph",
    "sample_degree_sequence",
    "write_graph",
]
