"""
Shared fixtures: small degree laws, hand-built clique gadgets and seeds.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from src.dist.degree import from_probs, poisson_shifted, regular
from src.dist.profiles import CliqueProfile
from src.graphgen.graph import GraphInstance


@pytest.fixture
def regular3():
    return regular(3)


@pytest.fixture
def mixed_law():
    """Degrees 1..4 with p_0 = 0."""
    return from_probs({1: 0.2, 2: 0.3, 3: 0.3, 4: 0.2}, name="mixed")


@pytest.fixture
def shifted_poisson():
    return poisson_shifted(2.0)


@pytest.fixture
def no_clustering():
    return CliqueProfile.constant(0.0)


@pytest.fixture
def triangle_gadget() -> GraphInstance:
    """
    Parent 0 is a 3-clique (vertices 0, 1, 2); parents 1..3 are plain
    vertices 3, 4, 5, each attached to one clique member.
    """
    edges = [(0, 3), (1, 4), (2, 5), (0, 1), (0, 2), (1, 2)]
    internal = [False, False, False, True, True, True]
    parent = [0, 0, 0, 1, 2, 3]
    members = [True, True, True, False, False, False]
    return GraphInstance.from_edges(6, edges, internal, parent, members)


@pytest.fixture
def square_gadget() -> GraphInstance:
    """
    Two 4-cliques (parents 0 and 1, vertices 0..3 and 4..7) joined by the
    external edge 3-4, plus plain vertices 8 (on 0) and 9 (on 5).
    """
    edges = [(3, 4), (0, 8), (5, 9)]
    internal = [False, False, False]
    for base in (0, 4):
        for i in range(4):
            for j in range(i + 1, 4):
                edges.append((base + i, base + j))
                internal.append(True)
    parent = [0, 0, 0, 0, 1, 1, 1, 1, 2, 3]
    members = [True] * 8 + [False, False]
    return GraphInstance.from_edges(10, edges, internal, parent, members)


@pytest.fixture
def rng():
    """Factory for seeded generators."""
    def make(seed: int = 0) -> np.random.Generator:
        return np.random.default_rng(seed)
    return make


@pytest.fixture
def project_root() -> Path:
    return Path(__file__).resolve().parents[1]
