import numpy as np
import pytest

from src.dist.degree import poisson_shifted
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.graphgen.graph import GraphInstance, component_labels
from src.graphgen.pipeline import generate_clustered_graph
from src.sim.census import two_stage_internal_percolation_census
from src.sim.percolation import (
    bond_percolate_components,
    run_diffusion,
    run_diffusion_transmission,
)
from src.sim.seeds import CliqueCorrelatedSeeding, DegreeIndependentSeeding, SeedSet, SingleSeed
from src.utils.errors import ParameterError


@pytest.fixture(scope="module")
def clustered_graph():
    return generate_clustered_graph(poisson_shifted(2.0), CliqueProfile.constant(0.3), 300, 11,
                                    simple_policy="reject")


# ============================================================================
# Seeds
# ============================================================================

def test_seed_set_is_sorted_and_unique():
    seeds = SeedSet(active=np.array([4, 1, 4]), scheme="single")
    assert seeds.active.tolist() == [1, 4]
    assert len(seeds) == 2
    assert seeds.mask(5).tolist() == [False, True, False, False, True]


def test_single_seed(triangle_gadget, rng):
    assert SingleSeed(vertex=4).draw(triangle_gadget, rng()).active.tolist() == [4]
    drawn = SingleSeed().draw(triangle_gadget, rng(3))
    assert len(drawn) == 1
    with pytest.raises(ParameterError):
        SingleSeed(vertex=6).draw(triangle_gadget, rng())


@pytest.mark.parametrize("alpha, expected", [(0.0, 0), (1.0, 6)])
def test_degree_independent_extremes(triangle_gadget, rng, alpha, expected):
    seeds = DegreeIndependentSeeding(ActivationProfile.constant(alpha)).draw(triangle_gadget, rng())
    assert len(seeds) == expected


def test_degree_independent_uses_vertex_degree(triangle_gadget, rng):
    alpha = ActivationProfile(values={3: 1.0}, default=0.0)
    seeds = DegreeIndependentSeeding(alpha).draw(triangle_gadget, rng())
    assert seeds.active.tolist() == [0, 1, 2]


def test_clique_correlated_seeds_whole_cliques(triangle_gadget, rng):
    scheme = CliqueCorrelatedSeeding(ActivationProfile.constant(0.5))
    sizes = set()
    for seed in range(40):
        active = set(scheme.draw(triangle_gadget, rng(seed)).active.tolist())
        sizes.add(len(active & {0, 1, 2}))
    assert sizes <= {0, 3}
    assert sizes == {0, 3}


# ============================================================================
# Percolation
# ============================================================================

def test_component_labels(triangle_gadget):
    labels = component_labels(6, triangle_gadget.edges[:3])
    assert labels[0] == labels[3]
    assert labels[0] != labels[1]
    assert len(set(labels.tolist())) == 3


def test_percolation_extremes(triangle_gadget):
    none = bond_percolate_components(triangle_gadget, 0.0, 0)
    assert (none.largest, none.second) == (1, 1)
    assert not none.kept.any()
    full = bond_percolate_components(triangle_gadget, 1.0, 0)
    assert (full.largest, full.second) == (6, 0)


def test_diffusion_extremes(triangle_gadget):
    seed = SeedSet(active=np.array([3]), scheme="single")
    assert run_diffusion(triangle_gadget, 1.0, seed, 0).final_active_count == 6
    assert run_diffusion(triangle_gadget, 0.0, seed, 0).active.tolist() == [False] * 3 + [True] + [False] * 2
    assert run_diffusion_transmission(triangle_gadget, 1.0, seed, 0).final_active_count == 6
    assert run_diffusion_transmission(triangle_gadget, 0.0, seed, 0).final_active_count == 1


def test_diffusion_reports_degrees(triangle_gadget):
    result = run_diffusion(triangle_gadget, 1.0, SeedSet(active=np.array([0]), scheme="single"), 0)
    assert result.per_degree_active == {1: 3, 3: 3}
    assert result.largest_component == 6
    assert result.fraction == 1.0


def test_invalid_pi(triangle_gadget):
    with pytest.raises(ParameterError):
        bond_percolate_components(triangle_gadget, -0.1, 0)
    with pytest.raises(ParameterError):
        run_diffusion_transmission(triangle_gadget, 1.1, SeedSet(active=np.array([0]), scheme="single"), 0)


def test_transmission_and_percolation_agree_on_average(clustered_graph):
    seed = SeedSet(active=np.array([0]), scheme="single")
    runs = 400
    by_percolation = np.mean([run_diffusion(clustered_graph, 0.6, seed, s).fraction for s in range(runs)])
    by_transmission = np.mean(
        [run_diffusion_transmission(clustered_graph, 0.6, seed, s).fraction for s in range(runs)]
    )
    assert by_percolation == pytest.approx(by_transmission, abs=0.07)


def test_diffusion_is_reproducible(clustered_graph):
    seed = SeedSet(active=np.array([5, 9]), scheme="single")
    first = run_diffusion(clustered_graph, 0.5, seed, 42)
    second = run_diffusion(clustered_graph, 0.5, seed, 42)
    assert np.array_equal(first.active, second.active)


# ============================================================================
# Internal percolation census
# ============================================================================

def test_census_extremes(triangle_gadget, square_gadget):
    assert two_stage_internal_percolation_census(triangle_gadget, 1.0, 0) == {(3, 3): 1}
    assert two_stage_internal_percolation_census(triangle_gadget, 0.0, 0) == {(3, 1): 3}
    assert two_stage_internal_percolation_census(square_gadget, 1.0, 0) == {(4, 4): 2}


def test_census_counts_cover_every_member(clustered_graph):
    census = two_stage_internal_percolation_census(clustered_graph, 0.5, 3)
    assert sum(k * count for (_d, k), count in census.items()) == int(clustered_graph.is_clique_member.sum())
    assert all(1 <= k <= d for d, k in census)


def test_census_without_cliques(triangle_gadget):
    plain = GraphInstance.from_edges(3, [(0, 1), (1, 2)])
    assert two_stage_internal_percolation_census(plain, 0.5, 0) == {}
    with pytest.raises(ParameterError):
        two_stage_internal_percolation_census(triangle_gadget, 2.0, 0)
