"""
Large-graph checks of the asymptotic predictions.

Run with: pytest -m slow
"""
import math

import numpy as np
import pytest

from src.dist.degree import from_probs, poisson_shifted, power_law_cutoff, regular
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.graphgen.pipeline import generate_clustered_graph
from src.graphgen.stats import empirical_clustering, empirical_degree_hist
from src.perc.diffusion import diffusion_activation_fraction, diffusion_giant_fraction, diffusion_pi_c
from src.perc.gilbert import gilbert_table
from src.sim.census import two_stage_internal_percolation_census
from src.sim.coupling import coupling_check
from src.sim.monte_carlo import (
    simulate_activation_cascade,
    simulate_activation_diffusion,
    simulate_cascade,
    simulate_diffusion,
)
from src.thresh.cascade import activation_cascade_fraction, contagion_report
from src.thresh.thresholds import constant_thresholds, contagion_thresholds
from src.tuner.forward import biased_clustering_coefficient, clustering_coefficient, tilde_distribution

pytestmark = pytest.mark.slow

N = 50_000
REPLICAS = 10


def test_giant_cluster_matches_prediction():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.3)
    predicted = diffusion_giant_fraction(p, gamma, 0.6, grid_points=4000).giant_fraction
    summary = simulate_diffusion(p, gamma, 0.6, N, REPLICAS, base_seed=1)
    assert summary["giant_fraction"].mean == pytest.approx(predicted, abs=0.02)
    assert summary["second_fraction"].mean < 0.01


def test_regular_epidemic_size_matches_prediction():
    p = regular(4)
    gamma = CliqueProfile.constant(1.0)
    predicted = diffusion_giant_fraction(p, gamma, 0.6, grid_points=4000).giant_fraction
    summary = simulate_diffusion(p, gamma, 0.6, N, REPLICAS, base_seed=2)
    assert summary["giant_fraction"].mean == pytest.approx(predicted, abs=0.02)


def test_cascade_matches_prediction():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.2)
    t = contagion_thresholds(0.15, p.support_max)
    report = contagion_report(p, gamma, t, q=0.15, grid_points=4000)
    summary = simulate_cascade(p, gamma, t, N, REPLICAS, base_seed=3, simple_policy="erase")
    assert summary["pivotal_fraction"].mean == pytest.approx(report.pivotal_fraction, abs=0.02)
    assert summary["cascade_fraction"].mean == pytest.approx(report.cascade_fraction, abs=0.02)


def test_clustering_matches_forward_formula():
    p = from_probs({1: 0.2, 3: 0.3, 4: 0.3, 6: 0.2})
    gamma = CliqueProfile.constant(0.5)
    g = generate_clustered_graph(p, gamma, N, 4, simple_policy="reject")
    assert empirical_clustering(g).c == pytest.approx(clustering_coefficient(p, gamma), abs=0.01)


def test_census_concentrates_on_component_law():
    p = from_probs({2: 0.3, 3: 0.4, 5: 0.3})
    gamma = CliqueProfile.constant(0.6)
    pi = 0.4
    g = generate_clustered_graph(p, gamma, N, 5, simple_policy="multigraph")
    census = two_stage_internal_percolation_census(g, pi, 6)
    n_original = N - g.metadata["removed_isolated"]
    table = gilbert_table(5, pi)
    for d in (2, 3, 5):
        for k in range(1, d + 1):
            expected = (d / k) * table.prob(d, k) * p.pmf(d) * gamma.at(d)
            observed = census.get((d, k), 0) / n_original
            sigma = math.sqrt(max(expected, 1e-12) / n_original * (d / k))
            assert abs(observed - expected) <= 3 * sigma + 1e-4, (d, k)


def test_coupling_on_many_instances():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.5)
    t = contagion_thresholds(0.2, p.support_max)
    results = [
        coupling_check(generate_clustered_graph(p, gamma, 500, seed, simple_policy="reject"), t, gamma,
                       rng_seed=seed)
        for seed in range(200)
    ]
    assert all(results)


# ============================================================================
# Degree law and clustering of the substituted graph
# ============================================================================

ENSEMBLES = [
    pytest.param(regular(4), 0.5, id="regular4"),
    pytest.param(poisson_shifted(2.0), 0.3, id="poisson_shifted"),
    pytest.param(from_probs({1: 0.2, 3: 0.3, 4: 0.3, 6: 0.2}), 0.7, id="mixture"),
    pytest.param(power_law_cutoff(2.8, kappa=10.0, r_max=60), 0.4, id="powerlaw"),
]


@pytest.fixture(scope="module")
def ensemble_graphs():
    cache = {}

    def sample(p, gamma):
        key = (p.name, gamma)
        if key not in cache:
            cache[key] = generate_clustered_graph(p, CliqueProfile.constant(gamma), N, 8, simple_policy="erase")
        return cache[key]

    return sample


@pytest.mark.parametrize("p, gamma", ENSEMBLES)
def test_degree_histogram_matches_substituted_law(ensemble_graphs, p, gamma):
    g = ensemble_graphs(p, gamma)
    empirical = empirical_degree_hist(g)
    expected = tilde_distribution(p, CliqueProfile.constant(gamma))
    r_max = max(empirical.support_max, expected.support_max)
    distance = 0.5 * np.abs(empirical.padded(r_max) - expected.padded(r_max)).sum()
    assert distance < 0.01


@pytest.mark.parametrize("p, gamma", ENSEMBLES)
def test_both_clustering_coefficients_match(ensemble_graphs, p, gamma):
    g = ensemble_graphs(p, gamma)
    profile = CliqueProfile.constant(gamma)
    stats = empirical_clustering(g)
    assert stats.c == pytest.approx(clustering_coefficient(p, profile), abs=0.01)
    assert stats.c2 == pytest.approx(biased_clustering_coefficient(p, profile), abs=0.01)


# ============================================================================
# Diffusion around the threshold
# ============================================================================

@pytest.mark.parametrize("offset", [-0.1, 0.1, None])
def test_regular_giant_fraction_around_threshold(offset):
    p = regular(3)
    gamma = CliqueProfile.constant(0.0)
    pi_c = diffusion_pi_c(p, gamma).pi_c
    pi = 0.75 if offset is None else pi_c + offset
    predicted = diffusion_giant_fraction(p, gamma, pi, grid_points=4000).giant_fraction
    summary = simulate_diffusion(p, gamma, pi, N, REPLICAS, base_seed=7, simple_policy="erase")
    assert summary["giant_fraction"].mean == pytest.approx(predicted, abs=0.02)
    if pi < pi_c:
        assert predicted == 0.0
        assert summary["giant_fraction"].mean < 0.01


# ============================================================================
# Seeded processes
# ============================================================================

def test_seeded_diffusion_matches_prediction():
    p = regular(3)
    gamma = CliqueProfile.constant(0.5)
    alpha = ActivationProfile.constant(0.05)
    predicted = diffusion_activation_fraction(p, gamma, 0.3, alpha, grid_points=4000).fraction
    summary = simulate_activation_diffusion(p, gamma, 0.3, alpha, N, REPLICAS, base_seed=9)
    assert summary["active_fraction"].mean == pytest.approx(predicted, abs=0.02)


def test_seeded_cascade_matches_prediction():
    p = regular(4)
    gamma = CliqueProfile.constant(0.5)
    alpha = ActivationProfile.constant(0.12)
    t = constant_thresholds(2, 4)
    predicted = activation_cascade_fraction(p, gamma, t, alpha, grid_points=4000).fraction
    summary = simulate_activation_cascade(p, gamma, t, alpha, N, REPLICAS, base_seed=10, simple_policy="erase")
    assert summary["active_fraction"].mean == pytest.approx(predicted, abs=0.02)


# ============================================================================
# Cascades
# ============================================================================

def test_random_seed_stays_local_without_cascade_condition():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.2)
    t = contagion_thresholds(0.35, p.support_max)
    assert not contagion_report(p, gamma, t, q=0.35).cascade_possible
    summary = simulate_cascade(p, gamma, t, 30_000, REPLICAS, base_seed=11, simple_policy="erase")
    assert summary["random_seed_fraction"].mean < 0.01


def test_full_substitution_cascade_equals_pivotal_set():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(1.0)
    t = contagion_thresholds(0.15, p.support_max)
    report = contagion_report(p, gamma, t, q=0.15, grid_points=4000)
    assert report.cascade_fraction == pytest.approx(report.pivotal_fraction, abs=1e-6)
    summary = simulate_cascade(p, gamma, t, N, REPLICAS, base_seed=12, simple_policy="erase")
    assert summary["pivotal_fraction"].mean == pytest.approx(report.pivotal_fraction, abs=0.02)
    assert summary["cascade_fraction"].mean == pytest.approx(report.pivotal_fraction, abs=0.02)
