import math

import pytest
from scipy import stats

from src.dist.degree import from_probs
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.sim.monte_carlo import (
    GraphPlan,
    MetricSummary,
    monte_carlo,
    simulate_activation_cascade,
    simulate_activation_diffusion,
    simulate_cascade,
    simulate_diffusion,
)
from src.thresh.thresholds import contagion_thresholds
from src.utils.errors import ParameterError

SMALL_LAW = from_probs({1: 0.2, 2: 0.3, 3: 0.3, 4: 0.2})
GAMMA = CliqueProfile.constant(0.3)


def test_summary_uses_student_t_interval():
    summary = MetricSummary.from_samples([1.0, 2.0, 3.0])
    half = stats.t.ppf(0.975, df=2) / math.sqrt(3)
    assert summary.mean == pytest.approx(2.0)
    assert summary.std == pytest.approx(1.0)
    assert summary.ci_lo == pytest.approx(2.0 - half)
    assert summary.ci_hi == pytest.approx(2.0 + half)
    assert summary.to_row()["replicas"] == 3


def test_summary_needs_two_samples():
    with pytest.raises(ParameterError):
        MetricSummary.from_samples([0.5])


def test_monte_carlo_calls_every_replica(mocker):
    run = mocker.Mock(return_value={"fraction": 0.25})
    summary = monte_carlo(run, replicas=4, base_seed=9)
    assert run.call_count == 4
    assert summary["fraction"].mean == pytest.approx(0.25)
    assert summary["fraction"].std == 0.0
    seeds = [call.args[0] for call in run.call_args_list]
    assert len(set(seeds)) == 4


def test_monte_carlo_rejects_inconsistent_metrics(mocker):
    run = mocker.Mock(side_effect=[{"a": 1.0}, {"b": 2.0}])
    with pytest.raises(ParameterError):
        monte_carlo(run, replicas=2, base_seed=0)


def test_monte_carlo_needs_two_replicas(mocker):
    with pytest.raises(ParameterError):
        monte_carlo(mocker.Mock(), replicas=1, base_seed=0)


def test_graph_plan_is_deterministic():
    plan = GraphPlan(SMALL_LAW, GAMMA, 150)
    first, second = plan.sample(4), plan.sample(4)
    assert (first.edges == second.edges).all()


# ============================================================================
# Drivers
# ============================================================================

def test_diffusion_driver_is_reproducible():
    first = simulate_diffusion(SMALL_LAW, GAMMA, 0.8, 200, replicas=3, base_seed=5)
    second = simulate_diffusion(SMALL_LAW, GAMMA, 0.8, 200, replicas=3, base_seed=5)
    assert set(first) == {"giant_fraction", "second_fraction"}
    assert first == second
    assert 0.0 < first["giant_fraction"].mean <= 1.0


def test_activation_diffusion_driver():
    summary = simulate_activation_diffusion(
        SMALL_LAW, GAMMA, 0.0, ActivationProfile.constant(1.0), 100, replicas=2, base_seed=1
    )
    assert summary["active_fraction"].mean == pytest.approx(1.0)
    assert summary["seed_fraction"].mean == pytest.approx(1.0)


def test_cascade_driver_metrics():
    summary = simulate_cascade(SMALL_LAW, GAMMA, contagion_thresholds(0.3, 4), 200, replicas=2, base_seed=2)
    assert set(summary) == {"pivotal_fraction", "cascade_fraction", "random_seed_fraction"}
    assert summary["pivotal_fraction"].mean <= summary["cascade_fraction"].mean


def test_activation_cascade_driver_without_seeds():
    summary = simulate_activation_cascade(
        SMALL_LAW, GAMMA, contagion_thresholds(0.3, 4), ActivationProfile.constant(0.0), 100,
        replicas=2, base_seed=3,
    )
    assert summary["active_fraction"].mean == 0.0
    assert summary["seed_fraction"].mean == 0.0
