"""
Monte Carlo Campaigns.

Runs independent replicas, each driven by one child seed of the base seed,
and aggregates every reported metric into a MetricSummary (mean, sample
standard deviation, 95% Student t interval).

Usage:
    from src.sim.monte_carlo import simulate_diffusion

    summary = simulate_diffusion(regular(3), CliqueProfile.constant(0.0), pi=0.75,
                                 n=10_000, replicas=10, base_seed=42)
    print(summary["giant_fraction"].mean)
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Union

import numpy as np
from scipy import stats

from src.dist.degree import DegreeDistribution
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.graphgen.configuration import DEFAULT_MAX_TRIES, SimplePolicy
from src.graphgen.graph import GraphInstance
from src.graphgen.pipeline import generate_clustered_graph
from src.sim.percolation import bond_percolate_components, run_diffusion
from src.sim.seeds import CliqueCorrelatedSeeding, DegreeIndependentSeeding, SingleSeed
from src.sim.threshold import assign_thresholds, pivotal_seed, pivotal_set, run_threshold
from src.thresh.thresholds import ThresholdDistribution
from src.utils.errors import ParameterError
from src.utils.seeding import derive_seeds

logger = logging.getLogger(__name__)

CONFIDENCE = 0.95

ReplicaRun = Callable[[int], Mapping[str, float]]


# ============================================================================
# Aggregation
# ============================================================================

@dataclass(frozen=True)
class MetricSummary:
    """
    Aggregate of one metric over replicas.

    Attributes:
        mean: Sample mean
        std: Sample standard deviation (ddof=1)
        ci_lo: Lower end of the 95% confidence interval of the mean
        ci_hi: Upper end of the 95% confidence interval of the mean
        replicas: Number of replicas
    """

    mean: float
    std: float
    ci_lo: float
    ci_hi: float
    replicas: int

    @classmethod
    def from_samples(cls, samples) -> "MetricSummary":
        values = np.asarray(samples, dtype=float)
        r = int(values.size)
        if r < 2:
            raise ParameterError(f"A confidence interval needs at least 2 replicas, got {r}")
        mean = float(values.mean())
        std = float(values.std(ddof=1))
        half = float(stats.t.ppf(0.5 + CONFIDENCE / 2, df=r - 1)) * std / math.sqrt(r)
        return cls(mean=mean, std=std, ci_lo=mean - half, ci_hi=mean + half, replicas=r)

    def to_row(self) -> Dict[str, float]:
        return {
            "mean": self.mean,
            "std": self.std,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "replicas": self.replicas,
        }


def monte_carlo(run: ReplicaRun, replicas: int, base_seed: int) -> Dict[str, MetricSummary]:
    """
    Run ``replicas`` independent replicas and aggregate their metrics.

    Args:
        run: Maps a replica seed to {metric: value}; every replica must report
            the same metrics
        replicas: Number of replicas (>= 2)
        base_seed: Root of the replica seeds

    Returns:
        {metric: MetricSummary}, identical for identical base seeds

    Raises:
        ParameterError: Fewer than 2 replicas or inconsistent metric names
    """
    if replicas < 2:
        raise ParameterError(f"replicas must be >= 2, got {replicas}")
    samples: Dict[str, List[float]] = {}
    for i, seed in enumerate(derive_seeds(base_seed, replicas)):
        metrics = run(seed)
        if samples and set(metrics) != set(samples):
            raise ParameterError(f"Replica {i} reported metrics {sorted(metrics)}, expected {sorted(samples)}")
        for name, value in metrics.items():
            samples.setdefault(name, []).append(float(value))
        logger.debug("Replica %d/%d done: %s", i + 1, replicas, dict(metrics))

    summary = {name: MetricSummary.from_samples(values) for name, values in samples.items()}
    logger.info(
        "Monte Carlo finished: %d replicas, base_seed=%d, %s",
        replicas, base_seed, ", ".join(f"{k}={v.mean:.4f}" for k, v in summary.items()),
    )
    return summary


# ============================================================================
# Simulation Drivers
# ============================================================================

@dataclass(frozen=True)
class GraphPlan:
    """Graph ensemble shared by the drivers."""

    p: DegreeDistribution
    gamma: CliqueProfile
    n: int
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT
    max_tries: int = DEFAULT_MAX_TRIES

    def sample(self, seed: int) -> GraphInstance:
        return generate_clustered_graph(
            self.p, self.gamma, self.n, seed, simple_policy=self.simple_policy, max_tries=self.max_tries
        )


def _fraction(count: int, g: GraphInstance) -> float:
    return count / g.n_vertices if g.n_vertices else 0.0


def simulate_diffusion(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    n: int,
    replicas: int,
    base_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> Dict[str, MetricSummary]:
    """
    Largest and second-largest percolation clusters, as fractions of the substituted graph.

    Returns:
        Summaries of ``giant_fraction`` and ``second_fraction``
    """
    plan = GraphPlan(p, gamma, n, simple_policy, max_tries)

    def run(seed: int) -> Dict[str, float]:
        graph_seed, perc_seed = derive_seeds(seed, 2)
        g = plan.sample(graph_seed)
        perc = bond_percolate_components(g, pi, perc_seed)
        return {
            "giant_fraction": _fraction(perc.largest, g),
            "second_fraction": _fraction(perc.second, g),
        }

    return monte_carlo(run, replicas, base_seed)


def simulate_activation_diffusion(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    alpha: ActivationProfile,
    n: int,
    replicas: int,
    base_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> Dict[str, MetricSummary]:
    """
    Diffusion from a degree-independent random seed set.

    Returns:
        Summaries of ``active_fraction`` and ``seed_fraction``
    """
    plan = GraphPlan(p, gamma, n, simple_policy, max_tries)
    scheme = DegreeIndependentSeeding(alpha)

    def run(seed: int) -> Dict[str, float]:
        graph_seed, seed_seed, perc_seed = derive_seeds(seed, 3)
        g = plan.sample(graph_seed)
        seeds = scheme.draw(g, np.random.default_rng(seed_seed))
        result = run_diffusion(g, pi, seeds, perc_seed)
        return {"active_fraction": result.fraction, "seed_fraction": _fraction(len(seeds), g)}

    return monte_carlo(run, replicas, base_seed)


def simulate_cascade(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    n: int,
    replicas: int,
    base_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> Dict[str, MetricSummary]:
    """
    Pivotal set and cascades from a pivotal and from a uniformly random seed.

    A replica without pivotal vertices reports a cascade fraction of 0.

    Returns:
        Summaries of ``pivotal_fraction``, ``cascade_fraction`` and
        ``random_seed_fraction``
    """
    plan = GraphPlan(p, gamma, n, simple_policy, max_tries)

    def run(seed: int) -> Dict[str, float]:
        graph_seed, threshold_seed, pick_seed = derive_seeds(seed, 3)
        g = plan.sample(graph_seed)
        assignment = assign_thresholds(g, t, threshold_seed)
        rng = np.random.default_rng(pick_seed)
        pivotal = pivotal_set(g, assignment)
        cascade = run_threshold(g, assignment, pivotal_seed(pivotal, rng))
        random_run = run_threshold(g, assignment, SingleSeed().draw(g, rng))
        return {
            "pivotal_fraction": _fraction(pivotal.size, g),
            "cascade_fraction": cascade.fraction,
            "random_seed_fraction": random_run.fraction,
        }

    return monte_carlo(run, replicas, base_seed)


def simulate_activation_cascade(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    alpha: ActivationProfile,
    n: int,
    replicas: int,
    base_seed: int,
    simple_policy: Union[SimplePolicy, str] = SimplePolicy.REJECT,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> Dict[str, MetricSummary]:
    """
    Threshold cascade from a clique-correlated random seed set.

    Returns:
        Summaries of ``active_fraction`` and ``seed_fraction``
    """
    plan = GraphPlan(p, gamma, n, simple_policy, max_tries)
    scheme = CliqueCorrelatedSeeding(alpha)

    def run(seed: int) -> Dict[str, float]:
        graph_seed, threshold_seed, seed_seed = derive_seeds(seed, 3)
        g = plan.sample(graph_seed)
        assignment = assign_thresholds(g, t, threshold_seed)
        seeds = scheme.draw(g, np.random.default_rng(seed_seed))
        result = run_threshold(g, assignment, seeds)
        return {"active_fraction": result.fraction, "seed_fraction": _fraction(len(seeds), g)}

    return monte_carlo(run, replicas, base_seed)
