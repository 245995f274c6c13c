"""
Experiment Presets.

Named parameter sweeps producing plot-ready CSV tables. Analytic curves are
always computed; ``simulate=True`` adds Monte Carlo overlays where a preset
supports them.

Shared choices:
    - power laws p~_r ~ r^(-tau) e^(-r/kappa), kappa = 50 truncated at r_max = 500
      (configurable through simulation.kappa and simulation.r_max)
    - tau in {2.9, 2.5, 1.81, 1.3, 1, 0.1}
    - contagion parameters q in {0.12, 0.15}
    - infection probability pi = 0.22 for epidemic sizes
    - regular degrees d in {3, 4, 5, 6}
    - Poisson family with lambda in [0.5, 10]
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np

from src.dist.degree import DegreeDistribution, poisson, poisson_shifted, power_law_cutoff, regular
from src.dist.profiles import CliqueProfile
from src.graphgen.configuration import SimplePolicy
from src.perc.diffusion import diffusion_giant_fraction, diffusion_pi_c
from src.sim.monte_carlo import MetricSummary, simulate_cascade, simulate_diffusion
from src.thresh.cascade import contagion_qc, contagion_report
from src.thresh.thresholds import contagion_thresholds
from src.tuner.clustering import c2_max, c_max
from src.tuner.forward import clustering_coefficient, tilde_distribution
from src.tuner.tune import tune
from src.utils.errors import ParameterError
from src.utils.seeding import derive_seeds

logger = logging.getLogger(__name__)

PI_EPIDEMIC = 0.22
REGULAR_DEGREES = (3, 4, 5, 6)
DIFFUSION_TAUS = (2.9, 2.5, 1.81, 1.3)
CONTAGION_TAUS = (2.5, 1.81, 0.1)
CASCADE_TAUS = (2.5, 1.81, 1.3, 1.0)
GAMMA_GRID = tuple(np.round(np.linspace(0.0, 1.0, 21), 10))
C_POINTS = 21


@dataclass(frozen=True)
class ExperimentContext:
    """
    Run-wide settings for a preset.

    Attributes:
        simulate: Add Monte Carlo overlays
        n: Vertices before substitution in simulations
        replicas: Replicas per simulated point
        base_seed: Root seed; every simulated point gets its own child seed
        simple_policy: Policy for regular-graph simulations (heavy-tailed
            laws always use erase)
        max_tries: Reject-policy attempt budget
        grid_points: Fixed-point scan resolution
        xtol: Fixed-point refinement tolerance
        eps: Regularity neighbourhood
        threshold_xtol: Bisection tolerance of pi_c
        debug_monotone: Grid-check the pi_c objective
        kappa: Exponential cutoff of the preset power laws
        r_max: Truncation degree of the preset power laws
    """

    simulate: bool = False
    n: int = 100_000
    replicas: int = 50
    base_seed: int = 42
    simple_policy: str = SimplePolicy.REJECT.value
    max_tries: int = 1000
    grid_points: int = 10_000
    xtol: float = 1e-10
    eps: float = 1e-4
    threshold_xtol: float = 1e-10
    debug_monotone: bool = False
    kappa: float = 50.0
    r_max: int = 500

    def numerics(self) -> Dict[str, float]:
        return {"grid_points": self.grid_points, "xtol": self.xtol, "eps": self.eps}

    def metadata(self) -> Dict[str, object]:
        meta: Dict[str, object] = {"simulate": self.simulate}
        if self.simulate:
            meta.update(n=self.n, replicas=self.replicas, base_seed=self.base_seed)
        return meta


@dataclass
class Table:
    """One CSV file of an experiment bundle."""

    filename: str
    rows: List[Dict[str, object]]
    metadata: Dict[str, object] = field(default_factory=dict)
    fieldnames: Optional[Sequence[str]] = None


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    run: Callable[[ExperimentContext], List[Table]]


def _power_law(ctx: ExperimentContext, tau: float) -> DegreeDistribution:
    return power_law_cutoff(tau, kappa=ctx.kappa, r_max=ctx.r_max)


def _law_meta(ctx: ExperimentContext) -> Dict[str, object]:
    return {"kappa": ctx.kappa, "r_max": ctx.r_max}


def _c_grid(p_tilde: DegreeDistribution, points: int = C_POINTS) -> np.ndarray:
    grid = np.linspace(0.0, c_max(p_tilde), points)
    grid[-1] = c_max(p_tilde)
    return grid


def _overlay(summary: Mapping[str, MetricSummary], prefix: str = "sim_") -> Dict[str, object]:
    row: Dict[str, object] = {}
    for metric, s in summary.items():
        row[f"{prefix}{metric}"] = s.mean
        row[f"{prefix}{metric}_ci_lo"] = s.ci_lo
        row[f"{prefix}{metric}_ci_hi"] = s.ci_hi
    return row


# ============================================================================
# Clustering
# ============================================================================

def fig_clust_range(ctx: ExperimentContext) -> List[Table]:
    """Reachable global and average local clustering along the power-law family."""
    rows = []
    for tau in np.round(np.arange(0.1, 3.01, 0.1), 10):
        p_tilde = _power_law(ctx, float(tau))
        rows.append({
            "tau": float(tau),
            "mean_degree": p_tilde.mean,
            "c_max": c_max(p_tilde),
            "c2_max": c2_max(p_tilde),
        })
    return [Table("fig_clust_range.csv", rows, _law_meta(ctx))]


# ============================================================================
# Diffusion
# ============================================================================

def fig_diff_regular(ctx: ExperimentContext) -> List[Table]:
    """pi_c against the clustering of regular graphs."""
    rows = []
    for d in REGULAR_DEGREES:
        p = regular(d)
        for gamma in GAMMA_GRID:
            profile = CliqueProfile.constant(float(gamma))
            threshold = diffusion_pi_c(
                p, profile, xtol=ctx.threshold_xtol, check_monotone=ctx.debug_monotone
            )
            rows.append({
                "d": d,
                "gamma": float(gamma),
                "C": clustering_coefficient(p, profile),
                "pi_c": threshold.pi_c,
            })
    return [Table("fig_diff_regular.csv", rows)]


def fig_diff_size(ctx: ExperimentContext) -> List[Table]:
    """Giant-cluster share at pi = 0.22 against the clustering of regular graphs."""
    points = [(d, float(g)) for d in REGULAR_DEGREES for g in GAMMA_GRID]
    seeds = derive_seeds(ctx.base_seed, len(points))
    rows = []
    for (d, gamma), seed in zip(points, seeds):
        p = regular(d)
        profile = CliqueProfile.constant(gamma)
        report = diffusion_giant_fraction(p, profile, PI_EPIDEMIC, **ctx.numerics())
        row = {
            "d": d,
            "gamma": gamma,
            "C": clustering_coefficient(p, profile),
            "pi": PI_EPIDEMIC,
            "pi_c": report.pi_c,
            "giant_fraction": report.giant_fraction,
        }
        # overlays on every fifth gamma
        if ctx.simulate and round(gamma * 20) % 5 == 0:
            summary = simulate_diffusion(
                p, profile, PI_EPIDEMIC, ctx.n, ctx.replicas, seed,
                simple_policy=ctx.simple_policy, max_tries=ctx.max_tries,
            )
            row.update(_overlay(summary))
        rows.append(row)
    return [Table("fig_diff_size.csv", rows, {"pi": PI_EPIDEMIC})]


def fig_diff_powerlaw(ctx: ExperimentContext) -> List[Table]:
    """pi_c against tuned clustering for power-law target laws."""
    rows = []
    for tau in DIFFUSION_TAUS:
        p_tilde = _power_law(ctx, tau)
        for C in _c_grid(p_tilde):
            tuned = tune(p_tilde, float(C))
            threshold = diffusion_pi_c(
                tuned.p, tuned.profile, xtol=ctx.threshold_xtol, check_monotone=ctx.debug_monotone
            )
            rows.append({
                "tau": tau,
                "mean_degree": p_tilde.mean,
                "C": float(C),
                "gamma": tuned.gamma,
                "pi_c": threshold.pi_c,
                "finite": threshold.finite,
            })
    return [Table("fig_diff_powerlaw.csv", rows, _law_meta(ctx))]


# ============================================================================
# Contagion
# ============================================================================

def fig_cont_thresholds(ctx: ExperimentContext) -> List[Table]:
    """
    q_c without clustering (C = 0) and with maximal clustering (C = c_max)
    for the power-law and shifted-Poisson target families.
    """
    tables = []
    families = [
        ("powerlaw", "tau", [float(t) for t in np.round(np.arange(0.1, 3.01, 0.1), 10)],
         lambda tau: _power_law(ctx, tau)),
        ("poisson_shifted", "lambda", [float(x) for x in np.round(np.arange(0.05, 10.001, 0.05), 10)],
         poisson_shifted),
    ]
    for family, key, values, build in families:
        rows = []
        for value in values:
            p_tilde = build(value)
            flat = contagion_qc(p_tilde)
            clustered = contagion_qc(tune(p_tilde, c_max(p_tilde)).p)
            rows.append({
                key: value,
                "mean_degree": p_tilde.mean,
                "q_c_unclustered": flat.q_c,
                "q_c_clustered": clustered.q_c,
            })
        tables.append(Table(f"fig_cont_thresholds_{family}.csv", rows, {"family": family}))
    return tables


def fig_cont_vs_C(ctx: ExperimentContext) -> List[Table]:
    """q_c against tuned clustering for three power-law target laws."""
    rows = []
    for tau in CONTAGION_TAUS:
        p_tilde = _power_law(ctx, tau)
        for C in _c_grid(p_tilde):
            tuned = tune(p_tilde, float(C))
            rows.append({
                "tau": tau,
                "mean_degree": p_tilde.mean,
                "C": float(C),
                "gamma": tuned.gamma,
                "q_c": contagion_qc(tuned.p).q_c,
            })
    return [Table("fig_cont_vs_C.csv", rows, _law_meta(ctx))]


def fig_cascade_sizes(ctx: ExperimentContext) -> List[Table]:
    """
    Pivotal and cascade shares at q = 0.15 along a Poisson family: Poisson p
    with gamma = 0.2 against the unclustered graph with the same degree law.
    """
    q, gamma_value = 0.15, 0.2
    lambdas = [float(x) for x in np.round(np.arange(0.5, 10.001, 0.25), 10)]
    seeds = derive_seeds(ctx.base_seed, 2 * len(lambdas))
    rows = []
    for i, lam in enumerate(lambdas):
        p = poisson(lam)
        clustered = CliqueProfile.constant(gamma_value)
        cases = [
            ("clustered", p, clustered),
            ("unclustered", tilde_distribution(p, clustered), CliqueProfile.constant(0.0)),
        ]
        for j, (label, law, profile) in enumerate(cases):
            t = contagion_thresholds(q, law.support_max)
            report = contagion_report(law, profile, t, q=q, **ctx.numerics())
            row = {
                "lambda": lam,
                "graph": label,
                "mean_degree": tilde_distribution(law, profile).mean,
                "C": clustering_coefficient(law, profile),
                "pivotal_fraction": report.pivotal_fraction,
                "cascade_fraction": report.cascade_fraction,
                "cascade_possible": report.cascade_possible,
            }
            if ctx.simulate:
                summary = simulate_cascade(
                    law, profile, t, ctx.n, ctx.replicas, seeds[2 * i + j],
                    simple_policy=SimplePolicy.ERASE, max_tries=ctx.max_tries,
                )
                row.update(_overlay(summary))
            rows.append(row)
    meta = {"q": q, "gamma": gamma_value}
    if ctx.simulate:
        meta["simple_policy"] = SimplePolicy.ERASE.value
    return [Table("fig_cascade_sizes.csv", rows, meta)]


def fig_cascade_vs_C(ctx: ExperimentContext) -> List[Table]:
    """Cascade share at q = 0.12 against tuned clustering for power-law targets."""
    q = 0.12
    rows = []
    for tau in CASCADE_TAUS:
        p_tilde = _power_law(ctx, tau)
        for C in _c_grid(p_tilde):
            tuned = tune(p_tilde, float(C))
            t = contagion_thresholds(q, tuned.p.support_max)
            report = contagion_report(tuned.p, tuned.profile, t, q=q, **ctx.numerics())
            rows.append({
                "tau": tau,
                "mean_degree": p_tilde.mean,
                "C": float(C),
                "gamma": tuned.gamma,
                "pivotal_fraction": report.pivotal_fraction,
                "cascade_fraction": report.cascade_fraction,
            })
    return [Table("fig_cascade_vs_C.csv", rows, {"q": q, **_law_meta(ctx)})]


PRESETS: Dict[str, Preset] = {
    preset.name: preset
    for preset in (
        Preset("fig_clust_range", "Reachable C and C2 along the power-law family", fig_clust_range),
        Preset("fig_diff_regular", "Diffusion threshold vs clustering, regular graphs", fig_diff_regular),
        Preset("fig_diff_size", "Epidemic size at pi=0.22 vs clustering, regular graphs", fig_diff_size),
        Preset("fig_diff_powerlaw", "Diffusion threshold vs clustering, power laws", fig_diff_powerlaw),
        Preset("fig_cont_thresholds", "Contagion threshold at C=0 and C=c_max", fig_cont_thresholds),
        Preset("fig_cont_vs_C", "Contagion threshold vs clustering, power laws", fig_cont_vs_C),
        Preset("fig_cascade_sizes", "Pivotal and cascade sizes, q=0.15, Poisson family", fig_cascade_sizes),
        Preset("fig_cascade_vs_C", "Cascade size vs clustering, q=0.12, power laws", fig_cascade_vs_C),
    )
}


def run_experiment(name: str, ctx: ExperimentContext) -> List[Table]:
    """
    Run a preset by name.

    Raises:
        ParameterError: Unknown preset
    """
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ParameterError(f"Unknown experiment {name!r} (see list-experiments)") from None
    logger.info("Running experiment %s (simulate=%s)", name, ctx.simulate)
    tables = preset.run(ctx)
    for table in tables:
        table.metadata = {"experiment": name, **ctx.metadata(), **table.metadata}
    return tables
