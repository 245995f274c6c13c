"""
Monte Carlo engine: bond percolation, threshold dynamics, seeding schemes,
the internal percolation census, the projection coupling and replica
aggregation.
"""
from __future__ import annotations

from src.sim.census import two_stage_internal_percolation_census
from src.sim.coupling import coupling_check, projected_thresholds
from src.sim.monte_carlo import (
    MetricSummary,
    monte_carlo,
    simulate_activation_cascade,
    simulate_activation_diffusion,
    simulate_cascade,
    simulate_diffusion,
)
from src.sim.percolation import (
    PercolationResult,
    RunResult,
    bond_percolate_components,
    run_diffusion,
    run_diffusion_transmission,
    spread_by_transmission,
)
from src.sim.seeds import CliqueCorrelatedSeeding, DegreeIndependentSeeding, SeedSet, SingleSeed
from src.sim.threshold import (
    ThresholdAssignment,
    assign_thresholds,
    pivotal_seed,
    pivotal_set,
    run_threshold,
)

__all__ = [
    "CliqueCorrelatedSeeding",
    "DegreeIndependentSeeding",
    "MetricSummary",
    "PercolationResult",
    "RunResult",
    "SeedSet",
    "SingleSeed",
    "ThresholdAssignment",
    "assign_thresholds",
    "bond_percolate_components",
    "coupling_check",
    "monte_carlo",
    "pivotal_seed",
    "pivotal_set",
    "projected_thresholds",
    "run_diffusion",
    "run_diffusion_transmission",
    "run_threshold",
    "simulate_activation_cascade",
    "simulate_activation_diffusion",
    "simulate_cascade",
    "simulate_diffusion",
    "spread_by_transmission",
]
