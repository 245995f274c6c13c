"""
Clustering tuner: forward laws of the substituted graph and their inversion.
"""
from __future__ import annotations

from src.tuner.clustering import c2_max, c2_of_gamma, c_max, c_of_gamma, check_condition_two
from src.tuner.forward import (
    biased_clustering_coefficient,
    clustering_coefficient,
    gamma_tilde,
    tilde_distribution,
)
from src.tuner.tune import TuneResult, tune, tune_biased

__all__ = [
    "TuneResult",
    "biased_clustering_coefficient",
    "c2_max",
    "c2_of_gamma",
    "c_max",
    "c_of_gamma",
    "check_condition_two",
    "clustering_coefficient",
    "gamma_tilde",
    "tilde_distribution",
    "tune",
    "tune_biased",
]
