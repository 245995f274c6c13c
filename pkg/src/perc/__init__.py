"""
Diffusion analytics: Gilbert probabilities, the derived fragment law, the
diffusion threshold and giant/active fractions.
"""
from __future__ import annotations

from src.perc.derived import DerivedLaw, derived_law
from src.perc.diffusion import (
    ActivationReport,
    DiffusionReport,
    DiffusionThreshold,
    diffusion_activation_fraction,
    diffusion_giant_fraction,
    diffusion_pi_c,
    diffusion_zeta,
    diffusion_zeta_via_xi,
    offspring_mean,
)
from src.perc.fixed_point import FixedPoint, solve_fixed_point
from src.perc.gilbert import GilbertTable, gilbert_table, k_mixture

__all__ = [
    "ActivationReport",
    "DerivedLaw",
    "DiffusionReport",
    "DiffusionThreshold",
    "FixedPoint",
    "GilbertTable",
    "derived_law",
    "diffusion_activation_fraction",
    "diffusion_giant_fraction",
    "diffusion_pi_c",
    "diffusion_zeta",
    "diffusion_zeta_via_xi",
    "gilbert_table",
    "k_mixture",
    "offspring_mean",
    "solve_fixed_point",
]
