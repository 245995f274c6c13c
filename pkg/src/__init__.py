"""
Clustered Cascades Package

Root package for the clustered-cascades toolkit.

This package studies diffusion and threshold contagion on configuration-model
random graphs whose vertices are replaced by cliques with tunable probability:
- Degree laws, clique profiles and clustering tuning
- Graph generation with clique substitution and projection
- Asymptotic diffusion thresholds, epidemic sizes, cascade conditions
- Monte Carlo validation of the asymptotic results

Architecture:
    - src/dist: Degree distributions and per-degree profiles
    - src/graphgen: Configuration model, cliques, projection, statistics
    - src/perc: Diffusion (bond percolation) analytics
    - src/thresh: Threshold and contagion analytics
    - src/tuner: Clustering formulas and their inversion
    - src/sim: Monte Carlo engine
    - src/cli: Command-line front end and experiment presets
    - src/utils: Shared configuration, logging, errors and seeding
"""
from __future__ import annotations

__version__ = "0.1.0"
