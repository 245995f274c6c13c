"""
Diffusion Analytics.

Bond percolation with retention probability pi on the clique-substituted graph:

    - diffusion_pi_c: threshold where the offspring mean
      pi E[K(D* + 1, pi, gamma) - 1] of the exploration process equals one
    - diffusion_zeta: largest root in [0, 1) of g(z) = mu z x - h(z),
      x = 1 - pi + pi z
    - diffusion_giant_fraction: L(zeta), the asymptotic share of substituted
      vertices in the largest percolation cluster
    - diffusion_activation_fraction: final active share when each degree-d
      vertex (or its whole clique) is seeded with probability alpha_d

With seeding, h and L are

    h(z) = (1/rho) [sum_s s (1 - gamma_s) p_s (1 - alpha_s) x^s
                    + sum_s sum_d d f(d, s) gamma_d p_d (1 - alpha_d)^s x^s]
    L(z) = 1 - (1/gamma~) [sum_s (1 - gamma_s) p_s (1 - alpha_s) x^s
                           + sum_s sum_d d f(d, s) gamma_d p_d (1 - alpha_d)^s x^s]

and alpha = 0 gives the unseeded equations.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial
from scipy import optimize

from src.dist.degree import DegreeDistribution
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.perc.derived import DerivedLaw, clique_weights, derived_law
from src.perc.fixed_point import (
    DEFAULT_GRID_POINTS,
    DEFAULT_REGULARITY_EPS,
    DEFAULT_XTOL,
    FixedPoint,
    solve_fixed_point,
)
from src.perc.gilbert import gilbert_table
from src.tuner.forward import gamma_tilde
from src.utils.errors import NumericError, ParameterError

logger = logging.getLogger(__name__)

PI_C_XTOL = 1e-10
CRITICAL_ATOL = 1e-8
ROUTES_ATOL = 1e-6
MONOTONE_GRID = 101


# ============================================================================
# Threshold
# ============================================================================

def offspring_mean(p: DegreeDistribution, gamma: CliqueProfile, pi: float) -> float:
    """
    Mean offspring pi E[K(D* + 1, pi, gamma) - 1] of the exploration process.

    D* + 1 has law d p_d / lambda, and E[K(d)] = (1 - gamma_d) d + gamma_d m_d(pi)
    with m_d the mean component size in the percolated d-clique.
    """
    table = gilbert_table(max(p.support_max, 1), pi)
    d = p.degrees.astype(float)
    g = gamma.as_array(p.support_max)
    m = table.component_means()[: p.support_max + 1]
    expected_k = (1.0 - g) * d + g * m
    weights = d * p.probs / p.mean
    return float(pi * np.dot(weights, expected_k - 1.0))


@dataclass(frozen=True)
class DiffusionThreshold:
    """
    Diffusion threshold.

    Attributes:
        pi_c: Threshold in [0, 1]; 1 when no finite threshold exists
        finite: False when E[D(D-1)] <= lambda (no spreading even at pi = 1)
        grid_monotone: Offspring mean non-decreasing on the debug grid; None
            when the grid check did not run
    """

    pi_c: float
    finite: bool
    grid_monotone: Optional[bool] = None


def _check_threshold_grid(p: DegreeDistribution, gamma: CliqueProfile, points: int) -> bool:
    grid = np.linspace(0.0, 1.0, points)
    phi = np.array([offspring_mean(p, gamma, pi) - 1.0 for pi in grid])
    signs = np.sign(phi)
    changes = int(np.count_nonzero(signs[:-1] * signs[1:] < 0))
    if changes > 1:
        raise NumericError(
            "Offspring mean crosses one more than once",
            {"sign_changes": changes, "pi_grid_points": points},
        )
    monotone = bool(np.all(np.diff(phi) >= -1e-12))
    if not monotone:
        logger.warning("Offspring mean is not monotone in pi for p=%s, gamma=%s", p.name, gamma.describe())
    return monotone


def diffusion_pi_c(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    xtol: float = PI_C_XTOL,
    check_monotone: bool = False,
    grid_points: int = MONOTONE_GRID,
) -> DiffusionThreshold:
    """
    Diffusion threshold pi_c by bisection of pi E[K(D* + 1, pi, gamma) - 1] - 1.

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        xtol: Bisection tolerance
        check_monotone: Also scan a pi grid and fail on a non-monotone bracket
        grid_points: Size of that grid

    Returns:
        DiffusionThreshold

    Raises:
        NumericError: The grid check finds more than one crossing
    """
    grid_monotone = _check_threshold_grid(p, gamma, grid_points) if check_monotone else None

    def phi(pi: float) -> float:
        return offspring_mean(p, gamma, pi) - 1.0

    phi_one = phi(1.0)
    if phi_one <= 0:
        logger.info("No finite diffusion threshold for p=%s (E[D(D-1)] <= lambda)", p.name)
        return DiffusionThreshold(pi_c=1.0, finite=False, grid_monotone=grid_monotone)

    phi_zero = phi(0.0)
    if phi_zero >= 0:
        raise NumericError("Offspring mean at pi = 0 must be below one", {"phi_0": phi_zero})
    pi_c = float(optimize.bisect(phi, 0.0, 1.0, xtol=xtol))
    logger.debug("pi_c=%.12g for p=%s gamma=%s", pi_c, p.name, gamma.describe())
    return DiffusionThreshold(pi_c=pi_c, finite=True, grid_monotone=grid_monotone)


# ============================================================================
# Fixed point and fractions
# ============================================================================

@dataclass(frozen=True, eq=False)
class _Series:
    """Coefficients of h and of the complement of L as polynomials in x."""

    law: DerivedLaw
    h: np.ndarray
    residual: np.ndarray
    gamma_tilde: float


def _series(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    alpha: Optional[ActivationProfile] = None,
) -> _Series:
    pi = float(pi)
    if not 0.0 <= pi <= 1.0:
        raise ParameterError(f"pi must lie in [0, 1], got {pi}")
    s_max = p.support_max
    table = gilbert_table(max(s_max, 1), pi)
    law = derived_law(p, gamma, pi, table=table)
    f = table.f[: s_max + 1, : s_max + 1]

    s = p.degrees.astype(float)
    g = gamma.as_array(s_max)
    a = np.zeros(s_max + 1) if alpha is None else alpha.as_array(s_max)

    unseeded = np.power.outer(1.0 - a, s)
    fragments = (f * unseeded).T @ clique_weights(p, gamma)
    plain = (1.0 - g) * p.probs * (1.0 - a)

    return _Series(
        law=law,
        h=(s * plain + fragments) / law.rho,
        residual=plain + fragments,
        gamma_tilde=gamma_tilde(p, gamma),
    )


def _g_function(series: _Series, pi: float):
    mu = series.law.mu

    def g(z: np.ndarray) -> np.ndarray:
        x = 1.0 - pi + pi * z
        return mu * z * x - polynomial.polyval(x, series.h)

    return g


def _fraction_at(series: _Series, pi: float, zeta: float) -> float:
    x = 1.0 - pi + pi * zeta
    value = 1.0 - float(polynomial.polyval(x, series.residual)) / series.gamma_tilde
    return float(np.clip(value, 0.0, 1.0))


def diffusion_zeta(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    alpha: Optional[ActivationProfile] = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> FixedPoint:
    """
    Largest root zeta in [0, 1) of mu z (1 - pi + pi z) = h(z).

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        pi: Edge retention probability
        alpha: Seeding probabilities (None for an unseeded diffusion)
        grid_points: Scan resolution
        xtol: Refinement tolerance
        eps: Regularity neighbourhood

    Returns:
        FixedPoint with root zeta and the regularity flag
    """
    series = _series(p, gamma, pi, alpha)
    return solve_fixed_point(_g_function(series, pi), grid_points=grid_points, xtol=xtol, eps=eps)


def diffusion_zeta_via_xi(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> FixedPoint:
    """
    Same fixed point through the two-stage sqrt(pi) exploration.

    Solves G'(1 - sqrt(pi) + sqrt(pi) xi) = mu (1 - (1 - xi) / sqrt(pi)) for
    xi in [1 - sqrt(pi), 1), G the generating function of the fragment law p',
    and returns zeta = 1 - (1 - xi) / sqrt(pi).
    """
    if pi <= 0.0:
        return FixedPoint(root=1.0, trivial=True, regularity_ok=True)
    series = _series(p, gamma, pi)
    root_pi = float(np.sqrt(pi))
    mu = series.law.mu
    g_prime = series.h[1:]

    def psi(xi: np.ndarray) -> np.ndarray:
        zeta = 1.0 - (1.0 - xi) / root_pi
        y = 1.0 - root_pi + root_pi * xi
        return mu * zeta - polynomial.polyval(y, g_prime)

    point = solve_fixed_point(psi, lower=1.0 - root_pi, grid_points=grid_points, xtol=xtol, eps=eps)
    zeta = 1.0 - (1.0 - point.root) / root_pi
    return FixedPoint(root=float(np.clip(zeta, 0.0, 1.0)), trivial=point.trivial, regularity_ok=point.regularity_ok)


@dataclass(frozen=True)
class DiffusionReport:
    """
    Asymptotic outcome of a single-seed diffusion.

    Attributes:
        pi: Edge retention probability
        pi_c: Diffusion threshold
        zeta: Fixed point (1 when no giant cluster exists)
        giant_fraction: L(zeta)
        regularity_ok: Side condition at zeta holds
        critical: |pi - pi_c| within CRITICAL_ATOL; no prediction is made
        finite_threshold: A threshold below one exists
        zeta_xi: Fixed point through the sqrt(pi) route (None when not solved)
        routes_agree: Both routes agree within ROUTES_ATOL
    """

    pi: float
    pi_c: float
    zeta: float
    giant_fraction: float
    regularity_ok: bool
    critical: bool = False
    finite_threshold: bool = True
    zeta_xi: Optional[float] = None
    routes_agree: bool = True

    def to_row(self) -> dict:
        return {
            "pi": self.pi,
            "pi_c": self.pi_c,
            "zeta": self.zeta,
            "giant_fraction": self.giant_fraction,
            "regularity_ok": self.regularity_ok,
            "critical": self.critical,
            "finite_threshold": self.finite_threshold,
            "zeta_xi": "" if self.zeta_xi is None else self.zeta_xi,
            "routes_agree": self.routes_agree,
        }


def diffusion_giant_fraction(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
    threshold: Optional[DiffusionThreshold] = None,
) -> DiffusionReport:
    """
    Threshold, fixed point and giant-cluster share for (p, gamma, pi).

    Below the threshold the share is 0 and zeta = 1. Within CRITICAL_ATOL of
    the threshold the report is flagged critical with share 0.

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        pi: Edge retention probability
        grid_points: Scan resolution
        xtol: Refinement tolerance
        eps: Regularity neighbourhood
        threshold: Precomputed threshold for (p, gamma), reused across pi sweeps

    Returns:
        DiffusionReport
    """
    if not 0.0 <= pi <= 1.0:
        raise ParameterError(f"pi must lie in [0, 1], got {pi}")
    threshold = threshold or diffusion_pi_c(p, gamma)

    if not threshold.finite or pi < threshold.pi_c - CRITICAL_ATOL:
        return DiffusionReport(
            pi=pi, pi_c=threshold.pi_c, zeta=1.0, giant_fraction=0.0,
            regularity_ok=True, finite_threshold=threshold.finite,
        )
    if abs(pi - threshold.pi_c) <= CRITICAL_ATOL:
        logger.warning("pi=%.10g is critical (pi_c=%.10g); reporting no giant cluster", pi, threshold.pi_c)
        return DiffusionReport(
            pi=pi, pi_c=threshold.pi_c, zeta=1.0, giant_fraction=0.0,
            regularity_ok=True, critical=True,
        )

    series = _series(p, gamma, pi)
    point = solve_fixed_point(_g_function(series, pi), grid_points=grid_points, xtol=xtol, eps=eps)
    via_xi = diffusion_zeta_via_xi(p, gamma, pi, grid_points=grid_points, xtol=xtol, eps=eps)
    agree = abs(point.root - via_xi.root) <= ROUTES_ATOL
    if not agree:
        logger.warning("Fixed-point routes disagree: zeta=%.10g, via xi=%.10g", point.root, via_xi.root)
    if not point.regularity_ok:
        logger.warning("Regularity condition fails at zeta=%.10g (pi=%.6g)", point.root, pi)

    report = DiffusionReport(
        pi=pi,
        pi_c=threshold.pi_c,
        zeta=point.root,
        giant_fraction=_fraction_at(series, pi, point.root),
        regularity_ok=point.regularity_ok,
        zeta_xi=via_xi.root,
        routes_agree=agree,
    )
    logger.info("Diffusion p=%s gamma=%s pi=%.6g: L=%.6g", p.name, gamma.describe(), pi, report.giant_fraction)
    return report


@dataclass(frozen=True)
class ActivationReport:
    """Final active share of a seeded diffusion."""

    pi: float
    zeta: float
    fraction: float
    regularity_ok: bool

    def to_row(self) -> dict:
        return {
            "pi": self.pi,
            "zeta": self.zeta,
            "active_fraction": self.fraction,
            "regularity_ok": self.regularity_ok,
        }


def diffusion_activation_fraction(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    pi: float,
    alpha: ActivationProfile,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> ActivationReport:
    """
    Final active share when cliques and plain vertices are seeded with alpha.

    A failing side condition is reported through ``regularity_ok``, not raised.
    """
    series = _series(p, gamma, pi, alpha)
    point = solve_fixed_point(_g_function(series, pi), grid_points=grid_points, xtol=xtol, eps=eps)
    if not point.regularity_ok:
        logger.warning("Regularity condition fails for seeded diffusion at zeta=%.10g", point.root)
    fraction = 0.0 if point.trivial else _fraction_at(series, pi, point.root)
    return ActivationReport(pi=pi, zeta=point.root, fraction=fraction, regularity_ok=point.regularity_ok)
