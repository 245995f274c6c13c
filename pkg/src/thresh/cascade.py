"""
Cascade Analytics.

Symmetric threshold dynamics on the clique-substituted graph started from one
pivotal vertex (a vertex of the largest zero-threshold component):

    - cascade_condition: sum r(r-1) p_r t_r0 > sum r p_r (independent of gamma)
    - contagion_qc: largest q for which contagion thresholds allow a cascade
    - xi_solve: root in (0, 1) of sum d p_d t_d0 (1 - xi^(d-1)) = lambda (1 - xi)
    - pivotal_fraction: share of pivotal vertices
    - contagion_zeta_L: largest root of lambda z^2 = h(z) and the final share L
    - activation_cascade_fraction: same with clique-correlated seeding alpha

h and L for the threshold process with seeding alpha (alpha = 0 unseeded):

    h(z) = sum_s s p_s (1 - alpha_s) [t_s0 z^s + gamma_s (1 - t_s0) z]
         + sum_s p_s (1 - gamma_s)(1 - alpha_s) sum_{l >= 1} t_sl s z P(Bin(s-1, z) >= s-l-1)
    L(z) = (1/gamma~) sum_s [s gamma_s + 1 - gamma_s] p_s [(1 - alpha_s) t_s0 (1 - z^s) + alpha_s]
         + (1/gamma~) sum_s (1 - gamma_s) p_s (1 - alpha_s)
               [1 - t_s0 - sum_{l >= 1} t_sl P(Bin(s, z) >= s - l)]
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from src.dist.degree import DegreeDistribution
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.perc.fixed_point import (
    DEFAULT_GRID_POINTS,
    DEFAULT_REGULARITY_EPS,
    DEFAULT_XTOL,
    ZERO_ATOL,
    largest_root,
    solve_fixed_point,
)
from src.thresh.thresholds import ThresholdDistribution
from src.tuner.forward import gamma_tilde
from src.utils.errors import NumericError, ParameterError

logger = logging.getLogger(__name__)

# Relative tolerance for equality in the cascade condition
CONDITION_RTOL = 1e-12
# Bound on z-by-pair evaluations held in memory at once
_CHUNK_ELEMENTS = 2_000_000


# ============================================================================
# Cascade condition and contagion threshold
# ============================================================================

@dataclass(frozen=True)
class CascadeCondition:
    """
    Both sides of the cascade condition.

    Attributes:
        holds: Strict inequality lhs > rhs
        lhs: sum r(r-1) p_r t_r0
        rhs: sum r p_r
        critical: lhs equals rhs within tolerance; no prediction is made
    """

    holds: bool
    lhs: float
    rhs: float
    critical: bool = False

    def __iter__(self):
        return iter((self.holds, self.lhs, self.rhs))


def cascade_condition(p: DegreeDistribution, t: ThresholdDistribution) -> CascadeCondition:
    """Evaluate sum r(r-1) p_r t_r0 > sum r p_r."""
    t0 = t.zero_mass(p.support_max)
    r = p.degrees.astype(float)
    lhs = float(np.dot(r * (r - 1.0) * t0, p.probs))
    rhs = p.mean
    critical = abs(lhs - rhs) <= CONDITION_RTOL * max(rhs, 1.0)
    if critical:
        logger.warning("Cascade condition is critical (lhs=%.12g, rhs=%.12g); no prediction", lhs, rhs)
    return CascadeCondition(holds=(lhs > rhs) and not critical, lhs=lhs, rhs=rhs, critical=critical)


@dataclass(frozen=True)
class ContagionThreshold:
    """
    Contagion threshold q_c = 1 / m*.

    Attributes:
        q_c: Threshold, 0 when no cascade is possible for any q
        m_star: Smallest m with sum_{r <= m} r(r-1) p_r > lambda (None if absent)
        cascade_possible: m_star exists
    """

    q_c: float
    m_star: Optional[int]
    cascade_possible: bool


def contagion_qc(p: DegreeDistribution) -> ContagionThreshold:
    """
    Contagion threshold from the breakpoints of the cascade condition.

    The condition only changes at q = 1/m, so q_c = 1/m* with m* the smallest m
    whose partial sum sum_{r <= m} r(r-1) p_r exceeds lambda.
    """
    r = p.degrees.astype(float)
    partial = np.cumsum(r * (r - 1.0) * p.probs)
    lam = p.mean
    above = np.flatnonzero(partial > lam * (1.0 + CONDITION_RTOL))
    if above.size == 0:
        logger.info("No contagion threshold for p=%s: partial sums never exceed lambda", p.name)
        return ContagionThreshold(q_c=0.0, m_star=None, cascade_possible=False)
    m_star = int(above[0])
    return ContagionThreshold(q_c=1.0 / m_star, m_star=m_star, cascade_possible=True)


# ============================================================================
# Pivotal players
# ============================================================================

@dataclass(frozen=True)
class XiSolution:
    """
    Root of the pivotal-component equation.

    Attributes:
        xi: Root in [0, 1)
        degenerate: The equation vanishes at 0 (no degree-1 mass and all
            thresholds zero), so xi = 0 is taken
    """

    xi: float
    degenerate: bool = False


def xi_solve(
    p: DegreeDistribution,
    t: ThresholdDistribution,
    xtol: float = DEFAULT_XTOL,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> XiSolution:
    """
    Solve sum d p_d t_d0 (1 - xi^(d-1)) = lambda (1 - xi) on (0, 1).

    Raises:
        ParameterError: Cascade condition fails (only the trivial root xi = 1 exists)
        NumericError: No interior root although the condition holds
    """
    condition = cascade_condition(p, t)
    if not condition.holds:
        raise ParameterError(
            f"xi is only defined under the cascade condition (lhs={condition.lhs:.6g}, rhs={condition.rhs:.6g})"
        )
    t0 = t.zero_mass(p.support_max)
    d = p.degrees[1:].astype(float)
    weights = d * p.probs[1:] * t0[1:]
    lam = p.mean

    def phi(xi: np.ndarray) -> np.ndarray:
        return (1.0 - np.power.outer(xi, d - 1.0)) @ weights - lam * (1.0 - xi)

    phi_zero = float(weights.sum()) - lam
    if phi_zero >= -ZERO_ATOL:
        logger.info("Degenerate pivotal equation for p=%s: xi = 0", p.name)
        return XiSolution(xi=0.0, degenerate=True)

    xi = largest_root(phi, grid_points=grid_points, xtol=xtol)
    if xi is None:
        raise NumericError("No interior root of the pivotal equation", {"lhs": condition.lhs, "rhs": condition.rhs})
    logger.debug("xi=%.12g for p=%s, t=%s", xi, p.name, t.name)
    return XiSolution(xi=xi)


def pivotal_fraction(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    xi: Optional[XiSolution] = None,
) -> float:
    """
    Share of pivotal vertices in the substituted graph.

    Returns:
        sum [d gamma_d + 1 - gamma_d] p_d t_d0 (1 - xi^d) / gamma~, or 0 when the
        cascade condition fails
    """
    if not cascade_condition(p, t).holds:
        return 0.0
    xi = xi or xi_solve(p, t)
    d = p.degrees.astype(float)
    g = gamma.as_array(p.support_max)
    t0 = t.zero_mass(p.support_max)
    mass = (d * g + 1.0 - g) * p.probs * t0 * (1.0 - np.power(xi.xi, d))
    return float(mass.sum()) / gamma_tilde(p, gamma)


# ============================================================================
# Cascade fixed point
# ============================================================================

@dataclass(frozen=True)
class CascadeFixedPoint:
    """Fixed point of lambda z^2 = h(z) and the final active share L(zeta)."""

    zeta: float
    fraction: float
    regularity_ok: bool
    trivial: bool = False

    def __iter__(self):
        return iter((self.zeta, self.fraction, self.regularity_ok))


@dataclass(frozen=True, eq=False)
class _ThresholdSeries:
    """Per-degree and per-(s, l) weights of h and L."""

    lam: float
    gamma_tilde: float
    # sum_s a_s z^s + b z
    power_weights: np.ndarray
    linear_weight: float
    # pairs (s, l), l >= 1, with weight w: w s z P(Bin(s-1, z) >= s-l-1)
    pair_s: np.ndarray
    pair_l: np.ndarray
    pair_h: np.ndarray
    pair_L: np.ndarray
    # L = const - sum_s c_s z^s - sum_pairs pair_L P(Bin(s, z) >= s-l)
    L_const: float
    L_power: np.ndarray


def _series(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    alpha: Optional[ActivationProfile],
) -> _ThresholdSeries:
    s_max = p.support_max
    table = t.covering(s_max).t
    s = p.degrees.astype(float)
    g = gamma.as_array(s_max)
    a = np.zeros(s_max + 1) if alpha is None else alpha.as_array(s_max)
    probs = p.probs
    t0 = table[:, 0]
    free = 1.0 - a
    gt = gamma_tilde(p, gamma)

    power_weights = s * probs * free * t0
    linear_weight = float(np.dot(s * probs * free * g, 1.0 - t0))

    plain = probs * (1.0 - g) * free
    rows, levels = np.nonzero(table[:, 1:] * plain[:, None] > 0)
    levels = levels + 1
    pair_t = table[rows, levels]

    size = s * g + 1.0 - g
    L_const = float(np.dot(size * probs, a + free * t0) + np.dot(plain, 1.0 - t0))
    return _ThresholdSeries(
        lam=p.mean,
        gamma_tilde=gt,
        power_weights=power_weights,
        linear_weight=linear_weight,
        pair_s=rows.astype(np.int64),
        pair_l=levels.astype(np.int64),
        pair_h=plain[rows] * pair_t * rows,
        pair_L=plain[rows] * pair_t,
        L_const=L_const,
        L_power=size * probs * free * t0,
    )


def _pair_sum(z: np.ndarray, s: np.ndarray, k: np.ndarray, n: np.ndarray, w: np.ndarray) -> np.ndarray:
    """sum_i w_i P(Bin(n_i, z) > k_i) for each z, evaluated in chunks."""
    out = np.zeros(z.size)
    if s.size == 0:
        return out
    step = max(1, _CHUNK_ELEMENTS // max(z.size, 1))
    for start in range(0, s.size, step):
        sl = slice(start, start + step)
        tail = stats.binom.sf(k[sl][None, :], n[sl][None, :], z[:, None])
        out += tail @ w[sl]
    return out


def _h_function(series: _ThresholdSeries):
    s = series.pair_s
    n = np.maximum(s - 1, 0)
    k = s - series.pair_l - 2

    def h(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        powers = np.power.outer(z, np.arange(series.power_weights.size)) @ series.power_weights
        return powers + series.linear_weight * z + z * _pair_sum(z, s, k, n, series.pair_h)

    return h


def _fraction_at(series: _ThresholdSeries, zeta: float) -> float:
    z = np.array([zeta])
    powers = float(np.power(zeta, np.arange(series.L_power.size)) @ series.L_power)
    k = series.pair_s - series.pair_l - 1
    active_plain = float(_pair_sum(z, series.pair_s, k, series.pair_s, series.pair_L)[0])
    # (1 - z^s) splits into the constant part and the power part
    value = (series.L_const - powers - active_plain) / series.gamma_tilde
    return float(np.clip(value, 0.0, 1.0))


def _solve(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    alpha: Optional[ActivationProfile],
    grid_points: int,
    xtol: float,
    eps: float,
) -> CascadeFixedPoint:
    series = _series(p, gamma, t, alpha)
    h = _h_function(series)
    lam = series.lam

    def g(z: np.ndarray) -> np.ndarray:
        return lam * z * z - h(z)

    point = solve_fixed_point(g, grid_points=grid_points, xtol=xtol, eps=eps)
    if point.trivial:
        fraction = _fraction_at(series, 1.0) if alpha is not None else 0.0
    else:
        fraction = _fraction_at(series, point.root)
    if not point.regularity_ok:
        logger.warning("Regularity condition fails at zeta=%.10g for t=%s", point.root, t.name)
    return CascadeFixedPoint(
        zeta=point.root, fraction=fraction, regularity_ok=point.regularity_ok, trivial=point.trivial
    )


def contagion_zeta_L(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> CascadeFixedPoint:
    """
    Largest root zeta of lambda z^2 = h(z) and the cascade share L(zeta).

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        t: Thresholds (must cover the support of p)
        grid_points: Scan resolution
        xtol: Refinement tolerance
        eps: Regularity neighbourhood

    Returns:
        CascadeFixedPoint (unpacks as zeta, L, regularity_ok)
    """
    return _solve(p, gamma, t, None, grid_points, xtol, eps)


def activation_cascade_fraction(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    alpha: ActivationProfile,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> CascadeFixedPoint:
    """
    Final active share when each clique or plain degree-d vertex is seeded
    with probability alpha_d (whole cliques are seeded together).
    """
    return _solve(p, gamma, t, alpha, grid_points, xtol, eps)


# ============================================================================
# Report
# ============================================================================

@dataclass(frozen=True)
class ContagionReport:
    """
    Asymptotic outcome of a threshold cascade from one pivotal vertex.

    Attributes:
        cascade_possible: Strict cascade condition
        critical: Equality in the cascade condition
        lhs: Left side of the cascade condition
        rhs: Right side of the cascade condition
        q_c: Contagion threshold (contagion thresholds only)
        xi: Root of the pivotal equation (1 when no cascade)
        xi_degenerate: xi = 0 taken at a vanishing equation
        pivotal_fraction: Share of pivotal vertices
        zeta: Cascade fixed point (1 when no cascade)
        cascade_fraction: L(zeta), 0 when no cascade
        regularity_ok: Side condition at zeta holds
    """

    cascade_possible: bool
    critical: bool
    lhs: float
    rhs: float
    q_c: Optional[float]
    xi: float
    xi_degenerate: bool
    pivotal_fraction: float
    zeta: float
    cascade_fraction: float
    regularity_ok: bool

    def to_row(self) -> dict:
        return {
            "cascade_possible": self.cascade_possible,
            "critical": self.critical,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "q_c": "" if self.q_c is None else self.q_c,
            "xi": self.xi,
            "xi_degenerate": self.xi_degenerate,
            "pivotal_fraction": self.pivotal_fraction,
            "zeta": self.zeta,
            "cascade_fraction": self.cascade_fraction,
            "regularity_ok": self.regularity_ok,
        }


def contagion_report(
    p: DegreeDistribution,
    gamma: CliqueProfile,
    t: ThresholdDistribution,
    q: Optional[float] = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> ContagionReport:
    """
    Cascade condition, pivotal share and cascade share in one report.

    Args:
        p: Pre-substitution degree law
        gamma: Substitution probabilities
        t: Thresholds
        q: Contagion parameter when t came from contagion_thresholds; adds q_c

    Returns:
        ContagionReport
    """
    if q is not None and not 0.0 < q < 1.0:
        raise ParameterError(f"q must lie in (0, 1), got {q}")
    condition = cascade_condition(p, t)
    q_c = contagion_qc(p).q_c if q is not None else None

    if not condition.holds:
        return ContagionReport(
            cascade_possible=False, critical=condition.critical, lhs=condition.lhs, rhs=condition.rhs,
            q_c=q_c, xi=1.0, xi_degenerate=False, pivotal_fraction=0.0, zeta=1.0,
            cascade_fraction=0.0, regularity_ok=True,
        )

    xi = xi_solve(p, t, xtol=xtol)
    pivotal = pivotal_fraction(p, gamma, t, xi=xi)
    point = contagion_zeta_L(p, gamma, t, grid_points=grid_points, xtol=xtol, eps=eps)
    report = ContagionReport(
        cascade_possible=True, critical=False, lhs=condition.lhs, rhs=condition.rhs, q_c=q_c,
        xi=xi.xi, xi_degenerate=xi.degenerate, pivotal_fraction=pivotal, zeta=point.zeta,
        cascade_fraction=point.fraction, regularity_ok=point.regularity_ok,
    )
    logger.info(
        "Contagion p=%s gamma=%s t=%s: pivotal=%.6g, cascade=%.6g",
        p.name, gamma.describe(), t.name, pivotal, point.fraction,
    )
    return report
