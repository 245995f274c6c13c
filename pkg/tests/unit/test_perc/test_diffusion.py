import numpy as np
import pytest
from scipy import optimize

from src.dist.degree import DegreeDistribution, from_probs, poisson, poisson_shifted, power_law_cutoff, regular
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.perc.diffusion import (
    diffusion_activation_fraction,
    diffusion_giant_fraction,
    diffusion_pi_c,
    diffusion_zeta,
    diffusion_zeta_via_xi,
    offspring_mean,
)
from src.tuner.forward import clustering_coefficient
from src.utils.errors import ParameterError

NO_CLIQUES = CliqueProfile.constant(0.0)
GRID = 2000


def classical_giant(p: DegreeDistribution, pi: float) -> float:
    """1 - G(1 - pi + pi u) with u = G1(1 - pi + pi u), solved independently."""
    r = p.degrees.astype(float)
    lam = p.mean

    def g1(x):
        return float(np.dot(r[1:] * p.probs[1:], x ** (r[1:] - 1.0))) / lam

    def fixed(u):
        return g1(1.0 - pi + pi * u) - u

    if fixed(0.0) == 0.0:
        u = 0.0
    elif fixed(1.0 - 1e-12) >= 0:
        u = 1.0
    else:
        u = optimize.brentq(fixed, 0.0, 1.0 - 1e-12, xtol=1e-14)
    x = 1.0 - pi + pi * u
    return 1.0 - float(np.dot(p.probs, x ** r))


def test_regular_three_threshold():
    threshold = diffusion_pi_c(regular(3), NO_CLIQUES)
    assert threshold.finite
    assert threshold.pi_c == pytest.approx(0.5, abs=1e-9)
    assert offspring_mean(regular(3), NO_CLIQUES, 0.5) == pytest.approx(1.0)


def test_regular_three_giant_fraction():
    report = diffusion_giant_fraction(regular(3), NO_CLIQUES, 0.75, grid_points=GRID)
    # x = (1 - pi) / pi and zeta = x^2
    assert report.zeta == pytest.approx(1 / 9, abs=1e-8)
    assert report.giant_fraction == pytest.approx(26 / 27, abs=1e-8)
    assert report.regularity_ok
    assert report.routes_agree


def test_full_retention_of_regular_graph():
    report = diffusion_giant_fraction(regular(3), NO_CLIQUES, 1.0, grid_points=GRID)
    assert report.giant_fraction == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("pi", [0.45, 0.6, 0.9])
def test_matches_classical_equation_without_cliques(pi):
    p = from_probs({1: 0.2, 2: 0.2, 3: 0.3, 5: 0.3})
    report = diffusion_giant_fraction(p, NO_CLIQUES, pi, grid_points=GRID)
    assert report.giant_fraction == pytest.approx(classical_giant(p, pi), abs=1e-7)


def test_subcritical_and_critical_points():
    below = diffusion_giant_fraction(regular(3), NO_CLIQUES, 0.4, grid_points=GRID)
    assert below.giant_fraction == 0.0
    assert below.zeta == 1.0
    at = diffusion_giant_fraction(regular(3), NO_CLIQUES, 0.5, grid_points=GRID)
    assert at.critical
    assert at.giant_fraction == 0.0


def test_no_finite_threshold():
    p = from_probs({1: 0.5, 2: 0.5})
    threshold = diffusion_pi_c(p, NO_CLIQUES)
    assert not threshold.finite
    assert threshold.pi_c == 1.0
    report = diffusion_giant_fraction(p, NO_CLIQUES, 1.0, threshold=threshold)
    assert report.giant_fraction == 0.0
    assert not report.finite_threshold


def test_cliques_raise_the_regular_threshold():
    plain = diffusion_pi_c(regular(3), NO_CLIQUES).pi_c
    clustered = diffusion_pi_c(regular(3), CliqueProfile.constant(1.0)).pi_c
    assert clustered > plain
    # expected component of a tagged vertex in a percolated triangle
    pi = clustered
    m3 = (1 - pi) ** 2 + 2 * 2 * pi * (1 - pi) ** 2 + 3 * (1 - (1 - pi) ** 2 - 2 * pi * (1 - pi) ** 2)
    assert pi * (m3 - 1) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    "p, gamma",
    [
        pytest.param(regular(3), 0.0, id="regular3"),
        pytest.param(regular(4), 1.0, id="regular4-full"),
        pytest.param(regular(6), 0.5, id="regular6"),
        pytest.param(poisson_shifted(2.0), 0.3, id="poisson_shifted"),
        pytest.param(poisson(3.0), 0.2, id="poisson"),
        pytest.param(power_law_cutoff(2.5, kappa=50.0, r_max=200), 0.4, id="powerlaw"),
        pytest.param(from_probs({1: 0.2, 3: 0.3, 4: 0.3, 6: 0.2}), 0.7, id="mixture"),
    ],
)
def test_offspring_mean_is_one_at_threshold(p, gamma):
    profile = CliqueProfile.constant(gamma)
    threshold = diffusion_pi_c(p, profile)
    assert threshold.finite
    assert offspring_mean(p, profile, threshold.pi_c) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_regular_threshold_grows_with_clustering(d):
    gammas = np.linspace(0.0, 1.0, 21)
    profiles = [CliqueProfile.constant(float(g)) for g in gammas]
    clustering = np.array([clustering_coefficient(regular(d), profile) for profile in profiles])
    pi_c = np.array([diffusion_pi_c(regular(d), profile).pi_c for profile in profiles])
    assert np.all(np.diff(clustering) > 0)
    assert clustering[-1] == pytest.approx((d - 2) / d)
    assert np.all(np.diff(pi_c) >= -1e-9)
    assert pi_c[0] == pytest.approx(1.0 / (d - 1), abs=1e-9)


def test_threshold_is_monotone_in_pi_grid_check():
    threshold = diffusion_pi_c(poisson_shifted(2.0), CliqueProfile.constant(0.3), check_monotone=True)
    assert threshold.grid_monotone is True


@pytest.mark.parametrize("gamma", [0.3, 1.0])
def test_two_fixed_point_routes_agree(gamma):
    p = poisson_shifted(2.0)
    profile = CliqueProfile.constant(gamma)
    direct = diffusion_zeta(p, profile, 0.7, grid_points=GRID)
    via_xi = diffusion_zeta_via_xi(p, profile, 0.7, grid_points=GRID)
    assert direct.root == pytest.approx(via_xi.root, abs=1e-6)


def test_giant_fraction_in_unit_interval():
    p = poisson_shifted(3.0)
    for gamma in (0.0, 0.5, 1.0):
        for pi in (0.3, 0.6, 1.0):
            report = diffusion_giant_fraction(p, CliqueProfile.constant(gamma), pi, grid_points=GRID)
            assert 0.0 <= report.giant_fraction <= 1.0
            assert 0.0 <= report.zeta <= 1.0


def test_invalid_pi():
    with pytest.raises(ParameterError):
        diffusion_giant_fraction(regular(3), NO_CLIQUES, 1.5)


# ============================================================================
# Seeded diffusion
# ============================================================================

def test_zero_seeding_reduces_to_giant_fraction():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.4)
    giant = diffusion_giant_fraction(p, gamma, 0.7, grid_points=GRID)
    seeded = diffusion_activation_fraction(p, gamma, 0.7, ActivationProfile.constant(0.0), grid_points=GRID)
    assert seeded.fraction == pytest.approx(giant.giant_fraction, abs=1e-7)


def test_full_seeding_activates_everything():
    report = diffusion_activation_fraction(
        poisson_shifted(2.0), CliqueProfile.constant(0.4), 0.3, ActivationProfile.constant(1.0), grid_points=GRID
    )
    assert report.fraction == pytest.approx(1.0)


def test_seeding_grows_the_active_share():
    p = poisson_shifted(2.0)
    gamma = CliqueProfile.constant(0.4)
    shares = [
        diffusion_activation_fraction(p, gamma, 0.5, ActivationProfile.constant(a), grid_points=GRID).fraction
        for a in (0.01, 0.05, 0.2)
    ]
    assert shares == sorted(shares)
    assert shares[0] > 0.01
