import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from src.dist.binomial import binomial_pmf, binomial_row
from src.dist.degree import from_probs, power_law_cutoff
from src.dist.io import format_distribution, parse_distribution, read_distribution, write_distribution
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.utils.errors import ParameterError


# ============================================================================
# Profiles
# ============================================================================

def test_constant_profile():
    gamma = CliqueProfile.constant(0.3)
    assert gamma.at(0) == 0.3
    assert gamma.at(250) == 0.3
    assert gamma.is_constant
    assert gamma.describe() == "0.3"


def test_listed_profile_with_default():
    gamma = CliqueProfile(values={3: 0.5, 4: 1.0}, default=0.1)
    assert gamma.at(3) == 0.5
    assert gamma.at(5) == 0.1
    assert np.allclose(gamma.as_array(5), [0.1, 0.1, 0.1, 0.5, 1.0, 0.1])
    assert gamma.describe() == "3=0.5,4=1;default=0.1"


@pytest.mark.parametrize("values,default", [({3: 1.5}, 0.0), ({-1: 0.5}, 0.0), ({}, -0.1)])
def test_profile_rejects_out_of_range(values, default):
    with pytest.raises(ParameterError):
        ActivationProfile(values=values, default=default)


def test_profile_error_names_the_symbol():
    with pytest.raises(ParameterError, match="alpha_3"):
        ActivationProfile(values={3: 2.0})


# ============================================================================
# Binomial
# ============================================================================

@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=300), st.floats(min_value=0.0, max_value=1.0))
def test_binomial_row_matches_scipy(s, p):
    row = binomial_row(s, p)
    assert row.sum() == pytest.approx(1.0, abs=1e-9)
    expected = stats.binom.pmf(np.arange(s + 1), s, p)
    assert np.allclose(row, expected, atol=1e-12)


def test_binomial_boundaries():
    assert binomial_pmf(5, 0, 0.0) == 1.0
    assert binomial_pmf(5, 5, 1.0) == 1.0
    assert binomial_pmf(5, 2, 1.0) == 0.0
    assert binomial_pmf(4, 2, 0.5) == pytest.approx(6 / 16)


@pytest.mark.parametrize("s,r,p", [(3, 4, 0.5), (3, -1, 0.5), (3, 1, 1.5)])
def test_binomial_rejects_bad_arguments(s, r, p):
    with pytest.raises(ParameterError):
        binomial_pmf(s, r, p)


# ============================================================================
# Tables
# ============================================================================

def test_table_file_reproduces_the_law(tmp_path):
    dist = power_law_cutoff(2.5, kappa=50, r_max=60)
    path = write_distribution(dist, tmp_path / "p.txt", {"tau": 2.5})
    loaded = read_distribution(path)
    assert np.array_equal(loaded.probs, dist.probs)
    assert loaded.name == dist.name
    assert path.read_text(encoding="utf-8").startswith("# tau=2.5\n")


def test_table_text_is_stable():
    dist = from_probs({1: 0.25, 3: 0.75}, name="demo")
    assert format_distribution(dist) == "# name=demo\n1 0.25\n3 0.75\n"


@pytest.mark.parametrize(
    "text",
    [
        "1 0.5\n1 0.5\n",
        "2 0.5\n1 0.5\n",
        "1 0.5 extra\n",
        "one 0.5\n",
        "1 0.4\n2 0.4\n",
    ],
)
def test_malformed_tables_are_rejected(text):
    with pytest.raises(ParameterError):
        parse_distribution(text)


def test_missing_table_file(tmp_path):
    with pytest.raises(ParameterError, match="not found"):
        read_distribution(tmp_path / "absent.txt")
