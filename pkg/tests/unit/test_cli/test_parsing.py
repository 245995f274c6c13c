import pytest
from pydantic import ValidationError

from src import __version__
from src.cli.parsing import parse_distribution_spec, parse_profile, parse_threshold_spec
from src.cli.reports import SummaryRow, format_csv, read_csv, summary_rows, write_csv
from src.cli.specs import ExperimentSpec, build_spec, load_spec_file, resolve_model, threshold_laws
from src.dist.profiles import ActivationProfile, CliqueProfile
from src.sim.monte_carlo import MetricSummary
from src.utils.errors import InfeasibleError, ParameterError


# ============================================================================
# Text forms
# ============================================================================

def test_distribution_kinds():
    assert parse_distribution_spec("regular:3").pmf(3) == 1.0
    assert parse_distribution_spec("poisson_shifted:lambda=2").mean == pytest.approx(3.0, abs=1e-8)
    assert parse_distribution_spec("poisson:lambda=2").pmf(0) > 0
    law = parse_distribution_spec("powerlaw:tau=2.5,kappa=20,r_max=100")
    assert law.support_max == 100
    assert "tau=2.5" in law.name


def test_distribution_from_file(tmp_path):
    path = tmp_path / "law.txt"
    path.write_text("1 0.5\n3 0.5\n", encoding="utf-8")
    assert parse_distribution_spec(f"file:{path}").mean == pytest.approx(2.0)


@pytest.mark.parametrize(
    "spec",
    ["foo:1", "regular", "regular:x", "poisson:lam=2", "poisson:lambda", "powerlaw:tau=2.5,beta=1",
     "poisson_shifted:lambda=abc"],
)
def test_malformed_distributions(spec):
    with pytest.raises(ParameterError):
        parse_distribution_spec(spec)


def test_profiles():
    assert parse_profile("0.2", CliqueProfile).at(7) == pytest.approx(0.2)
    profile = parse_profile("3=0.5,4=1;default=0.1", CliqueProfile)
    assert profile.at(3) == 0.5
    assert profile.at(9) == pytest.approx(0.1)
    assert profile.describe() == "3=0.5,4=1;default=0.1"
    assert isinstance(parse_profile("0.05", ActivationProfile), ActivationProfile)


@pytest.mark.parametrize("spec", ["", "x=1", "3=abc", "3=0.5;dflt=1", "1.5"])
def test_malformed_profiles(spec):
    with pytest.raises(ParameterError):
        parse_profile(spec, CliqueProfile)


def test_threshold_specs():
    assert parse_threshold_spec("contagion:q=0.15", 10).name == "contagion:q=0.15"
    assert parse_threshold_spec("constant:k=2", 10).row(5)[2] == 1.0
    assert parse_threshold_spec("zero", 4).s_max == 4


@pytest.mark.parametrize("spec", ["foo", "constant:k=2,z=1", "contagion:q=abc", "constant"])
def test_malformed_thresholds(spec):
    with pytest.raises(ParameterError):
        parse_threshold_spec(spec, 10)


# ============================================================================
# Experiment specs
# ============================================================================

def test_spec_defaults():
    spec = ExperimentSpec(dist="regular:3", pi=[0.5])
    assert spec.process == "diffusion"
    assert spec.replicas == 50
    assert spec.metadata()["pi"] == [0.5]
    assert "gamma" not in spec.metadata()


@pytest.mark.parametrize(
    "values",
    [
        {"dist": "regular:3", "gamma": "0.2", "C": 0.1},
        {"dist": "regular:3", "process": "contagion"},
        {"dist": "regular:3", "process": "contagion", "q": [0.2], "pi": [0.5]},
        {"dist": "regular:3", "process": "contagion", "q": [0.2], "thresholds": "zero"},
        {"dist": "regular:3", "q": [0.2]},
        {"dist": "regular:3", "process": "contagion", "q": [1.0]},
        {"dist": "regular:3", "pi": [1.5]},
        {"dist": "lattice:3"},
        {"dist": "regular:3", "replicas": 1},
        {"dist": "regular:3", "simple_policy": "drop"},
    ],
)
def test_invalid_specs(values):
    with pytest.raises(ValidationError):
        ExperimentSpec(**values)


def test_flags_override_file_values(tmp_path):
    path = tmp_path / "spec.yaml"
    path.write_text("name: demo\ndist: regular:3\nprocess: contagion\nq: [0.12, 0.15]\nn: 500\n", encoding="utf-8")
    spec = build_spec(load_spec_file(path), {"n": 200, "name": None, "q": None})
    assert spec.name == "demo"
    assert spec.n == 200
    assert spec.q == [0.12, 0.15]
    assert [q for q, _ in threshold_laws(spec, 3)] == [0.12, 0.15]


def test_spec_file_errors(tmp_path):
    with pytest.raises(ParameterError):
        load_spec_file(tmp_path / "missing.yaml")
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ParameterError):
        load_spec_file(path)


def test_resolve_model_tunes_when_clustering_is_given():
    model = resolve_model("regular:3", C=0.2)
    assert model.gamma.at(3) == pytest.approx(1 / 3)
    assert model.metadata()["tuned_lambda"] == pytest.approx(3.0)
    plain = resolve_model("regular:3")
    assert plain.gamma.describe() == "0"
    with pytest.raises(InfeasibleError):
        resolve_model("regular:3", C=0.5)


# ============================================================================
# Reports
# ============================================================================

def test_csv_layout():
    text = format_csv([{"x": 1}, {"x": 2, "y": "b"}], {"seed": 7})
    assert text == f"# version={__version__}\n# seed=7\nx,y\n1,\n2,b\n"


def test_csv_file_reads_back(tmp_path):
    path = write_csv(tmp_path / "out" / "r.csv", [{"pi": 0.5, "giant_fraction": 0.25}], {"dist": "regular:3"})
    metadata, rows = read_csv(path)
    assert metadata == {"version": __version__, "dist": "regular:3"}
    assert rows == [{"pi": "0.5", "giant_fraction": "0.25"}]


def test_summary_rows():
    summary = MetricSummary.from_samples([0.2, 0.4])
    rows = summary_rows({"giant_fraction": summary}, 42, {"pi": 0.7})
    assert rows[0]["pi"] == 0.7
    assert rows[0]["metric"] == "giant_fraction"
    assert rows[0]["mean"] == pytest.approx(0.3)
    assert rows[0]["base_seed"] == 42


def test_summary_row_constraints():
    with pytest.raises(ValidationError):
        SummaryRow(metric="giant_fraction", mean=0.5, std=0.1, ci_lo=0.4, ci_hi=0.6, replicas=1, base_seed=0)
    with pytest.raises(ValidationError):
        SummaryRow(metric="", mean=0.5, std=0.1, ci_lo=0.4, ci_hi=0.6, replicas=5, base_seed=0)


@pytest.mark.parametrize("name", ["diffusion.yaml", "contagion.yaml"])
def test_shipped_spec_files_validate(project_root, name):
    spec = build_spec(load_spec_file(project_root / "configs" / "experiments" / name), {})
    assert spec.name.startswith(spec.process)
    parse_distribution_spec(spec.dist)
