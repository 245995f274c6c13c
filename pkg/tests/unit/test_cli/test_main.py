import pytest

from src.cli.experiments import PRESETS, ExperimentContext, run_experiment
from src.cli.main import build_parser, main
from src.cli.reports import read_csv
from src.dist.io import read_distribution
from src.graphgen.graph import read_graph
from src.utils.errors import ParameterError

ENV_VARS = (
    "CASCADES_N",
    "CASCADES_REPLICAS",
    "CASCADES_SEED",
    "CASCADES_SIMPLE_POLICY",
    "CASCADES_MAX_TRIES",
    "CASCADES_ROOT_GRID",
    "CASCADES_DEBUG_MONOTONE",
    "CASCADES_OUTPUT_DIR",
    "CASCADES_LOG_LEVEL",
    "CASCADES_LOG_FILE",
)


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("CASCADES_OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.setenv("CASCADES_ROOT_GRID", "2000")
    monkeypatch.setenv("CASCADES_LOG_LEVEL", "WARNING")


def test_no_command_prints_help(capsys):
    assert main([]) == 1
    assert "usage" in capsys.readouterr().out


def test_parser_knows_every_command():
    parser = build_parser()
    args = parser.parse_args(["analyze", "diffusion", "--dist", "regular:3", "--pi", "0.5", "0.6"])
    assert args.kind == "diffusion"
    assert args.pi == [0.5, 0.6]
    with pytest.raises(SystemExit):
        parser.parse_args(["experiment", "no_such_preset"])


def test_dist_command_writes_table(tmp_path, capsys):
    out = tmp_path / "law.txt"
    assert main(["dist", "--dist", "poisson_shifted:lambda=2", "--out", str(out)]) == 0
    assert "Mean: " in capsys.readouterr().out
    assert read_distribution(out).mean == pytest.approx(3.0, abs=1e-8)


def test_bad_distribution_exits_with_parameter_code(capsys):
    assert main(["dist", "--dist", "lattice:3"]) == ParameterError.exit_code
    assert "❌" in capsys.readouterr().out


def test_tune_command(tmp_path, capsys):
    out = tmp_path / "tuned.txt"
    assert main(["tune", "--dist", "regular:3", "--C", "0.2", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "gamma: 0.3333" in text
    assert read_distribution(out).pmf(3) == pytest.approx(1.0)


def test_infeasible_tune_exits_with_parameter_code():
    assert main(["tune", "--dist", "regular:3", "--C", "0.5"]) == 2


def test_analyze_diffusion(tmp_path):
    out = tmp_path / "diffusion.csv"
    assert main(["analyze", "diffusion", "--dist", "regular:3", "--pi", "0.4", "0.75", "--out", str(out)]) == 0
    metadata, rows = read_csv(out)
    assert metadata["dist"] == "regular:3"
    assert "replicas" not in metadata
    assert float(rows[0]["giant_fraction"]) == 0.0
    assert float(rows[1]["giant_fraction"]) == pytest.approx(26 / 27, abs=1e-8)
    assert float(rows[1]["pi_c"]) == pytest.approx(0.5, abs=1e-9)


def test_analytic_output_is_byte_identical(tmp_path):
    argv = ["analyze", "contagion", "--dist", "poisson_shifted:lambda=2", "--gamma", "0.2", "--q", "0.15", "0.3"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    _, rows = read_csv(first)
    assert rows[0]["cascade_possible"] == "True"
    assert rows[1]["cascade_possible"] == "False"


def test_contagion_without_thresholds_is_rejected(capsys):
    assert main(["analyze", "contagion", "--dist", "regular:3"]) == 2
    assert "Invalid parameters" in capsys.readouterr().out


def test_analyze_activation(tmp_path):
    out = tmp_path / "act.csv"
    argv = ["analyze", "activation", "--dist", "regular:3", "--gamma", "0.5", "--pi", "0.3",
            "--alpha", "1", "--out", str(out)]
    assert main(argv) == 0
    _, rows = read_csv(out)
    assert float(rows[0]["active_fraction"]) == pytest.approx(1.0)


def test_gen_command(tmp_path):
    out = tmp_path / "g.txt"
    argv = ["gen", "--dist", "regular:3", "--gamma", "1", "--n", "50", "--seed", "1", "--out", str(out)]
    assert main(argv) == 0
    g = read_graph(out)
    assert g.n_vertices == 150
    assert g.is_clique_member.all()


def test_simulate_diffusion(tmp_path):
    out = tmp_path / "sim.csv"
    argv = ["simulate", "diffusion", "--dist", "regular:3", "--gamma", "0.5", "--pi", "0.8",
            "--n", "100", "--replicas", "2", "--seed", "3", "--out", str(out)]
    assert main(argv) == 0
    metadata, rows = read_csv(out)
    assert metadata["base_seed"] == "3"
    assert {row["metric"] for row in rows} == {"giant_fraction", "second_fraction"}


def test_invalid_configuration_is_reported(monkeypatch, capsys):
    monkeypatch.setenv("CASCADES_REPLICAS", "1")
    assert main(["list-experiments"]) == 2
    assert "❌" in capsys.readouterr().out


def test_list_experiments(capsys):
    assert main(["list-experiments"]) == 0
    text = capsys.readouterr().out
    for name in PRESETS:
        assert name in text


# ============================================================================
# Presets
# ============================================================================

def test_clustering_range_preset(tmp_path):
    assert main(["experiment", "fig_clust_range", "--out-dir", str(tmp_path)]) == 0
    metadata, rows = read_csv(tmp_path / "fig_clust_range.csv")
    assert metadata["experiment"] == "fig_clust_range"
    assert len(rows) == 30
    assert all(0.0 < float(row["c_max"]) < 1.0 for row in rows)


def test_unknown_preset():
    with pytest.raises(ParameterError):
        run_experiment("fig_unknown", ExperimentContext())


def test_presets_use_configured_power_law():
    tables = run_experiment("fig_clust_range", ExperimentContext(kappa=20.0, r_max=100))
    assert tables[0].metadata["kappa"] == 20.0
    assert tables[0].metadata["r_max"] == 100
    default = run_experiment("fig_clust_range", ExperimentContext())
    assert tables[0].rows[0]["mean_degree"] < default[0].rows[0]["mean_degree"]
