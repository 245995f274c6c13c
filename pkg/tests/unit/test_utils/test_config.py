import logging

import pytest

from src.utils.config import AppConfig, NumericsConfig, OutputConfig, SimulationConfig, load_config
from src.utils.errors import (
    CascadesError,
    InfeasibleError,
    NumericError,
    ParameterError,
    RetryLimitError,
    TruncationError,
)
from src.utils.logging import setup_logging
from src.utils.seeding import derive_seeds
from src.utils.validation import validate_config

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
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)


def _config(**sim) -> AppConfig:
    return AppConfig(numerics=NumericsConfig(), simulation=SimulationConfig(**sim), output=OutputConfig())


def test_yaml_values_are_loaded(tmp_path):
    path = tmp_path / "app.yaml"
    path.write_text(
        "numerics:\n  root_grid_points: 500\nsimulation:\n  n: 1234\n  simple_policy: erase\n"
        "output:\n  log_level: DEBUG\n",
        encoding="utf-8",
    )
    cfg = load_config(path)
    assert cfg.numerics.root_grid_points == 500
    assert cfg.simulation.n == 1234
    assert cfg.simulation.simple_policy == "erase"
    assert cfg.output.log_level == "DEBUG"
    assert cfg.simulation.replicas == SimulationConfig().replicas


def test_missing_yaml_falls_back_to_defaults(tmp_path):
    cfg = load_config(tmp_path / "absent.yaml")
    assert cfg.simulation == SimulationConfig()
    assert cfg.numerics == NumericsConfig()


def test_environment_overrides_yaml(tmp_path, monkeypatch):
    path = tmp_path / "app.yaml"
    path.write_text("simulation:\n  n: 1234\n  base_seed: 1\n", encoding="utf-8")
    monkeypatch.setenv("CASCADES_N", "99")
    monkeypatch.setenv("CASCADES_SEED", "7")
    monkeypatch.setenv("CASCADES_DEBUG_MONOTONE", "true")
    cfg = load_config(path)
    assert cfg.simulation.n == 99
    assert cfg.simulation.base_seed == 7
    assert cfg.numerics.debug_monotone is True


def test_default_config_is_valid():
    ok, errors = validate_config(_config())
    assert ok
    assert errors == []


def test_invalid_values_are_all_reported():
    ok, errors = validate_config(_config(n=0, replicas=1, simple_policy="drop"))
    assert not ok
    assert len(errors) == 3
    assert any("simple_policy" in e for e in errors)


def test_invalid_tolerance_is_reported():
    cfg = _config()
    cfg.numerics.root_xtol = 0.0
    ok, errors = validate_config(cfg)
    assert not ok
    assert "numerics.root_xtol" in errors[0]


def test_exit_codes():
    assert ParameterError.exit_code == 2
    assert TruncationError.exit_code == 2
    assert InfeasibleError.exit_code == 2
    assert NumericError.exit_code == 3
    assert RetryLimitError("x", attempts=3).exit_code == 3
    assert issubclass(ParameterError, ValueError)
    assert issubclass(NumericError, CascadesError)


def test_numeric_error_lists_diagnostics():
    error = NumericError("bracket failed", {"lo": 0.1, "hi": 0.2})
    assert str(error) == "bracket failed (lo=0.1, hi=0.2)"
    assert str(NumericError("plain")) == "plain"


def test_derive_seeds_is_deterministic():
    assert derive_seeds(42, 5) == derive_seeds(42, 5)
    assert len(set(derive_seeds(42, 5))) == 5
    assert derive_seeds(42, 3) != derive_seeds(43, 3)


def test_derive_seeds_prefix_is_stable():
    assert derive_seeds(42, 10)[:3] == derive_seeds(42, 3)


def test_setup_logging_replaces_its_handlers(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    setup_logging("DEBUG", log_file)
    setup_logging("WARNING", log_file)
    root = logging.getLogger()
    tagged = [h for h in root.handlers if getattr(h, "_cascades_handler", False)]
    assert len(tagged) == 2
    assert root.level == logging.WARNING
    assert log_file.exists()
    for handler in tagged:
        root.removeHandler(handler)
        handler.close()


def test_setup_logging_leaves_other_loggers_alone():
    for name in ("matplotlib", "numba", "urllib3"):
        logging.getLogger(name).setLevel(logging.NOTSET)
    setup_logging("INFO")
    root = logging.getLogger()
    try:
        for name in ("matplotlib", "numba", "urllib3"):
            assert logging.getLogger(name).level == logging.NOTSET
    finally:
        for handler in [h for h in root.handlers if getattr(h, "_cascades_handler", False)]:
            root.removeHandler(handler)
            handler.close()
