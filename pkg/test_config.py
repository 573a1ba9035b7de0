#!/usr/bin/env python3
"""
Tests for configuration loading, grid parsing and input validators.
"""

import logging

import pytest
from pydantic import ValidationError

from src.config.constants import QuadratureMethod
from src.config.settings import LoggingSettings, OptimizerSettings, Settings
from src.utils.helpers import format_float, parse_grid
from src.utils.logger import get_logger, setup_logger
from src.utils.validators import (
    validate_grid_spec,
    validate_output_path,
    validate_suite_name,
    validate_unit_interval,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("TELEBELL_THREADS", "TELEBELL_LOG_LEVEL", "TELEBELL_ENVIRONMENT"):
        monkeypatch.delenv(name, raising=False)


def test_defaults_without_file(tmp_path):
    settings = Settings.load_from_file(str(tmp_path / "missing.yaml"))
    assert settings.optimizer.starts == 16
    assert settings.optimizer.grid_floor == 24
    assert settings.quadrature.method == QuadratureMethod.FIBONACCI
    assert settings.quadrature.points == 2048
    assert settings.logging.level == "INFO"


def test_repository_config_loads():
    settings = Settings.load_from_file("config.yaml")
    assert settings.optimizer.symmetry_reduced
    assert settings.oracle.resolution >= 8


def test_yaml_and_environment(tmp_path, monkeypatch):
    path = tmp_path / "config.yaml"
    path.write_text(
        "optimizer:\n  starts: 3\n  seed: 7\nquadrature:\n  method: monte_carlo\n  samples: 500\n",
        encoding="utf-8",
    )
    monkeypatch.setenv("TELEBELL_THREADS", "2")
    monkeypatch.setenv("TELEBELL_LOG_LEVEL", "debug")

    settings = Settings.load_from_file(str(path))
    assert settings.optimizer.starts == 3
    assert settings.optimizer.seed == 7
    assert settings.quadrature.method == QuadratureMethod.MONTE_CARLO
    assert settings.scan.worker_count() == 2
    assert settings.logging.level == "DEBUG"


def test_save_and_reload(tmp_path):
    path = tmp_path / "saved.yaml"
    original = Settings().with_optimizer(starts=5, grid_floor=16)
    original.save_to_file(str(path))
    assert Settings.load_from_file(str(path)) == original


def test_with_optimizer_ignores_unset_flags():
    settings = Settings().with_optimizer(starts=None, grid_floor=12, seed=None)
    assert settings.optimizer.starts == 16
    assert settings.optimizer.grid_floor == 12


def test_invalid_values_are_rejected():
    with pytest.raises(ValidationError):
        OptimizerSettings(grid_floor=2)
    with pytest.raises(ValidationError):
        LoggingSettings(level="LOUD")
    with pytest.raises(ValidationError):
        Settings().with_optimizer(starts=-1)
    with pytest.raises(ValidationError):
        Settings(quadrature={"points": 4})


@pytest.mark.parametrize("spec, expected", [
    ("0:1:0.25", [0.0, 0.25, 0.5, 0.75, 1.0]),
    ("0.1:0.3:0.1", [0.1, 0.2, 0.3]),
    ("0.5", [0.5]),
    ("0:0.05:0.05", [0.0, 0.05]),
])
def test_parse_grid(spec, expected):
    assert parse_grid(spec) == expected


@pytest.mark.parametrize("spec", ["0:1", "1:0:0.1", "0:1:0", "a:b:c"])
def test_parse_grid_rejects(spec):
    with pytest.raises(ValueError):
        parse_grid(spec)


def test_validators(tmp_path):
    assert validate_unit_interval("0.3")
    assert not validate_unit_interval("1.01")
    assert not validate_unit_interval("nan")
    assert validate_grid_spec("0:1:0.5")
    assert not validate_grid_spec("0:2:0.5")
    assert validate_output_path(tmp_path / "new" / "out.csv")
    assert not validate_output_path(tmp_path)
    assert validate_suite_name("paper-numbers")
    assert not validate_suite_name("everything")


def test_format_float_round_trips():
    value = 0.1 + 0.2
    assert float(format_float(value)) == value


def test_setup_logger_only_touches_telebell_loggers():
    third_party = logging.getLogger("matplotlib")
    third_party.setLevel(logging.NOTSET)
    setup_logger(LoggingSettings(level="DEBUG"))
    try:
        assert third_party.level == logging.NOTSET
        component = get_logger("Config")
        assert component.logger.name == "telebell.Config"
        assert component.logger.level == logging.DEBUG
        assert not component.logger.propagate
    finally:
        setup_logger(LoggingSettings())
