"""
Settings management for TeleBell.

This module handles loading and validating configuration from YAML files
and environment variables using Pydantic for type safety and validation.
"""

import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

from .constants import QuadratureMethod, THREADS_ENV_VAR


class OptimizerSettings(BaseModel):
    """Search settings for the tau(D) maximization."""
    starts: int = Field(default=16, ge=0)
    max_iterations: int = Field(default=400, gt=0)
    step_tolerance: float = Field(default=1e-7, gt=0)
    grid_floor: int = Field(default=24, ge=4, le=64)
    initial_step: float = Field(default=0.25, gt=0)
    seed: int = Field(default=0, ge=0)
    symmetry_reduced: bool = Field(default=True)
    local_refinement: bool = Field(default=True)


class QuadratureSettings(BaseModel):
    """Bloch-sphere averaging settings for the teleportation fidelity."""
    method: QuadratureMethod = Field(default=QuadratureMethod.FIBONACCI)
    points: int = Field(default=2048, gt=0)
    samples: int = Field(default=20000, gt=0)
    seed: int = Field(default=0, ge=0)


class OracleSettings(BaseModel):
    """Brute-force Bell-CHSH oracle settings."""
    resolution: int = Field(default=32, ge=8)


class ScanSettings(BaseModel):
    """Region scan settings."""
    threads: Optional[int] = Field(default=None, ge=1)

    def worker_count(self) -> int:
        """Effective worker pool size."""
        return self.threads or os.cpu_count() or 1


class LoggingSettings(BaseModel):
    """Logging configuration settings."""
    level: str = Field(default="INFO")
    log_to_file: bool = Field(default=False)
    file_rotation: str = Field(default="midnight")
    backup_count: int = Field(default=7, ge=1)
    format: str = Field(default="%(asctime)s [%(name)s] %(levelname)s: %(message)s")

    @field_validator('level')
    @classmethod
    def validate_log_level(cls, v):
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Valid levels: {valid_levels}")
        return v.upper()


class Settings(BaseModel):
    """Main settings class that combines all configuration sections."""
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    scan: ScanSettings = Field(default_factory=ScanSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    environment: str = Field(default="production")

    @model_validator(mode='after')
    def validate_quadrature(self):
        if self.quadrature.method == QuadratureMethod.FIBONACCI and self.quadrature.points < 16:
            raise ValueError("fibonacci quadrature needs at least 16 points")
        return self

    @classmethod
    def load_from_file(cls, config_path: str = "config.yaml") -> "Settings":
        """Load settings from YAML file and environment variables."""
        load_dotenv()

        config_data: Dict[str, Any] = {}
        if os.path.exists(config_path):
            with open(config_path, 'r', encoding='utf-8') as f:
                config_data = yaml.safe_load(f) or {}

        # Environment overrides the YAML for runtime knobs only
        threads = os.getenv(THREADS_ENV_VAR)
        if threads:
            config_data.setdefault('scan', {})['threads'] = int(threads)

        log_level = os.getenv('TELEBELL_LOG_LEVEL')
        if log_level:
            config_data.setdefault('logging', {})['level'] = log_level

        environment = os.getenv('TELEBELL_ENVIRONMENT')
        if environment:
            config_data['environment'] = environment

        return cls(**config_data)

    def with_optimizer(self, **overrides: Any) -> "Settings":
        """Return a copy with optimizer fields replaced (CLI flags)."""
        cleaned = {k: v for k, v in overrides.items() if v is not None}
        optimizer = self.optimizer.model_copy(update=cleaned)
        return self.model_copy(update={'optimizer': OptimizerSettings(**optimizer.model_dump())})

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return self.model_dump(mode='json')

    def save_to_file(self, config_path: str = "config.yaml") -> None:
        """Save current settings to YAML file."""
        with open(config_path, 'w', encoding='utf-8') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)
