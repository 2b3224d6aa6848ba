"""Application configuration loaded from environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv


def _env(key: str, default: str = "") -> str:
    return os.environ.get(key, default)


@dataclass(frozen=True)
class SolverConfig:
    """Hold inner-loop tolerances for sparse coding and dictionary updates."""

    coding_tol: float = field(
        default_factory=lambda: float(_env("ONDL_CODING_TOL", "1e-6"))
    )
    coding_max_iter: int = field(
        default_factory=lambda: int(_env("ONDL_CODING_MAX_ITER", "200"))
    )
    dict_tol: float = field(
        default_factory=lambda: float(_env("ONDL_DICT_TOL", "1e-6"))
    )
    dict_max_sweeps: int = field(
        default_factory=lambda: int(_env("ONDL_DICT_MAX_SWEEPS", "100"))
    )


@dataclass(frozen=True)
class SamplingConfig:
    """Hold limits for motif samplers and exact-distribution oracles."""

    rejection_max_tries: int = field(
        default_factory=lambda: int(_env("ONDL_REJECTION_MAX_TRIES", "1000000"))
    )
    oracle_max_states: int = field(
        default_factory=lambda: int(_env("ONDL_ORACLE_MAX_STATES", "10000000"))
    )
    diag_interval: int = field(
        default_factory=lambda: int(_env("ONDL_DIAG_INTERVAL", "1000"))
    )


@dataclass(frozen=True)
class AppConfig:
    """Hold logging settings."""

    log_level: str = field(default_factory=lambda: _env("LOG_LEVEL", "INFO"))
    slow_step_ms: int = field(
        default_factory=lambda: int(_env("ONDL_SLOW_STEP_MS", "500"))
    )


@dataclass(frozen=True)
class Settings:
    """Aggregate all configuration sections into a single settings object."""

    solver: SolverConfig = field(default_factory=SolverConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    app: AppConfig = field(default_factory=AppConfig)


def load_settings() -> Settings:
    """Load settings from environment variables, reading .env when present."""
    env_path = Path.cwd() / ".env"
    if env_path.exists():
        load_dotenv(env_path)
    return Settings()
