"""Command startup: run configuration assembly and logging setup."""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from ondl_common.errors import DataError, UsageError
from ondl_common.logging import configure_logging
from ondl_common.models import RunConfig

if TYPE_CHECKING:
    from pathlib import Path

    from ondl_common.config import Settings

logger = logging.getLogger(__name__)


def read_config_file(path: Path) -> dict[str, Any]:
    """Read a ``--config`` JSON object of RunConfig keys."""
    try:
        values = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise DataError(msg) from exc
    except json.JSONDecodeError as exc:
        msg = f"{path}:{exc.lineno}: invalid JSON: {exc.msg}"
        raise DataError(msg) from exc
    if not isinstance(values, dict):
        msg = f"{path}: expected a JSON object of run settings"
        raise DataError(msg)
    return values


def build_run_config(flags: dict[str, Any]) -> RunConfig:
    """Merge ``--config`` file values under explicitly given flags and validate."""
    flags = dict(flags)
    config_path = flags.pop("config", None)
    values = read_config_file(config_path) if config_path is not None else {}
    values.pop("subcommand", None)
    values.update(flags)
    try:
        return RunConfig.model_validate(values)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in exc.errors()
        )
        msg = f"invalid run configuration: {details}"
        raise UsageError(msg) from exc


def init_logging(settings: Settings, config: RunConfig | None = None) -> None:
    """Configure console logging, plus ``<out-dir>/logs/<command>.log`` once known."""
    level = (config.log_level if config else None) or settings.app.log_level
    log_file = (
        config.out_dir / "logs" / f"{config.subcommand}.log"
        if config is not None
        else None
    )
    configure_logging(level, log_file=log_file)
