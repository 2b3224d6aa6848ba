"""Shared logging configuration for the engine and the command line."""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
_LOG_DATE_FORMAT = "%H:%M:%S"

# ANSI colour codes keyed by log-level number
_LEVEL_COLOURS: dict[int, str] = {
    logging.DEBUG: "\033[36m",  # cyan
    logging.INFO: "\033[32m",  # green
    logging.WARNING: "\033[33m",  # yellow
    logging.ERROR: "\033[31m",  # red
    logging.CRITICAL: "\033[1;31m",  # bold red
}
_RESET = "\033[0m"

# Loggers held at WARNING even when a run asks for DEBUG
_QUIET_LOGGERS = ("asyncio",)


class _ColourFormatter(logging.Formatter):
    """Formatter that colours the level name on TTY streams."""

    def format(self, record: logging.LogRecord) -> str:
        msg = super().format(record)
        colour = _LEVEL_COLOURS.get(record.levelno)
        if colour:
            coloured = f"{colour}{record.levelname}{_RESET}"
            msg = msg.replace(record.levelname, coloured, 1)
        return msg


def _console_handler(level: int) -> logging.Handler:
    handler = logging.StreamHandler()
    handler.setLevel(level)
    tty = hasattr(sys.stderr, "isatty") and sys.stderr.isatty()
    formatter_cls = _ColourFormatter if tty else logging.Formatter
    handler.setFormatter(formatter_cls(_LOG_FORMAT, _LOG_DATE_FORMAT))
    return handler


def _attach_run_log(root: logging.Logger, log_file: Path, level: int) -> None:
    log_file.parent.mkdir(parents=True, exist_ok=True)
    target = str(log_file.resolve())
    for handler in root.handlers:
        if isinstance(handler, logging.FileHandler) and handler.baseFilename == target:
            handler.setLevel(level)
            return
    handler = logging.FileHandler(target, mode="w", encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(_LOG_FORMAT, _LOG_DATE_FORMAT))
    root.addHandler(handler)


def configure_logging(
    log_level: str,
    *,
    log_file: Path | None = None,
) -> None:
    """Configure the root logger for one run.

    Console output is added once per process. ``RuntimeWarning``s raised by
    numpy and scipy are routed through ``py.warnings`` so they reach the run
    log alongside the engine's own messages.

    Args:
        log_level: Log level name (e.g. "INFO", "DEBUG").
        log_file: Run log, typically ``<out-dir>/logs/<command>.log``. Parent
            directories are created; a handler already writing there is reused.

    """
    level = getattr(logging, log_level.upper(), logging.INFO)
    root = logging.getLogger()
    root.setLevel(level)
    if not root.handlers:
        root.addHandler(_console_handler(level))
    if log_file is not None:
        _attach_run_log(root, log_file, level)
    logging.captureWarnings(capture=True)
    for name in _QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
