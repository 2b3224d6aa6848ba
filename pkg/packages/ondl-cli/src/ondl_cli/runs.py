"""Run metadata lifecycle for command invocations."""

from __future__ import annotations

import logging
from datetime import UTC, datetime
from importlib.metadata import PackageNotFoundError, version
from typing import TYPE_CHECKING

from ondl_common.models import RunMetadata, RunStatus

if TYPE_CHECKING:
    from pathlib import Path

    from ondl_common.models import RunConfig

logger = logging.getLogger(__name__)

METADATA_FILE = "metadata.json"

_VERSIONED_PACKAGES = (
    "ondl-common",
    "ondl-engine",
    "ondl-cli",
    "numpy",
    "scipy",
    "networkx",
    "scikit-learn",
    "pydantic",
)


class RunRecorder:
    """Creates, updates and persists the metadata record of one run."""

    def __init__(self, config: RunConfig) -> None:
        """Create the output directory and an initial running record."""
        self._out_dir = config.out_dir
        self._out_dir.mkdir(parents=True, exist_ok=True)
        self._run = RunMetadata(
            command=config.subcommand,
            seed=config.seed,
            config=config,
            versions=self.package_versions(),
        )

    @property
    def run(self) -> RunMetadata:
        """Current record."""
        return self._run

    @property
    def path(self) -> Path:
        """Location of ``metadata.json``."""
        return self._out_dir / METADATA_FILE

    def output(self, name: str) -> Path:
        """Register an output file under the run directory and return its path."""
        path = self._out_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        self._run.outputs[name] = str(path)
        return path

    def start(self) -> RunMetadata:
        """Persist the running record."""
        self._save()
        logger.info(
            "Run started: command=%s seed=%d out_dir=%s",
            self._run.command,
            self._run.seed,
            self._out_dir,
        )
        return self._run

    def complete(self, summary: dict[str, float]) -> RunMetadata:
        """Mark the run completed with its summary numbers."""
        self._run.summary.update(summary)
        self._finish(RunStatus.COMPLETED)
        logger.info(
            "Run completed: command=%s outputs=%d",
            self._run.command,
            len(self._run.outputs),
        )
        return self._run

    def fail(self, error: str) -> RunMetadata:
        """Mark the run failed with the error message."""
        self._run.error = error
        self._finish(RunStatus.FAILED)
        return self._run

    def _finish(self, status: RunStatus) -> None:
        now = datetime.now(UTC)
        self._run.status = status
        self._run.completed_at = now
        self._run.updated_at = now
        self._save()

    def _save(self) -> None:
        self.path.write_text(
            self._run.model_dump_json(indent=2) + "\n", encoding="utf-8"
        )

    @staticmethod
    def package_versions() -> dict[str, str]:
        """Installed versions of the packages that shape numeric output."""
        versions: dict[str, str] = {}
        for name in _VERSIONED_PACKAGES:
            try:
                versions[name] = version(name)
            except PackageNotFoundError:
                versions[name] = "unknown"
        return versions
