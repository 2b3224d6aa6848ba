"""Run configuration and metadata records for command-line experiments."""

from __future__ import annotations

from datetime import datetime  # noqa: TC003 - required at runtime by Pydantic
from enum import StrEnum
from pathlib import Path  # noqa: TC003 - required at runtime by Pydantic

from pydantic import Field, model_validator

from ondl_common.models.base import ParamsBase, RecordBase
from ondl_common.models.params import Direction, McmcMode, NoiseMode, PatchMode


class Subcommand(StrEnum):
    """Enumerate command-line pipelines."""

    NDL_LEARN = "ndl-learn"
    RECONSTRUCT = "reconstruct"
    DENOISE = "denoise"
    ISING_LEARN = "ising-learn"
    IMAGE_LEARN = "image-learn"
    HOM_DIAG = "hom-diag"


class RunStatus(StrEnum):
    """Enumerate lifecycle statuses of a run."""

    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class RunConfig(ParamsBase):
    """Every input and parameter of one command invocation."""

    subcommand: Subcommand
    seed: int = Field(default=0, ge=0, lt=2**64)
    out_dir: Path = Path("out")
    edges: Path | None = None
    undirected: bool = False
    dictionary: Path | None = None
    image: Path | None = None
    labels: Path | None = None
    motif_k: int = Field(default=3, ge=1)
    patch_size: int = Field(default=10, ge=1)
    atoms: int = Field(default=25, ge=1)
    lam: float = Field(default=1.0, ge=0.0, alias="lambda")
    kappa1: float = Field(default=0.0, ge=0.0)
    kappa2: float = Field(default=0.0, ge=0.0)
    beta: float = Field(default=1.0, gt=0.75, le=1.0)
    iters: int = Field(default=100, ge=1)
    batch: int = Field(default=100, ge=1)
    steps: int = Field(default=100_000, ge=1)
    mcmc: McmcMode = McmcMode.PIVOT
    temperature: float = Field(default=2.26, gt=0.0)
    epoch: int = Field(default=1, ge=1)
    lattice: int = Field(default=50, ge=1)
    mode: PatchMode | NoiseMode | None = None
    fraction: float = Field(default=0.5, gt=0.0, lt=1.0)
    threshold: float | None = None
    direction: Direction | None = None
    stride: int | None = Field(default=None, ge=1)
    chains: int = Field(default=1, ge=1)
    log_level: str | None = None

    @model_validator(mode="after")
    def _check_mode(self) -> RunConfig:
        patch_commands = {Subcommand.ISING_LEARN, Subcommand.IMAGE_LEARN}
        if self.mode is None:
            return self
        if self.subcommand == Subcommand.IMAGE_LEARN and not isinstance(
            self.mode, PatchMode
        ):
            msg = f"--mode {self.mode} is not a patch sampling mode"
            raise ValueError(msg)
        if self.subcommand not in patch_commands and not isinstance(
            self.mode, NoiseMode
        ):
            msg = f"--mode {self.mode} is not a corruption mode"
            raise ValueError(msg)
        return self


class RunMetadata(RecordBase):
    """Record written as ``metadata.json`` next to every run's outputs."""

    command: Subcommand
    seed: int
    config: RunConfig
    versions: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)
    summary: dict[str, float] = Field(default_factory=dict)
    status: RunStatus = RunStatus.RUNNING
    error: str | None = None
    completed_at: datetime | None = None
