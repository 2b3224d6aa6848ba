"""Parameter and run models."""

from ondl_common.models.params import (
    Direction,
    InitMethod,
    McmcMode,
    NDLParams,
    NoiseMode,
    OMFParams,
    PatchMode,
    ReconstructionParams,
    StepRule,
)
from ondl_common.models.run import RunConfig, RunMetadata, RunStatus, Subcommand

__all__ = [
    "Direction",
    "InitMethod",
    "McmcMode",
    "NDLParams",
    "NoiseMode",
    "OMFParams",
    "PatchMode",
    "ReconstructionParams",
    "RunConfig",
    "RunMetadata",
    "RunStatus",
    "StepRule",
    "Subcommand",
]
