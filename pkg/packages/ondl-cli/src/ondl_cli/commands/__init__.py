"""Command pipelines keyed by subcommand."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ondl_cli.commands.context import CommandContext
from ondl_cli.commands.diagnostics import run_hom_diag
from ondl_cli.commands.networks import run_denoise, run_ndl_learn, run_reconstruct
from ondl_cli.commands.sources import run_image_learn, run_ising_learn
from ondl_common.models import Subcommand

if TYPE_CHECKING:
    from collections.abc import Callable

COMMANDS: dict[Subcommand, Callable[[CommandContext], dict[str, float]]] = {
    Subcommand.NDL_LEARN: run_ndl_learn,
    Subcommand.RECONSTRUCT: run_reconstruct,
    Subcommand.DENOISE: run_denoise,
    Subcommand.ISING_LEARN: run_ising_learn,
    Subcommand.IMAGE_LEARN: run_image_learn,
    Subcommand.HOM_DIAG: run_hom_diag,
}

__all__ = ["COMMANDS", "CommandContext"]
