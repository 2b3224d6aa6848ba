"""Shared state and helpers for command pipelines."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import UsageError
from ondl_common.models import NDLParams, OMFParams, ReconstructionParams
from ondl_common.storage import (
    read_edge_list,
    write_checkpoint,
    write_loss_trace,
    write_matrix,
    write_pgm,
)
from ondl_cli.rendering import atom_grid
from ondl_engine.motifs import Network

if TYPE_CHECKING:
    from pathlib import Path

    from ondl_cli.runs import RunRecorder
    from ondl_common.config import Settings
    from ondl_common.models import RunConfig
    from ondl_common.storage import Checkpoint

logger = logging.getLogger(__name__)


@dataclass
class CommandContext:
    """Run configuration, environment settings, recorder and the run's generator."""

    config: RunConfig
    settings: Settings
    recorder: RunRecorder
    rng: np.random.Generator

    @classmethod
    def create(
        cls, config: RunConfig, settings: Settings, recorder: RunRecorder
    ) -> CommandContext:
        """Seed the generator from the run seed."""
        return cls(config, settings, recorder, np.random.default_rng(config.seed))

    def require(self, name: str) -> Path:
        """Return the path-valued option ``name`` or fail with a usage error."""
        value = getattr(self.config, name)
        if value is None:
            msg = f"--{name.replace('_', '-')} is required for {self.config.subcommand}"
            raise UsageError(msg)
        return value

    def load_network(self) -> Network:
        """Read ``--edges`` into a network."""
        edges = read_edge_list(self.require("edges"), undirected=self.config.undirected)
        network = Network.from_edge_list(edges)
        logger.info("Network loaded: %r", network)
        return network

    def omf_params(self) -> OMFParams:
        """Factorization parameters from flags and solver settings."""
        solver = self.settings.solver
        return OMFParams(
            lam=self.config.lam,
            kappa1=self.config.kappa1,
            kappa2=self.config.kappa2,
            beta=self.config.beta,
            coding_tol=solver.coding_tol,
            coding_max_iter=solver.coding_max_iter,
            dict_tol=solver.dict_tol,
            dict_max_sweeps=solver.dict_max_sweeps,
        )

    def ndl_params(self) -> NDLParams:
        """Network dictionary learning parameters."""
        return NDLParams(
            k=self.config.motif_k,
            iterations=self.config.iters,
            batch_size=self.config.batch,
            n_atoms=self.config.atoms,
            lam=self.config.lam,
            kappa1=self.config.kappa1,
            kappa2=self.config.kappa2,
            beta=self.config.beta,
            mcmc_mode=self.config.mcmc,
            coding_tol=self.settings.solver.coding_tol,
            coding_max_iter=self.settings.solver.coding_max_iter,
            rejection_max_tries=self.settings.sampling.rejection_max_tries,
        )

    def reconstruction_params(self) -> ReconstructionParams:
        """Network reconstruction parameters; ``--steps`` is the chain length."""
        return ReconstructionParams(
            k=self.config.motif_k,
            iterations=self.config.steps,
            lam=self.config.lam,
            mcmc_mode=self.config.mcmc,
            coding_tol=self.settings.solver.coding_tol,
            coding_max_iter=self.settings.solver.coding_max_iter,
            rejection_max_tries=self.settings.sampling.rejection_max_tries,
        )

    def write_learned(
        self,
        W: np.ndarray,
        checkpoint: Checkpoint,
        surrogate_trace: list[float],
        k: int,
    ) -> None:
        """Write the dictionary, aggregates, loss trace and atom grid."""
        write_matrix(self.recorder.output("dictionary.txt"), W)
        write_checkpoint(self.recorder.output("aggregates.txt"), checkpoint)
        write_loss_trace(self.recorder.output("loss_trace.csv"), surrogate_trace)
        write_pgm(self.recorder.output("atoms.pgm"), atom_grid(W, k))
