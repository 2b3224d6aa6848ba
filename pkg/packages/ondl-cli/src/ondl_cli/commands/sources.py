"""Markov-source pipelines: Ising configurations and image patches."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ondl_common.errors import DataError
from ondl_common.models import PatchMode
from ondl_common.storage import read_pgm, write_pgm, write_rows, write_spins_pgm
from ondl_engine.omf import OnlineNMF
from ondl_engine.sources import (
    IsingChain,
    PatchWalker,
    image_patch_minibatch,
    psnr,
    reconstruct_grid,
    spin_patch_minibatch,
)

if TYPE_CHECKING:
    from ondl_cli.commands.context import CommandContext

logger = logging.getLogger(__name__)


def _engine(ctx: CommandContext, k: int) -> OnlineNMF:
    return OnlineNMF.initialize(
        k * k,
        ctx.config.atoms,
        ctx.omf_params(),
        ctx.rng,
        slow_step_ms=ctx.settings.app.slow_step_ms,
    )


def run_ising_learn(ctx: CommandContext) -> dict[str, float]:
    """Learn from patches of Gibbs-chain configurations, one every ``--epoch`` steps."""
    config = ctx.config
    N, k = config.lattice, config.patch_size
    if k > N:
        msg = f"patch size {k} exceeds the {N}x{N} lattice"
        raise DataError(msg)
    chain = IsingChain(N, config.temperature, ctx.rng)
    engine = _engine(ctx, k)
    for spins in chain.configurations(config.epoch, config.iters):
        engine.step(spin_patch_minibatch(spins, k, config.batch, ctx.rng))
    ctx.write_learned(engine.W, engine.checkpoint(), engine.surrogate_trace, k)
    write_spins_pgm(ctx.recorder.output("final_config.pgm"), chain.spins)
    logger.info(
        "Ising run done: N=%d T=%.4g epoch=%d gibbs_steps=%d magnetization=%.4f",
        N,
        config.temperature,
        config.epoch,
        chain.steps_taken,
        chain.magnetization(),
    )
    return {
        "final_surrogate": engine.surrogate_trace[-1],
        "magnetization": chain.magnetization(),
        "energy": chain.energy(),
        "stability_supremum": engine.stability.supremum,
    }


def run_image_learn(ctx: CommandContext) -> dict[str, float]:
    """Learn from i.i.d. or random-walk image patches, then reconstruct the image."""
    config = ctx.config
    image = read_pgm(ctx.require("image"))
    k = config.patch_size
    mode = config.mode if isinstance(config.mode, PatchMode) else PatchMode.IID
    height, width = image.shape
    walker = (
        PatchWalker.uniform(k, height, width, ctx.rng)
        if mode is PatchMode.WALK
        else None
    )
    engine = _engine(ctx, k)
    positions: list[tuple[int, int, int]] = []
    for t in range(1, config.iters + 1):
        X, corners = image_patch_minibatch(
            image, k, config.batch, mode, walker, ctx.rng
        )
        engine.step(X)
        positions.extend((t, int(row), int(col)) for row, col in corners)
    ctx.write_learned(engine.W, engine.checkpoint(), engine.surrogate_trace, k)
    write_rows(ctx.recorder.output("positions.csv"), ("t", "row", "col"), positions)
    solver = ctx.settings.solver
    reconstruction = reconstruct_grid(
        image,
        engine.W,
        k,
        config.lam,
        config.stride,
        tol=solver.coding_tol,
        max_iter=solver.coding_max_iter,
    )
    write_pgm(ctx.recorder.output("reconstruction.pgm"), reconstruction)
    quality = psnr(image, reconstruction)
    logger.info(
        "Image reconstructed: size=%dx%d k=%d psnr=%.2f", height, width, k, quality
    )
    return {"final_surrogate": engine.surrogate_trace[-1], "psnr": quality}
