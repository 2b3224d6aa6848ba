"""Homomorphism-chain diagnostics against the exact target distribution."""

from __future__ import annotations

import asyncio
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.storage import write_rows
from ondl_engine.motifs import (
    Motif,
    MotifSampler,
    hom_distribution_bruteforce,
    tv_distance,
)

if TYPE_CHECKING:
    from ondl_cli.commands.context import CommandContext
    from ondl_common.models import McmcMode
    from ondl_engine.motifs import Homomorphism, Network

logger = logging.getLogger(__name__)


@dataclass
class ChainDiagnostics:
    """Visit counts and the TV-to-target trace of one chain."""

    chain: int
    counts: Counter[Homomorphism] = field(default_factory=Counter)
    tv_trace: list[tuple[int, float]] = field(default_factory=list)
    acceptance_rate: float = 1.0

    @property
    def steps(self) -> int:
        """Number of recorded states."""
        return sum(self.counts.values())

    def empirical(self) -> dict[Homomorphism, float]:
        """Relative visit frequencies."""
        total = self.steps
        return {x: c / total for x, c in self.counts.items()}

    @property
    def final_tv(self) -> float:
        """Last recorded distance, NaN before the first checkpoint."""
        return self.tv_trace[-1][1] if self.tv_trace else float("nan")


def diagnose_chain(  # noqa: PLR0913
    network: Network,
    motif: Motif,
    mode: McmcMode,
    target: dict[Homomorphism, float],
    steps: int,
    interval: int,
    seed: np.random.SeedSequence,
    chain: int = 0,
) -> ChainDiagnostics:
    """Run one chain, measuring TV to ``target`` every ``interval`` steps."""
    sampler = MotifSampler(network, motif, mode, np.random.default_rng(seed))
    diagnostics = ChainDiagnostics(chain)
    done = 0
    while done < steps:
        block = min(interval, steps - done)
        diagnostics.counts.update(sampler.run(block))
        done += block
        tv = tv_distance(diagnostics.empirical(), target)
        diagnostics.tv_trace.append((done, tv))
    diagnostics.acceptance_rate = sampler.acceptance_rate
    logger.info(
        "Chain finished: chain=%d mode=%s steps=%d tv=%.4f acceptance=%.3f",
        chain,
        mode,
        steps,
        diagnostics.final_tv,
        diagnostics.acceptance_rate,
    )
    return diagnostics


async def diagnose_chains(  # noqa: PLR0913
    network: Network,
    motif: Motif,
    mode: McmcMode,
    target: dict[Homomorphism, float],
    steps: int,
    interval: int,
    seed: int,
    chains: int,
) -> list[ChainDiagnostics]:
    """Run ``chains`` independent chains in worker threads with spawned seeds."""
    seeds = np.random.SeedSequence(seed).spawn(chains)
    return list(
        await asyncio.gather(
            *(
                asyncio.to_thread(
                    diagnose_chain, network, motif, mode, target, steps, interval, s, i
                )
                for i, s in enumerate(seeds)
            )
        )
    )


def _write_chain(
    ctx: CommandContext,
    diagnostics: ChainDiagnostics,
    target: dict[Homomorphism, float],
    labels: list[str],
    suffix: str,
) -> None:
    empirical = diagnostics.empirical()
    rows = (
        ("-".join(labels[v] for v in x), empirical.get(x, 0.0), target.get(x, 0.0))
        for x in sorted(target.keys() | empirical.keys())
    )
    write_rows(
        ctx.recorder.output(f"empirical_dist{suffix}.csv"),
        ("state", "empirical", "target"),
        rows,
    )
    write_rows(
        ctx.recorder.output(f"tv_trace{suffix}.csv"),
        ("step", "tv"),
        diagnostics.tv_trace,
    )


def run_hom_diag(ctx: CommandContext) -> dict[str, float]:
    """Compare chain visit frequencies with the enumerated homomorphism distribution."""
    config = ctx.config
    network = ctx.load_network()
    motif = Motif.k_chain(config.motif_k)
    target = hom_distribution_bruteforce(
        network, motif, ctx.settings.sampling.oracle_max_states
    )
    started_at = time.monotonic()
    results = asyncio.run(
        diagnose_chains(
            network,
            motif,
            config.mcmc,
            target,
            config.steps,
            ctx.settings.sampling.diag_interval,
            config.seed,
            config.chains,
        )
    )
    for diagnostics in results:
        suffix = f"_chain{diagnostics.chain}" if config.chains > 1 else ""
        _write_chain(ctx, diagnostics, target, network.labels, suffix)
    logger.info(
        "Diagnostics done: chains=%d support=%d duration_ms=%.0f",
        config.chains,
        len(target),
        (time.monotonic() - started_at) * 1000,
    )
    return {
        "support": float(len(target)),
        "final_tv": max(d.final_tv for d in results),
        "acceptance_rate": min(d.acceptance_rate for d in results),
    }
