"""Tests for concurrent homomorphism-chain diagnostics."""

from collections.abc import Callable

from ondl_cli.commands.diagnostics import diagnose_chains
from ondl_common.models import McmcMode
from ondl_engine.motifs import Motif, Network, hom_distribution_bruteforce


async def test_chains_run_with_spawned_seeds(
    cycle: Callable[[int], Network],
) -> None:
    """Verify each chain gets its own seed, index and TV trace."""
    network = cycle(6)
    motif = Motif.k_chain(3)
    target = hom_distribution_bruteforce(network, motif)
    results = await diagnose_chains(
        network, motif, McmcMode.GLAUBER, target, 2000, 500, 3, 3
    )
    assert [d.chain for d in results] == [0, 1, 2]
    for diagnostics in results:
        assert diagnostics.steps == 2000
        assert [step for step, _ in diagnostics.tv_trace] == [500, 1000, 1500, 2000]
        assert all(0.0 <= tv <= 1.0 for _, tv in diagnostics.tv_trace)
        assert set(diagnostics.counts) <= set(target)
    assert results[0].counts != results[1].counts


async def test_same_seed_same_counts(cycle: Callable[[int], Network]) -> None:
    """Verify a rerun with the same seed visits the same states."""
    network = cycle(6)
    motif = Motif.k_chain(3)
    target = hom_distribution_bruteforce(network, motif)
    first, second = [
        await diagnose_chains(network, motif, McmcMode.PIVOT, target, 800, 400, 9, 2)
        for _ in range(2)
    ]
    assert [d.counts for d in first] == [d.counts for d in second]


async def test_long_chain_approaches_target(
    cycle: Callable[[int], Network],
) -> None:
    """Verify a long Glauber chain on a cycle ends close to the target."""
    network = cycle(6)
    motif = Motif.k_chain(3)
    target = hom_distribution_bruteforce(network, motif)
    (diagnostics,) = await diagnose_chains(
        network, motif, McmcMode.GLAUBER, target, 20_000, 5000, 11, 1
    )
    assert len(target) == 24
    assert diagnostics.final_tv < 0.1
