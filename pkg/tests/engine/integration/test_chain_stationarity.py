"""Long-run stationarity of the Ising and motif chains against exact oracles."""

import logging
from collections.abc import Callable

import numpy as np
import pytest

from ondl_common.models import McmcMode
from ondl_engine.motifs import (
    Motif,
    MotifSampler,
    Network,
    empirical_distribution,
    hom_distribution_bruteforce,
    tv_distance,
)
from ondl_engine.sources import IsingChain, boltzmann_distribution

pytestmark = pytest.mark.integration

logger = logging.getLogger(__name__)

ISING_STEPS = 1_000_000


def _ising_tv(N: int, temperature: float, seed: int) -> float:
    chain = IsingChain(N, temperature, np.random.default_rng(seed))
    record = chain.run(ISING_STEPS, record_states=True)
    assert record is not None
    counts = np.bincount(record, minlength=2 ** (N * N)).astype(float)
    if temperature <= 1.0:
        # the chain stays in one ground-state basin; the law is flip-invariant
        counts = (counts + counts[::-1]) / 2
    empirical = counts / counts.sum()
    return 0.5 * float(np.abs(empirical - boltzmann_distribution(N, temperature)).sum())


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("temperature", [0.5, 2.26, 5.0])
def test_ising_chain_matches_boltzmann(N: int, temperature: float) -> None:
    """Verify 10^6 Gibbs steps land within TV 0.05 of the exact law."""
    assert _ising_tv(N, temperature, seed=11) < 0.05


def test_ising_two_by_two_at_unit_temperature() -> None:
    """Verify the 2x2 lattice at T=1 lands within TV 0.02 of the exact law."""
    assert _ising_tv(2, 1.0, seed=12) < 0.02


def test_glauber_is_uniform_on_cycle(cycle: Callable[[int], Network]) -> None:
    """Verify the Glauber chain is uniform over the 24 homomorphisms into C6."""
    network, motif = cycle(6), Motif.k_chain(3)
    oracle = hom_distribution_bruteforce(network, motif)
    assert len(oracle) == 24
    sampler = MotifSampler(
        network, motif, McmcMode.GLAUBER, np.random.default_rng(13)
    )
    empirical = empirical_distribution(sampler.run(100_000))
    assert tv_distance(empirical, oracle) < 0.05


def test_exact_pivot_matches_motif_law(weighted_network: Network) -> None:
    """Verify exact Pivot samples the weighted motif law; log approximate mode."""
    motif = Motif.k_chain(3)
    oracle = hom_distribution_bruteforce(weighted_network, motif)
    distances: dict[McmcMode, float] = {}
    for mode in (McmcMode.PIVOT, McmcMode.PIVOT_APPROX):
        sampler = MotifSampler(
            weighted_network, motif, mode, np.random.default_rng(14)
        )
        empirical = empirical_distribution(sampler.run(200_000))
        distances[mode] = tv_distance(empirical, oracle)
    logger.info(
        "Pivot stationarity: exact_tv=%.4f approx_tv=%.4f",
        distances[McmcMode.PIVOT],
        distances[McmcMode.PIVOT_APPROX],
    )
    assert distances[McmcMode.PIVOT] < 0.05
