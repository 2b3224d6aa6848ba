"""Online NMF on long Markovian streams: runtime invariants and loss trends."""

from collections.abc import Callable

import numpy as np
import pytest

from ondl_common.models import OMFParams, PatchMode
from ondl_engine.omf import OnlineNMF
from ondl_engine.sources import (
    IsingChain,
    PatchWalker,
    image_patch_minibatch,
    spin_patch_minibatch,
)

pytestmark = pytest.mark.integration


def test_checked_run_on_patch_walk(
    rng: np.random.Generator, make_engine: Callable[..., OnlineNMF]
) -> None:
    """Verify 500 checked steps on a patch walk raise no invariant violation."""
    image = rng.uniform(size=(12, 12))
    walker = PatchWalker.uniform(2, 12, 12, rng)
    engine = make_engine(
        d=4,
        r=2,
        lam=0.1,
        kappa1=0.05,
        data_radius=4.0,
        track_history=True,
        check_invariants=True,
    )
    for _ in range(500):
        X, _ = image_patch_minibatch(image, 2, 4, PatchMode.WALK, walker, rng)
        engine.step(X)
    assert engine.t == 500
    assert engine.stability.finite
    assert engine.empirical_loss() <= engine.surrogate_trace[-1] + 1e-8


def test_rank_one_stream_is_fit_exactly(
    make_engine: Callable[..., OnlineNMF],
) -> None:
    """Verify a constant exactly factorable stream drives the surrogate to zero."""
    X = np.outer([1.0, 2.0, 0.5, 1.0], [0.3, 1.0, 2.0, 0.7, 1.5])
    engine = make_engine(d=4, r=1, lam=0.0, radius=100.0)
    for _ in range(50):
        engine.step(X)
    assert engine.surrogate_trace[-1] < 1e-6


def test_iterate_stability_on_ising_stream(rng: np.random.Generator) -> None:
    """Verify the scaled iterate increments stay bounded over 10^4 steps."""
    chain = IsingChain(10, 5.0, rng)
    engine = OnlineNMF.initialize(9, 4, OMFParams(kappa1=0.1), rng)
    for config in chain.configurations(epoch=100, count=10_000):
        engine.step(spin_patch_minibatch(config, 3, 10, rng))
    tracker = engine.stability
    assert tracker.finite
    assert tracker.supremum_until(10_000) <= 2 * tracker.supremum_until(1_000)


def test_surrogate_falls_as_lattice_orders(rng: np.random.Generator) -> None:
    """Verify the late surrogate is below the early one on a cold 50x50 lattice."""
    chain = IsingChain(50, 0.5, rng)
    engine = OnlineNMF.initialize(25, 4, OMFParams(lam=0.1), rng)
    for config in chain.configurations(epoch=2500, count=100):
        engine.step(spin_patch_minibatch(config, 5, 20, rng))
    trace = np.array(engine.surrogate_trace)
    assert trace[-10:].mean() < trace[:10].mean()
