"""Network reconstruction by running averages of locally reconstructed patches."""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp

from ondl_common.errors import DataError
from ondl_engine.motifs import Motif, MotifSampler, Network
from ondl_engine.omf import sparse_code

if TYPE_CHECKING:
    from ondl_common.models import ReconstructionParams

logger = logging.getLogger(__name__)

_CODING_BLOCK = 1000

type Pair = tuple[int, int]


@dataclass
class ReconstructionState:
    """Running mean of every value proposed for each ordered node pair."""

    n: int
    values: dict[Pair, float] = field(default_factory=dict)
    counts: defaultdict[Pair, int] = field(default_factory=lambda: defaultdict(int))

    def fold(self, a: int, b: int, proposal: float) -> None:
        """Fold ``proposal`` into the running mean at ``(a, b)``."""
        key = (a, b)
        j = self.counts[key] + 1
        self.counts[key] = j
        self.values[key] = (1.0 - 1.0 / j) * self.values.get(key, 0.0) + proposal / j

    def value(self, a: int, b: int) -> float:
        """Reconstructed weight of ``(a, b)``; unvisited pairs are 0."""
        return self.values.get((a, b), 0.0)

    def pair_score(self, u: int, v: int) -> float:
        """Mean of the visited orientations of the unordered pair ``{u, v}``."""
        scores = [self.values[key] for key in ((u, v), (v, u)) if key in self.values]
        return sum(scores) / len(scores) if scores else 0.0

    @property
    def visited(self) -> int:
        """Number of ordered pairs with at least one proposal."""
        return len(self.values)

    def dense(self) -> np.ndarray:
        """Dense n x n reconstruction."""
        out = np.zeros((self.n, self.n))
        for (a, b), w in self.values.items():
            out[a, b] = w
        return out

    def to_network(self, labels: list[str] | None = None) -> Network:
        """Reconstruction as a network; zero means are dropped."""
        if not self.values:
            return Network(sp.csr_array((self.n, self.n)), labels)
        keys = np.array(list(self.values.keys()), dtype=np.int64)
        weights = np.fromiter(self.values.values(), dtype=float, count=len(keys))
        return Network(
            sp.coo_array((weights, (keys[:, 0], keys[:, 1])), shape=(self.n, self.n)),
            labels,
        )


def nr_reconstruct(
    network: Network,
    W: np.ndarray,
    params: ReconstructionParams,
    rng: np.random.Generator,
) -> ReconstructionState:
    """Reconstruct ``network`` from dictionary ``W`` along a k-chain motif chain.

    Each chain state is coded against ``W`` and its local reconstruction
    ``W h`` is folded entrywise into the running means of the node pairs it
    covers. States are coded in blocks, each column stopping on its own
    convergence, so the result does not depend on the block size. The folds
    follow chain order.
    """
    k = params.k
    if W.ndim != 2 or W.shape[0] != k * k:  # noqa: PLR2004
        msg = f"dictionary has {W.shape[0]} rows but k = {k} needs {k * k}"
        raise DataError(msg)
    started_at = time.monotonic()
    sampler = MotifSampler(
        network,
        Motif.k_chain(k),
        params.mcmc_mode,
        rng,
        init=params.init,
        max_tries=params.rejection_max_tries,
    )
    state = ReconstructionState(network.n)
    remaining = params.iterations
    while remaining > 0:
        block = min(_CODING_BLOCK, remaining)
        remaining -= block
        X, states = sampler.sample_patches(block)
        H = sparse_code(
            X,
            W,
            params.lam,
            tol=params.coding_tol,
            max_iter=params.coding_max_iter,
            per_column=True,
        )
        local = W @ H
        for column, x in enumerate(states):
            proposals = local[:, column]
            for a in range(k):
                for b in range(k):
                    state.fold(x[a], x[b], float(proposals[a * k + b]))
    logger.info(
        "NR finished: n=%d k=%d T=%d mode=%s visited=%d acceptance=%.3f "
        "duration_ms=%.0f",
        network.n,
        k,
        params.iterations,
        params.mcmc_mode,
        state.visited,
        sampler.acceptance_rate,
        (time.monotonic() - started_at) * 1000,
    )
    return state
