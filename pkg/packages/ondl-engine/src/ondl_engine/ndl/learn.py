"""Network dictionary learning from mesoscale patches along a motif chain."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError, NumericalError
from ondl_common.models import NDLParams, OMFParams
from ondl_engine.motifs import Motif, MotifSampler
from ondl_engine.omf import ConstraintSpec, OnlineNMF

if TYPE_CHECKING:
    from ondl_common.storage import Checkpoint
    from ondl_engine.motifs import Network

logger = logging.getLogger(__name__)

CHAIN_PATTERN_3 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


@dataclass(frozen=True)
class NetworkDictionary:
    """Learned atoms with their aggregates and dominance scores."""

    W: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    dominance: np.ndarray
    k: int
    checkpoint: Checkpoint
    surrogate_trace: list[float] = field(default_factory=list)
    acceptance_rate: float = 1.0

    @property
    def n_atoms(self) -> int:
        """Number of atoms."""
        return self.W.shape[1]

    def atom(self, index: int) -> np.ndarray:
        """Atom ``index`` reshaped to k x k."""
        return self.W[:, index].reshape(self.k, self.k)


def dominance_scores(P: np.ndarray) -> np.ndarray:
    """Normalized square roots of the diagonal of the code aggregate ``P``."""
    diag = np.diagonal(P)
    if np.any(diag < 0):
        msg = "aggregate diagonal has negative entries"
        raise DataError(msg)
    roots = np.sqrt(diag)
    total = float(roots.sum())
    if total == 0.0:
        msg = "degenerate aggregates"
        raise NumericalError(msg)
    return roots / total


def threshold_atom(atom: np.ndarray, level: float = 0.5) -> np.ndarray:
    """Binarize an atom after scaling its largest entry to 1."""
    peak = float(np.max(atom))
    if peak <= 0.0:
        return np.zeros(atom.shape, dtype=np.int8)
    return (atom / peak >= level).astype(np.int8)


def dominant_atom(dictionary: NetworkDictionary) -> int:
    """Index of the atom with the highest dominance score."""
    return int(np.argmax(dictionary.dominance))


def matching_atoms(
    W: np.ndarray, k: int, pattern: np.ndarray, level: float = 0.5
) -> list[int]:
    """Indices of atoms whose thresholded k x k form equals ``pattern``."""
    return [
        j
        for j in range(W.shape[1])
        if np.array_equal(threshold_atom(W[:, j].reshape(k, k), level), pattern)
    ]


def ndl_learn(
    network: Network,
    params: NDLParams,
    rng: np.random.Generator,
    *,
    check_invariants: bool = False,
    slow_step_ms: float = 500.0,
) -> NetworkDictionary:
    """Learn ``params.n_atoms`` atoms from k-chain patches of ``network``.

    Each iteration advances the chain ``params.batch_size`` times, stacks the
    flattened patches into a data matrix, and takes one online NMF step.
    """
    started_at = time.monotonic()
    motif = Motif.k_chain(params.k)
    sampler = MotifSampler(
        network,
        motif,
        params.mcmc_mode,
        rng,
        init=params.init,
        max_tries=params.rejection_max_tries,
    )
    omf_params = OMFParams(
        lam=params.lam,
        kappa1=params.kappa1,
        kappa2=params.kappa2,
        beta=params.beta,
        coding_tol=params.coding_tol,
        coding_max_iter=params.coding_max_iter,
        check_invariants=check_invariants,
    )
    engine = OnlineNMF.initialize(
        params.k * params.k,
        params.n_atoms,
        omf_params,
        rng,
        constraint=ConstraintSpec.nonnegative_ball(params.dict_radius),
        slow_step_ms=slow_step_ms,
    )
    for _ in range(params.iterations):
        X, _ = sampler.sample_patches(params.batch_size)
        engine.step(X)
    dominance = dominance_scores(engine.stats.A)
    logger.info(
        "NDL finished: n=%d k=%d r=%d T=%d mode=%s acceptance=%.3f surrogate=%.6g "
        "duration_ms=%.0f",
        network.n,
        params.k,
        params.n_atoms,
        params.iterations,
        params.mcmc_mode,
        sampler.acceptance_rate,
        engine.surrogate_trace[-1],
        (time.monotonic() - started_at) * 1000,
    )
    return NetworkDictionary(
        W=engine.W.copy(),
        P=engine.stats.A.copy(),
        Q=engine.stats.B.copy(),
        dominance=dominance,
        k=params.k,
        checkpoint=engine.checkpoint(),
        surrogate_trace=list(engine.surrogate_trace),
        acceptance_rate=sampler.acceptance_rate,
    )
