"""Markov chains on homomorphisms of a motif into a network.

Three chains are provided. Rejection sampling draws i.i.d. uniform vertex maps
until one has positive weight. The Glauber chain resamples one motif node
from its exact conditional. The Pivot chain moves the first node of a k-chain
by a Metropolis-Hastings corrected random walk and then redraws the tail.
All draws from local distributions go through an explicit inverse CDF.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ondl_common.errors import SamplingError, UsageError
from ondl_common.models import InitMethod, McmcMode
from ondl_engine.motifs.motif import (
    Homomorphism,
    Motif,
    PowerRowSums,
    is_homomorphism,
    motif_weights,
    patch_matrix,
)
from ondl_engine.motifs.network import Network

logger = logging.getLogger(__name__)

_REJECTION_BLOCK = 4096


def _draw(indices: np.ndarray, weights: np.ndarray, rng: np.random.Generator) -> int:
    cdf = np.cumsum(weights)
    pos = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return int(indices[min(pos, indices.size - 1)])


def rejection_sample_hom(
    network: Network,
    motif: Motif,
    rng: np.random.Generator,
    max_tries: int = 1_000_000,
) -> Homomorphism:
    """Propose uniform vertex maps until one has positive motif weight.

    Raises:
        SamplingError: if ``max_tries`` proposals are all rejected.

    """
    tries = 0
    while tries < max_tries:
        block = min(_REJECTION_BLOCK, max_tries - tries)
        proposals = rng.integers(network.n, size=(block, motif.k))
        hits = np.flatnonzero(motif_weights(network, motif, proposals) > 0.0)
        if hits.size:
            x = tuple(int(v) for v in proposals[hits[0]])
            logger.debug(
                "Rejection sampling accepted: tries=%d x=%s", tries + hits[0] + 1, x
            )
            return x
        tries += block
    msg = f"no homomorphism found after {max_tries} proposals"
    raise SamplingError(msg)


def walk_sample_hom(
    network: Network,
    motif: Motif,
    rng: np.random.Generator,
    max_tries: int = 1_000_000,
) -> Homomorphism:
    """Seed a k-chain by a weighted random walk from a uniform start with out-weight."""
    if not motif.is_chain:
        msg = "random-walk initialization only applies to k-chain motifs"
        raise UsageError(msg)
    starts = np.flatnonzero(network.out_weights > 0)
    if motif.k == 1:
        return (int(rng.integers(network.n)),)
    for _ in range(max_tries):
        if starts.size == 0:
            break
        x = [int(starts[rng.integers(starts.size)])]
        while len(x) < motif.k:
            indices, weights = network.out_row(x[-1])
            if indices.size == 0:
                break
            x.append(_draw(indices, weights, rng))
        if len(x) == motif.k:
            return tuple(x)
    msg = f"no k-chain walk of length {motif.k} found"
    raise SamplingError(msg)


def _glauber_conditional(
    network: Network, motif: Motif, x: Homomorphism, v: int
) -> tuple[np.ndarray, np.ndarray] | None:
    """Support and weights of node ``v``'s conditional, None when unconstrained."""
    factors: list[tuple[np.ndarray, np.ndarray, float]] = []
    for i, j, exponent in motif.edges:
        if i == j == v:
            diag = network.diagonal
            support = np.flatnonzero(diag)
            factors.append((support, diag[support], exponent))
        elif j == v:
            factors.append((*network.out_row(x[i]), exponent))
        elif i == v:
            factors.append((*network.in_row(x[j]), exponent))
    if not factors:
        return None
    support, weights = None, None
    for indices, values, exponent in factors:
        powered = values if exponent == 1.0 else values**exponent
        if support is None or weights is None:
            support, weights = indices, powered.copy()
            continue
        support, ia, ib = np.intersect1d(
            support, indices, assume_unique=True, return_indices=True
        )
        weights = weights[ia] * powered[ib]
    return support, weights


def glauber_update(
    network: Network, motif: Motif, x: Homomorphism, rng: np.random.Generator
) -> Homomorphism:
    """Resample one uniformly chosen motif node from its exact conditional."""
    v = int(rng.integers(motif.k))
    conditional = _glauber_conditional(network, motif, x, v)
    if conditional is None:
        w = int(rng.integers(network.n))
    else:
        support, weights = conditional
        if support.size == 0 or not np.any(weights > 0):
            msg = (
                f"empty Glauber conditional at node {v} for x={x}; "
                "x is not a homomorphism"
            )
            raise SamplingError(msg)
        w = _draw(support, weights, rng)
    return (*x[:v], w, *x[v + 1 :])


@dataclass(frozen=True)
class PivotOutcome:
    """Result of one Pivot update."""

    x: Homomorphism
    accepted: bool


def pivot_acceptance(
    network: Network,
    a: int,
    b: int,
    mode: McmcMode,
    power_sums: PowerRowSums | None = None,
) -> float:
    """Acceptance probability for moving the pivot from ``a`` to ``b``.

    Exact mode is the Metropolis-Hastings ratio for the pivot marginal
    ``mu = A^(k-1) 1`` under the random-walk proposal, so it also carries the
    out-weights of both endpoints instead of a bare ``mu`` ratio times the in/out
    ratio at ``a``. Approximate mode is that in/out weight ratio alone.
    """
    out = network.out_weights
    if mode is McmcMode.PIVOT_APPROX:
        return min(1.0, float(network.in_weights[a] / out[a]))
    if power_sums is None:
        msg = "exact pivot acceptance needs the power row sums"
        raise UsageError(msg)
    mu = power_sums.top
    numerator = mu[b] * network.weight(b, a) * out[a]
    denominator = mu[a] * network.weight(a, b) * out[b]
    if denominator <= 0.0:
        return 0.0
    return min(1.0, float(numerator / denominator))


def pivot_update(
    network: Network,
    motif: Motif,
    x: Homomorphism,
    rng: np.random.Generator,
    mode: McmcMode = McmcMode.PIVOT,
    power_sums: PowerRowSums | None = None,
) -> PivotOutcome:
    """One Pivot chain step on a k-chain motif.

    On acceptance the tail ``x(2..k)`` is redrawn. In exact mode node ``i`` is
    drawn with weight ``A(x'(i-1), w) * (A^(k-i) 1)(w)``, the conditional of the
    target distribution given ``x'(i-1)``; approximate mode drops the second
    factor and walks plain ``A``-weighted steps. A pivot without out-weight, a
    rejected move, or a dead end while extending leaves ``x`` unchanged and
    counts as a rejection; the tail is never redrawn around an unmoved pivot.
    """
    if not motif.is_chain:
        msg = "the Pivot chain only applies to k-chain motifs"
        raise UsageError(msg)
    if mode is McmcMode.GLAUBER:
        msg = "pivot_update needs a pivot mode"
        raise UsageError(msg)
    if mode is McmcMode.PIVOT and power_sums is None:
        power_sums = PowerRowSums(network, motif.k)
    a = x[0]
    if network.out_weights[a] <= 0.0:
        return PivotOutcome(x, accepted=False)
    indices, weights = network.out_row(a)
    b = _draw(indices, weights, rng)
    if rng.random() > pivot_acceptance(network, a, b, mode, power_sums):
        return PivotOutcome(x, accepted=False)
    tail = [b]
    k = motif.k
    for i in range(1, k):
        indices, weights = network.out_row(tail[-1])
        if power_sums is not None and mode is McmcMode.PIVOT:
            weights = weights * power_sums.row_sums(k - 1 - i)[indices]
        if indices.size == 0 or not np.any(weights > 0):
            return PivotOutcome(x, accepted=False)
        tail.append(_draw(indices, weights, rng))
    return PivotOutcome(tuple(tail), accepted=True)


class MotifSampler:
    """Stateful motif chain over a fixed network."""

    def __init__(  # noqa: PLR0913
        self,
        network: Network,
        motif: Motif,
        mode: McmcMode,
        rng: np.random.Generator,
        *,
        x0: Homomorphism | None = None,
        init: InitMethod = InitMethod.REJECTION,
        max_tries: int = 1_000_000,
    ) -> None:
        """Draw the first homomorphism unless ``x0`` is given."""
        if mode is not McmcMode.GLAUBER and not motif.is_chain:
            msg = f"mode {mode} needs a k-chain motif; use glauber for general motifs"
            raise UsageError(msg)
        self._network = network
        self._motif = motif
        self._mode = mode
        self._rng = rng
        self._power_sums = (
            PowerRowSums(network, motif.k) if mode is McmcMode.PIVOT else None
        )
        if x0 is None:
            if init is InitMethod.WALK:
                x0 = walk_sample_hom(network, motif, rng, max_tries)
            else:
                x0 = rejection_sample_hom(network, motif, rng, max_tries)
        elif not is_homomorphism(network, motif, x0):
            msg = f"initial map {x0} is not a homomorphism"
            raise UsageError(msg)
        self._x: Homomorphism = tuple(int(v) for v in x0)
        self.accepted = 0
        self.rejected = 0
        if mode is not McmcMode.GLAUBER and not network.is_bidirectional:
            logger.warning(
                "Pivot chain on a network that is not bidirectional — mode=%s n=%d",
                mode,
                network.n,
            )

    @property
    def state(self) -> Homomorphism:
        """Current homomorphism."""
        return self._x

    @property
    def network(self) -> Network:
        """Target network."""
        return self._network

    @property
    def motif(self) -> Motif:
        """Motif."""
        return self._motif

    @property
    def mode(self) -> McmcMode:
        """Chain type."""
        return self._mode

    @property
    def acceptance_rate(self) -> float:
        """Fraction of accepted pivot moves (1.0 for Glauber)."""
        total = self.accepted + self.rejected
        return self.accepted / total if total else 1.0

    def step(self) -> Homomorphism:
        """Advance one update and return the new state."""
        if self._mode is McmcMode.GLAUBER:
            self._x = glauber_update(self._network, self._motif, self._x, self._rng)
            self.accepted += 1
            return self._x
        outcome = pivot_update(
            self._network, self._motif, self._x, self._rng, self._mode, self._power_sums
        )
        if outcome.accepted:
            self.accepted += 1
        else:
            self.rejected += 1
        self._x = outcome.x
        return self._x

    def run(self, n_steps: int) -> list[Homomorphism]:
        """Advance ``n_steps`` updates and return every visited state."""
        return [self.step() for _ in range(n_steps)]

    def sample_patches(self, n_steps: int) -> tuple[np.ndarray, list[Homomorphism]]:
        """Advance ``n_steps`` updates; return the patch matrix and the states."""
        states = self.run(n_steps)
        return patch_matrix(self._network, states), states
