"""Motifs, homomorphism weights, cached power row sums, and mesoscale patches."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ondl_engine.motifs.network import Network

type Homomorphism = tuple[int, ...]


@dataclass(frozen=True)
class Motif:
    """A template network ``F = ([k], A_F)`` with nonnegative edge exponents."""

    A_F: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """Check ``A_F`` is a nonnegative square matrix with k >= 1."""
        A_F = self.A_F
        square = A_F.ndim == 2 and A_F.shape[0] == A_F.shape[1]  # noqa: PLR2004
        if not square or A_F.shape[0] < 1:
            msg = f"motif matrix must be square with k >= 1, got shape {A_F.shape}"
            raise DataError(msg)
        if np.any(A_F < 0) or not np.all(np.isfinite(A_F)):
            msg = "motif matrix must be finite and nonnegative"
            raise DataError(msg)

    @classmethod
    def k_chain(cls, k: int) -> Motif:
        """Directed path ``1 -> 2 -> ... -> k``."""
        if k < 1:
            msg = f"k-chain needs k >= 1, got {k}"
            raise DataError(msg)
        return cls(np.eye(k, k=1))

    @property
    def k(self) -> int:
        """Number of motif nodes."""
        return self.A_F.shape[0]

    @cached_property
    def edges(self) -> tuple[tuple[int, int, float], ...]:
        """Motif edges ``(i, j, exponent)`` with positive exponent."""
        rows, cols = np.nonzero(self.A_F)
        return tuple(
            (int(i), int(j), float(self.A_F[i, j]))
            for i, j in zip(rows, cols, strict=True)
        )

    @cached_property
    def is_chain(self) -> bool:
        """True when the motif is exactly the k-chain."""
        return bool(np.array_equal(self.A_F, np.eye(self.k, k=1)))


def motif_weights(network: Network, motif: Motif, xs: np.ndarray) -> np.ndarray:
    """Return ``prod_{i,j} A(x(i), x(j)) ** A_F(i, j)`` for each row of ``xs``."""
    xs = np.atleast_2d(xs)
    weights = np.ones(xs.shape[0])
    for i, j, exponent in motif.edges:
        factor = network.weights_at(xs[:, i], xs[:, j])
        weights *= factor if exponent == 1.0 else factor**exponent
    return weights


def motif_weight(network: Network, motif: Motif, x: Homomorphism) -> float:
    """Weight of a single vertex map."""
    return float(motif_weights(network, motif, np.array([x]))[0])


def is_homomorphism(network: Network, motif: Motif, x: Homomorphism) -> bool:
    """True when ``x`` has the right length and positive motif weight."""
    return len(x) == motif.k and motif_weight(network, motif, x) > 0.0


class PowerRowSums:
    """Cached vectors ``A^i 1`` for ``i = 0, ..., k - 1``.

    Entry ``v`` of ``A^i 1`` is the total weight of i-step walks leaving ``v``.
    """

    def __init__(self, network: Network, k: int) -> None:
        """Compute the vectors by repeated sparse mat-vec products."""
        if k < 1:
            msg = f"power row sums need k >= 1, got {k}"
            raise DataError(msg)
        vectors = [np.ones(network.n)]
        A = network.adjacency
        for _ in range(k - 1):
            vectors.append(A @ vectors[-1])
        self._vectors = vectors

    @property
    def k(self) -> int:
        """Number of cached powers."""
        return len(self._vectors)

    def row_sums(self, power: int) -> np.ndarray:
        """Return ``A^power 1``."""
        return self._vectors[power]

    @property
    def top(self) -> np.ndarray:
        """Return ``A^(k-1) 1``."""
        return self._vectors[-1]


def mesoscale_patch(network: Network, x: Homomorphism) -> np.ndarray:
    """The k x k matrix ``A_x(a, b) = A(x(a), x(b))``."""
    idx = np.asarray(x, dtype=np.int64)
    k = idx.size
    return network.weights_at(np.repeat(idx, k), np.tile(idx, k)).reshape(k, k)


def patch_matrix(network: Network, xs: Sequence[Homomorphism]) -> np.ndarray:
    """Stack flattened mesoscale patches of ``xs`` as columns of a k^2 x N matrix."""
    idx = np.asarray(xs, dtype=np.int64)
    n_samples, k = idx.shape
    rows = np.repeat(idx, k, axis=1)
    cols = np.tile(idx, (1, k))
    return network.weights_at(rows.ravel(), cols.ravel()).reshape(n_samples, k * k).T
