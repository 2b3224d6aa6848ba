"""Exact homomorphism distributions by enumeration, and distances between tables."""

from __future__ import annotations

import logging
from collections import Counter
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from ondl_engine.motifs.motif import Homomorphism, Motif
    from ondl_engine.motifs.network import Network

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-9


def hom_distribution_bruteforce(
    network: Network, motif: Motif, max_states: int = 10_000_000
) -> dict[Homomorphism, float]:
    """Return ``pi(x) = prod A(x(i), x(j)) ** A_F(i, j) / Z`` over its support.

    Raises:
        DataError: if ``n**k`` exceeds ``max_states`` or no homomorphism exists.

    """
    n, k = network.n, motif.k
    if n**k > max_states:
        msg = (
            f"{n}^{k} = {n**k} vertex maps exceed the enumeration guard "
            f"of {max_states}; "
            "use a smaller graph or motif"
        )
        raise DataError(msg)
    A = network.dense()
    tensor = np.ones((n,) * k)
    for i, j, exponent in motif.edges:
        factor = A if exponent == 1.0 else A**exponent
        shape = [1] * k
        if i == j:
            shape[i] = n
            tensor = tensor * np.diagonal(factor).reshape(shape)
            continue
        shape[i] = shape[j] = n
        # axes are laid out in increasing motif-node order
        oriented = factor if i < j else factor.T
        tensor = tensor * oriented.reshape(shape)
    Z = float(tensor.sum())
    if Z <= 0.0:
        msg = "no homomorphism from the motif into the network"
        raise DataError(msg)
    support = np.argwhere(tensor > 0)
    probabilities = tensor[tuple(support.T)] / Z
    logger.debug("Oracle enumerated: n=%d k=%d support=%d", n, k, len(support))
    return {
        tuple(int(v) for v in x): float(p)
        for x, p in zip(support, probabilities, strict=True)
    }


def empirical_distribution(
    samples: Iterable[Homomorphism],
) -> dict[Homomorphism, float]:
    """Relative frequencies of the visited states."""
    counts = Counter(tuple(x) for x in samples)
    total = sum(counts.values())
    if total == 0:
        msg = "empirical distribution of an empty sample"
        raise DataError(msg)
    return {x: c / total for x, c in counts.items()}


def tv_distance(
    p: Mapping[Homomorphism, float], q: Mapping[Homomorphism, float]
) -> float:
    """Half the l1 distance between two probability tables over a common index set."""
    for name, table in (("p", p), ("q", q)):
        mass = sum(table.values())
        if abs(mass - 1.0) > NORMALIZATION_TOL:
            msg = f"{name} sums to {mass!r}, not 1"
            raise DataError(msg)
        if any(v < 0 for v in table.values()):
            msg = f"{name} has negative entries"
            raise DataError(msg)
    keys = p.keys() | q.keys()
    return 0.5 * sum(abs(p.get(x, 0.0) - q.get(x, 0.0)) for x in keys)
