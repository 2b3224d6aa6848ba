"""Synthetic corruption of simple networks with ground-truth pair labels."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ondl_common.errors import DataError
from ondl_common.models import NoiseMode
from ondl_engine.motifs import Network

logger = logging.getLogger(__name__)

type Pair = tuple[int, int]


@dataclass(frozen=True)
class CorruptionResult:
    """A corrupted network with the pairs that changed and the evaluation labels.

    ``labels`` covers the pairs a denoiser classifies: the non-edges of the
    corrupted network for subtractive noise (True for pairs that were never
    edges), and its edges for additive noise (True for the inserted edges). In
    both modes True marks the class a low reconstructed weight should flag.
    """

    corrupted: Network
    mode: NoiseMode
    changed: list[Pair]
    labels: dict[Pair, bool]

    def labelled_names(self) -> dict[tuple[str, str], bool]:
        """Labels keyed by node label instead of index."""
        names = self.corrupted.labels
        return {(names[u], names[v]): flag for (u, v), flag in self.labels.items()}


def _ordered(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _remove_keeping_connected(
    graph: nx.Graph, quota: int, rng: np.random.Generator
) -> list[Pair]:
    edges = [_ordered(u, v) for u, v in graph.edges()]
    removed: list[Pair] = []
    for index in rng.permutation(len(edges)):
        if len(removed) == quota:
            break
        u, v = edges[index]
        graph.remove_edge(u, v)
        if nx.has_path(graph, u, v):
            removed.append((u, v))
        else:
            graph.add_edge(u, v)
    return removed


def _add_non_edges(
    graph: nx.Graph, n: int, quota: int, rng: np.random.Generator
) -> list[Pair]:
    adjacency = nx.to_numpy_array(graph, nodelist=range(n), weight=None) > 0
    rows, cols = np.triu_indices(n, k=1)
    free = ~adjacency[rows, cols]
    candidates = np.flatnonzero(free)
    if quota > candidates.size:
        msg = f"cannot add {quota} edges: only {candidates.size} non-adjacent pairs"
        raise DataError(msg)
    chosen = np.sort(rng.choice(candidates, size=quota, replace=False))
    added = [(int(rows[c]), int(cols[c])) for c in chosen]
    graph.add_edges_from(added)
    return added


def corrupt_network(
    network: Network, mode: NoiseMode, fraction: float, rng: np.random.Generator
) -> CorruptionResult:
    """Corrupt a simple network by ``ceil(fraction * |E|)`` edge changes.

    Subtractive noise deletes uniformly random edges, skipping any whose removal
    would disconnect the graph. Additive noise inserts uniformly random
    non-adjacent pairs.

    Raises:
        DataError: if the network is not simple, subtractive noise is asked of a
            disconnected graph, or the quota cannot be met.

    """
    if not network.is_simple:
        msg = "corruption needs a simple network: symmetric, unweighted, no self-loops"
        raise DataError(msg)
    if not 0.0 < fraction <= 1.0:
        msg = f"noise fraction must lie in (0, 1], got {fraction}"
        raise DataError(msg)
    graph = network.to_networkx()
    graph.add_nodes_from(range(network.n))
    n_edges = graph.number_of_edges()
    quota = math.ceil(fraction * n_edges)
    if mode is NoiseMode.SUBTRACTIVE:
        if network.n == 0 or not nx.is_connected(graph):
            msg = "subtractive noise needs a connected network"
            raise DataError(msg)
        changed = _remove_keeping_connected(graph, quota, rng)
        if len(changed) < quota:
            msg = (
                f"only {len(changed)} of {quota} edges can be removed "
                "without disconnecting the network"
            )
            raise DataError(msg)
    else:
        changed = _add_non_edges(graph, network.n, quota, rng)
    corrupted = Network(
        nx.to_scipy_sparse_array(graph, nodelist=range(network.n), weight=None),
        network.labels,
    )
    changed_set = set(changed)
    if mode is NoiseMode.SUBTRACTIVE:
        # every pair absent from the corrupted graph; removed edges are negatives
        adjacency = nx.to_numpy_array(graph, nodelist=range(network.n), weight=None)
        rows, cols = np.nonzero(np.triu(adjacency == 0, k=1))
        labels = {
            (u, v): (u, v) not in changed_set
            for u, v in zip(rows.tolist(), cols.tolist(), strict=True)
        }
    else:
        labels = {
            _ordered(u, v): _ordered(u, v) in changed_set for u, v in graph.edges()
        }
    logger.info(
        "Network corrupted: mode=%s fraction=%.3f edges=%d changed=%d labelled=%d",
        mode,
        fraction,
        n_edges,
        len(changed),
        len(labels),
    )
    return CorruptionResult(
        corrupted=corrupted, mode=mode, changed=sorted(changed), labels=labels
    )
