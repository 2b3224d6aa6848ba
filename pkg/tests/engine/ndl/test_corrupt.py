"""Tests for synthetic network corruption."""

import math
from collections.abc import Callable

import networkx as nx
import numpy as np
import pytest

from ondl_common.errors import DataError
from ondl_common.models import NoiseMode
from ondl_engine.motifs import Network
from ondl_engine.ndl import corrupt_network


@pytest.fixture
def small_world() -> Network:
    """Connected Watts-Strogatz graph on 40 nodes."""
    return Network.from_networkx(nx.connected_watts_strogatz_graph(40, 4, 0.1, seed=3))


class TestValidation:
    """Test rejected inputs."""

    def test_needs_simple_network(
        self, weighted_network: Network, rng: np.random.Generator
    ) -> None:
        """Verify weighted networks cannot be corrupted."""
        with pytest.raises(DataError, match="simple network"):
            corrupt_network(weighted_network, NoiseMode.ADDITIVE, 0.5, rng)

    @pytest.mark.parametrize("fraction", [0.0, -0.1, 1.5])
    def test_fraction_bounds(
        self,
        cycle: Callable[[int], Network],
        rng: np.random.Generator,
        fraction: float,
    ) -> None:
        """Verify the noise fraction lies in (0, 1]."""
        with pytest.raises(DataError, match="noise fraction"):
            corrupt_network(cycle(6), NoiseMode.ADDITIVE, fraction, rng)

    def test_tree_cannot_lose_edges(self, rng: np.random.Generator) -> None:
        """Verify every edge of a tree is a bridge."""
        tree = Network.from_networkx(nx.path_graph(6))
        with pytest.raises(DataError, match="only 0 of 2 edges"):
            corrupt_network(tree, NoiseMode.SUBTRACTIVE, 0.4, rng)

    def test_disconnected_subtractive(self, rng: np.random.Generator) -> None:
        """Verify subtractive noise needs a connected network."""
        graph = nx.disjoint_union(nx.cycle_graph(4), nx.cycle_graph(4))
        with pytest.raises(DataError, match="connected"):
            corrupt_network(
                Network.from_networkx(graph), NoiseMode.SUBTRACTIVE, 0.2, rng
            )

    def test_complete_graph_cannot_gain_edges(self, rng: np.random.Generator) -> None:
        """Verify additive noise needs enough non-adjacent pairs."""
        with pytest.raises(DataError, match="cannot add 5 edges"):
            corrupt_network(
                Network.from_networkx(nx.complete_graph(5)),
                NoiseMode.ADDITIVE,
                0.5,
                rng,
            )


class TestSubtractive:
    """Test edge removal."""

    def test_removes_quota_and_stays_connected(
        self, small_world: Network, rng: np.random.Generator
    ) -> None:
        """Verify ceil(f |E|) edges vanish and the graph stays connected."""
        n_edges = small_world.nnz // 2
        result = corrupt_network(small_world, NoiseMode.SUBTRACTIVE, 0.3, rng)
        quota = math.ceil(0.3 * n_edges)
        assert len(result.changed) == quota
        graph = result.corrupted.to_networkx()
        assert nx.is_connected(graph)
        assert graph.number_of_edges() == n_edges - quota
        for u, v in result.changed:
            assert small_world.weight(u, v) == 1.0
            assert result.corrupted.weight(u, v) == 0.0

    def test_labels_cover_non_edges(
        self, small_world: Network, rng: np.random.Generator
    ) -> None:
        """Verify labels cover corrupted non-edges with removed edges negative."""
        result = corrupt_network(small_world, NoiseMode.SUBTRACTIVE, 0.2, rng)
        n = small_world.n
        n_edges = result.corrupted.nnz // 2
        assert len(result.labels) == n * (n - 1) // 2 - n_edges
        negatives = sorted(pair for pair, flag in result.labels.items() if not flag)
        assert negatives == result.changed
        assert all(u < v for u, v in result.labels)


class TestAdditive:
    """Test edge insertion."""

    def test_adds_non_edges(
        self, cycle: Callable[[int], Network], rng: np.random.Generator
    ) -> None:
        """Verify added pairs were non-adjacent and are the positive labels."""
        network = cycle(10)
        result = corrupt_network(network, NoiseMode.ADDITIVE, 0.5, rng)
        assert len(result.changed) == 5
        assert result.corrupted.nnz // 2 == 15
        for u, v in result.changed:
            assert u < v
            assert network.weight(u, v) == 0.0
        assert len(result.labels) == 15
        assert sorted(pair for pair, flag in result.labels.items() if flag) == (
            result.changed
        )
        assert result.corrupted.is_simple

    def test_labelled_names(self, rng: np.random.Generator) -> None:
        """Verify labels can be keyed by node names."""
        graph = nx.relabel_nodes(nx.cycle_graph(5), {i: f"n{i}" for i in range(5)})
        result = corrupt_network(
            Network.from_networkx(graph), NoiseMode.ADDITIVE, 0.2, rng
        )
        named = result.labelled_names()
        assert len(named) == len(result.labels)
        assert all(u.startswith("n") and v.startswith("n") for u, v in named)

    def test_same_seed_same_corruption(self, cycle: Callable[[int], Network]) -> None:
        """Verify identical seeds change identical pairs."""
        runs = [
            corrupt_network(
                cycle(12), NoiseMode.ADDITIVE, 0.5, np.random.default_rng(2)
            ).changed
            for _ in range(2)
        ]
        assert runs[0] == runs[1]
