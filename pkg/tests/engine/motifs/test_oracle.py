"""Tests for the enumerated homomorphism distribution and table distances."""

import itertools
from collections.abc import Callable

import numpy as np
import pytest

from ondl_common.errors import DataError
from ondl_engine.motifs import (
    Motif,
    Network,
    empirical_distribution,
    hom_distribution_bruteforce,
    motif_weight,
    tv_distance,
)


def test_three_chain_on_six_cycle_is_uniform(cycle: Callable[[int], Network]) -> None:
    """Verify the 24 homomorphisms of a 3-chain into C6 are equally likely."""
    pi = hom_distribution_bruteforce(cycle(6), Motif.k_chain(3))
    assert len(pi) == 24
    assert all(p == pytest.approx(1 / 24) for p in pi.values())


def test_single_node_motif_is_uniform_over_nodes(
    weighted_network: Network,
) -> None:
    """Verify an edgeless one-node motif spreads mass evenly."""
    pi = hom_distribution_bruteforce(weighted_network, Motif(np.zeros((1, 1))))
    assert pi == pytest.approx({(v,): 0.2 for v in range(5)})


def test_weighted_chain_matches_motif_weights(weighted_network: Network) -> None:
    """Verify probabilities are motif weights over their total."""
    motif = Motif.k_chain(3)
    pi = hom_distribution_bruteforce(weighted_network, motif)
    weights = {
        x: motif_weight(weighted_network, motif, x)
        for x in itertools.product(range(5), repeat=3)
    }
    Z = sum(weights.values())
    expected = {x: w / Z for x, w in weights.items() if w > 0}
    assert pi.keys() == expected.keys()
    for x, p in expected.items():
        assert pi[x] == pytest.approx(p)


def test_backward_edge_and_self_loop() -> None:
    """Verify edges against node order and self-loop exponents are oriented."""
    network = Network(np.array([[1.0, 2.0], [0.0, 3.0]]))
    motif = Motif(np.array([[2.0, 0.0], [1.0, 0.0]]))
    pi = hom_distribution_bruteforce(network, motif)
    weights = {(0, 0): 1.0 * 1.0, (1, 0): 9.0 * 2.0, (1, 1): 9.0 * 3.0}
    Z = sum(weights.values())
    assert pi == pytest.approx({x: w / Z for x, w in weights.items()})


def test_enumeration_guard(cycle: Callable[[int], Network]) -> None:
    """Verify n^k beyond the guard is refused."""
    with pytest.raises(DataError, match="enumeration guard"):
        hom_distribution_bruteforce(cycle(10), Motif.k_chain(4), max_states=1000)


def test_no_homomorphism() -> None:
    """Verify an edgeless network has no chain homomorphisms."""
    with pytest.raises(DataError, match="no homomorphism"):
        hom_distribution_bruteforce(Network(np.zeros((3, 3))), Motif.k_chain(2))


def test_empirical_distribution() -> None:
    """Verify relative frequencies of visited states."""
    table = empirical_distribution([(0, 1), (1, 2), (0, 1), (0, 1)])
    assert table == {(0, 1): 0.75, (1, 2): 0.25}
    with pytest.raises(DataError, match="empty sample"):
        empirical_distribution([])


def test_tv_distance_bounds() -> None:
    """Verify TV is 0 for equal tables and 1 for disjoint supports."""
    p = {(0,): 0.5, (1,): 0.5}
    assert tv_distance(p, p) == 0.0
    assert tv_distance(p, {(2,): 1.0}) == 1.0
    assert tv_distance(p, {(0,): 1.0}) == pytest.approx(0.5)


@pytest.mark.parametrize(
    ("table", "match"),
    [({(0,): 0.4}, "sums to"), ({(0,): 1.5, (1,): -0.5}, "negative")],
)
def test_tv_distance_validates(table: dict[tuple[int, ...], float], match: str) -> None:
    """Verify tables must be probability vectors."""
    with pytest.raises(DataError, match=match):
        tv_distance(table, {(0,): 1.0})
