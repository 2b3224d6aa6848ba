"""Tests for network dictionary learning."""

from collections.abc import Callable

import numpy as np
import pytest

from ondl_common.errors import DataError, NumericalError
from ondl_common.models import McmcMode, NDLParams
from ondl_engine.motifs import Network
from ondl_engine.ndl import (
    CHAIN_PATTERN_3,
    dominance_scores,
    dominant_atom,
    matching_atoms,
    ndl_learn,
    threshold_atom,
)


class TestAtomHelpers:
    """Test dominance scores and atom thresholding."""

    def test_dominance_normalizes_square_roots(self) -> None:
        """Verify scores are square roots of the diagonal over their sum."""
        P = np.diag([1.0, 4.0, 0.0])
        np.testing.assert_allclose(dominance_scores(P), [1 / 3, 2 / 3, 0.0])

    def test_dominance_rejects_negative_diagonal(self) -> None:
        """Verify a negative diagonal is a data error."""
        with pytest.raises(DataError, match="negative"):
            dominance_scores(np.diag([1.0, -1.0]))

    def test_dominance_of_zero_aggregates(self) -> None:
        """Verify all-zero aggregates are degenerate."""
        with pytest.raises(NumericalError, match="degenerate aggregates"):
            dominance_scores(np.zeros((3, 3)))

    def test_threshold_scales_by_peak(self) -> None:
        """Verify entries at half the peak or more survive."""
        atom = np.array([[0.0, 2.0], [1.0, 0.9]])
        np.testing.assert_array_equal(threshold_atom(atom), [[0, 1], [1, 0]])
        np.testing.assert_array_equal(threshold_atom(np.zeros((2, 2))), 0)

    def test_matching_atoms(self) -> None:
        """Verify atoms are matched after thresholding."""
        chain = CHAIN_PATTERN_3.ravel() * 0.8
        other = np.eye(3).ravel()
        W = np.column_stack([other, chain, chain + 0.1 * other])
        assert matching_atoms(W, 3, CHAIN_PATTERN_3) == [1, 2]


class TestNdlLearn:
    """Test learning on small graphs."""

    def test_single_atom_on_cycle_is_chain(
        self,
        cycle: Callable[[int], Network],
        make_ndl_params: Callable[..., NDLParams],
        rng: np.random.Generator,
    ) -> None:
        """Verify the only atom learned from a cycle is the chain pattern."""
        learned = ndl_learn(cycle(10), make_ndl_params(n_atoms=1), rng)
        assert learned.W.shape == (9, 1)
        chain = threshold_atom(learned.atom(0))
        np.testing.assert_array_equal(chain, CHAIN_PATTERN_3)
        assert learned.dominance.tolist() == [1.0]
        assert dominant_atom(learned) == 0

    def test_outputs_are_consistent(
        self,
        weighted_network: Network,
        make_ndl_params: Callable[..., NDLParams],
        rng: np.random.Generator,
    ) -> None:
        """Verify shapes, constraint membership and bookkeeping of a run."""
        params = make_ndl_params(n_atoms=4, iterations=15, dict_radius=50.0)
        learned = ndl_learn(weighted_network, params, rng)
        assert learned.n_atoms == 4
        assert np.all(learned.W >= 0.0)
        assert np.linalg.norm(learned.W) <= 50.0 + 1e-9
        assert learned.P.shape == (4, 4)
        assert learned.Q.shape == (4, 9)
        assert learned.dominance.sum() == pytest.approx(1.0)
        assert np.all(learned.dominance >= 0.0)
        assert len(learned.surrogate_trace) == 15
        assert learned.checkpoint.t == 15
        assert 0.0 <= learned.acceptance_rate <= 1.0

    def test_more_atoms_fit_better(
        self,
        weighted_network: Network,
        make_ndl_params: Callable[..., NDLParams],
    ) -> None:
        """Verify 25 atoms leave a smaller surrogate than a single atom."""
        finals = {
            r: ndl_learn(
                weighted_network,
                make_ndl_params(n_atoms=r, iterations=20),
                np.random.default_rng(4),
            ).surrogate_trace[-1]
            for r in (1, 25)
        }
        assert finals[25] < finals[1]

    @pytest.mark.parametrize("mode", list(McmcMode))
    def test_every_chain_mode_runs(
        self,
        weighted_network: Network,
        make_ndl_params: Callable[..., NDLParams],
        rng: np.random.Generator,
        mode: McmcMode,
    ) -> None:
        """Verify learning works with each motif chain."""
        params = make_ndl_params(mcmc_mode=mode, iterations=3, batch_size=20)
        learned = ndl_learn(weighted_network, params, rng)
        assert learned.W.shape == (9, 4)

    def test_same_seed_same_dictionary(
        self, cycle: Callable[[int], Network], make_ndl_params: Callable[..., NDLParams]
    ) -> None:
        """Verify identical seeds reproduce the dictionary."""
        runs = [
            ndl_learn(cycle(12), make_ndl_params(), np.random.default_rng(8)).W
            for _ in range(2)
        ]
        np.testing.assert_array_equal(runs[0], runs[1])
