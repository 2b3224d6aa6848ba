"""Tests for patch streams and grid reconstruction."""

import math

import numpy as np
import pytest
from scipy import stats

from ondl_common.errors import DataError
from ondl_common.models import PatchMode
from ondl_engine.sources import (
    IsingConfig,
    PatchWalker,
    extract_patches,
    image_patch_minibatch,
    psnr,
    reconstruct_grid,
    spin_patch_minibatch,
    spins_to_unit,
    synthetic_stripes,
    unit_to_spins,
)
from ondl_engine.sources.patches import grid_positions


class TestSpinPatches:
    """Test patches drawn from spin lattices."""

    def test_aligned_lattices(self, rng: np.random.Generator) -> None:
        """Verify all-up and all-down lattices give all-ones and all-zeros."""
        up = IsingConfig(np.ones((5, 5), dtype=np.int8), 1.0)
        down = IsingConfig(-np.ones((5, 5), dtype=np.int8), 1.0)
        np.testing.assert_array_equal(spin_patch_minibatch(up, 3, 4, rng), 1.0)
        np.testing.assert_array_equal(spin_patch_minibatch(down, 3, 4, rng), 0.0)

    def test_checkerboard_patches(self, rng: np.random.Generator) -> None:
        """Verify every 2x2 crop of a checkerboard is one of its two patterns."""
        board = np.where(np.add.outer(np.arange(4), np.arange(4)) % 2 == 0, 1, -1)
        X = spin_patch_minibatch(IsingConfig(board.astype(np.int8), 1.0), 2, 50, rng)
        assert X.shape == (4, 50)
        patterns = {tuple(col) for col in X.T}
        assert patterns <= {(1.0, 0.0, 0.0, 1.0), (0.0, 1.0, 1.0, 0.0)}

    def test_patch_larger_than_lattice(self, rng: np.random.Generator) -> None:
        """Verify k > N is rejected."""
        config = IsingConfig(np.ones((3, 3), dtype=np.int8), 1.0)
        with pytest.raises(DataError, match="does not fit"):
            spin_patch_minibatch(config, 4, 1, rng)

    def test_spin_map_round_trip(self) -> None:
        """Verify the affine spin map inverts exactly."""
        spins = np.array([[1, -1], [-1, 1]], dtype=np.int8)
        np.testing.assert_array_equal(unit_to_spins(spins_to_unit(spins)), spins)


class TestImagePatches:
    """Test i.i.d. and random-walk patch sampling from images."""

    def test_constant_image(self, rng: np.random.Generator) -> None:
        """Verify a constant image yields constant columns."""
        X, corners = image_patch_minibatch(
            np.full((6, 6), 0.3), 2, 10, PatchMode.IID, None, rng
        )
        np.testing.assert_allclose(X, 0.3)
        assert corners.shape == (10, 2)

    def test_patches_wrap_periodically(self) -> None:
        """Verify patches at the far corner wrap around both edges."""
        image = np.arange(9, dtype=float).reshape(3, 3)
        X = extract_patches(image, np.array([[2, 2]]), 2)
        np.testing.assert_array_equal(X[:, 0], [8.0, 6.0, 2.0, 0.0])

    def test_walk_moves_one_step_at_a_time(self, rng: np.random.Generator) -> None:
        """Verify consecutive corners differ by one unit step modulo the grid."""
        walker = PatchWalker(0, 0, 2, 5, 7)
        _, corners = image_patch_minibatch(
            rng.uniform(size=(5, 7)), 2, 200, PatchMode.WALK, walker, rng
        )
        path = np.vstack([[0, 0], corners])
        steps = np.diff(path, axis=0)
        steps = (steps + (1, 1)) % (5, 7) - (1, 1)
        assert np.all(np.abs(steps).sum(axis=1) == 1)
        assert walker.position == tuple(corners[-1])

    def test_walker_never_stays_put(self, rng: np.random.Generator) -> None:
        """Verify each step takes one of the four unit moves with equal odds."""
        walker = PatchWalker(4, 4, 2, 9, 9)
        path = np.vstack([[4, 4], walker.walk(4000, rng)])
        steps = (np.diff(path, axis=0) + 1) % 9 - 1
        moves, counts = np.unique(steps, axis=0, return_counts=True)
        assert sorted(map(tuple, moves.tolist())) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
        assert np.all(np.abs(counts - 1000) < 150)

    def test_walk_mode_needs_walker(self, rng: np.random.Generator) -> None:
        """Verify walk mode without a walker is rejected."""
        with pytest.raises(DataError, match="PatchWalker"):
            image_patch_minibatch(np.ones((4, 4)), 2, 3, PatchMode.WALK, None, rng)

    def test_walker_visits_every_corner(self, rng: np.random.Generator) -> None:
        """Verify the walk on a 10x10 torus is irreducible in practice."""
        walker = PatchWalker.uniform(3, 10, 10, rng)
        corners = walker.walk(100_000, rng)
        assert len({(int(r), int(c)) for r, c in corners}) == 100

    def test_iid_corners_are_uniform(self, rng: np.random.Generator) -> None:
        """Verify i.i.d. corners pass a chi-square uniformity test."""
        _, corners = image_patch_minibatch(
            np.zeros((3, 3)), 2, 100_000, PatchMode.IID, None, rng
        )
        counts = np.bincount(corners[:, 0] * 3 + corners[:, 1], minlength=9)
        assert stats.chisquare(counts).pvalue > 0.01


class TestReconstructGrid:
    """Test overlap-averaged image reconstruction."""

    def test_grid_positions_include_last_corner(self) -> None:
        """Verify the last position is added when the stride skips it."""
        assert grid_positions(7, 3, 3) == [0, 3, 4]
        assert grid_positions(6, 2, 2) == [0, 2, 4]

    def test_complete_basis_is_exact(self, rng: np.random.Generator) -> None:
        """Verify the identity dictionary reproduces the image."""
        image = rng.uniform(size=(7, 9))
        result = reconstruct_grid(image, np.eye(9), 3, stride=2, tol=1e-12)
        np.testing.assert_allclose(result, image, atol=1e-6)

    def test_stripes_with_stripe_atoms(self) -> None:
        """Verify period-2 stripes are recovered exactly from their two atoms."""
        image = synthetic_stripes(6, 6, 2)
        W = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        result = reconstruct_grid(image, W, 2, stride=1, tol=1e-12, max_iter=1000)
        assert psnr(image, result) == math.inf

    def test_constant_atom_preserves_block_means(
        self, rng: np.random.Generator
    ) -> None:
        """Verify a single constant atom replaces each block by its mean."""
        image = rng.uniform(size=(4, 4))
        W = np.full((4, 1), 0.5)
        result = reconstruct_grid(image, W, 2, stride=2, tol=1e-12, max_iter=1000)
        blocks = image.reshape(2, 2, 2, 2).mean(axis=(1, 3))
        np.testing.assert_allclose(result, np.kron(blocks, np.ones((2, 2))), atol=1e-6)

    def test_wrong_dictionary_rows(self) -> None:
        """Verify the dictionary must have k^2 rows."""
        with pytest.raises(DataError, match="expected 4"):
            reconstruct_grid(np.zeros((4, 4)), np.ones((5, 2)), 2)

    def test_stripes_pattern(self) -> None:
        """Verify stripes alternate by column."""
        image = synthetic_stripes(2, 4, 2)
        np.testing.assert_array_equal(image, [[1, 0, 1, 0], [1, 0, 1, 0]])
        with pytest.raises(DataError, match="period"):
            synthetic_stripes(2, 4, 1)

    def test_psnr_value(self) -> None:
        """Verify PSNR is 20 dB for a uniform error of 0.1."""
        assert psnr(np.zeros((3, 3)), np.full((3, 3), 0.1)) == pytest.approx(20.0)
        assert psnr(np.ones((2, 2)), np.ones((2, 2))) == math.inf
