"""Patch streams from spin lattices and images, and overlap-averaged reconstruction."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ondl_common.errors import DataError
from ondl_common.models import PatchMode
from ondl_engine.omf.coding import sparse_code
from ondl_engine.sources.ising import IsingConfig

logger = logging.getLogger(__name__)

# up, down, left, right
_MOVES = np.array([(-1, 0), (1, 0), (0, -1), (0, 1)])


def _check_patch_size(k: int, height: int, width: int) -> None:
    if not 1 <= k <= min(height, width):
        msg = f"patch size {k} does not fit a {height}x{width} grid"
        raise DataError(msg)


def extract_patches(grid: np.ndarray, corners: np.ndarray, k: int) -> np.ndarray:
    """Return the k^2 x len(corners) matrix of flattened periodic k x k patches."""
    height, width = grid.shape
    offsets = np.arange(k)
    rows = (corners[:, 0, None] + offsets) % height
    cols = (corners[:, 1, None] + offsets) % width
    patches = grid[rows[:, :, None], cols[:, None, :]]
    return patches.reshape(len(corners), k * k).T.astype(float)


def spins_to_unit(spins: np.ndarray) -> np.ndarray:
    """Map spins -1/+1 to 0/1."""
    return (np.asarray(spins, dtype=float) + 1.0) / 2.0


def unit_to_spins(values: np.ndarray) -> np.ndarray:
    """Inverse of :func:`spins_to_unit`."""
    return (2.0 * np.asarray(values, dtype=float) - 1.0).astype(np.int8)


def spin_patch_minibatch(
    config: IsingConfig, k: int, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Sample ``count`` k x k patches at uniform corners, mapped to [0, 1]."""
    _check_patch_size(k, config.N, config.N)
    corners = rng.integers(config.N, size=(count, 2))
    return extract_patches(spins_to_unit(config.spins), corners, k)


@dataclass
class PatchWalker:
    """Top-left corner of a patch doing a simple symmetric random walk on a torus."""

    row: int
    col: int
    k: int
    height: int
    width: int

    def __post_init__(self) -> None:
        """Check the patch fits and wrap the corner into range."""
        _check_patch_size(self.k, self.height, self.width)
        self.row %= self.height
        self.col %= self.width

    @classmethod
    def uniform(
        cls, k: int, height: int, width: int, rng: np.random.Generator
    ) -> PatchWalker:
        """Start at a uniformly random corner."""
        row, col = int(rng.integers(height)), int(rng.integers(width))
        return cls(row, col, k, height, width)

    @property
    def position(self) -> tuple[int, int]:
        """Current corner."""
        return self.row, self.col

    def walk(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Take ``count`` unit steps and return the corner after each one."""
        moves = _MOVES[rng.integers(4, size=count)]
        path = np.cumsum(moves, axis=0) + (self.row, self.col)
        path %= (self.height, self.width)
        if count:
            self.row, self.col = int(path[-1, 0]), int(path[-1, 1])
        return path


def image_patch_minibatch(  # noqa: PLR0913
    image: np.ndarray,
    k: int,
    count: int,
    mode: PatchMode,
    walker: PatchWalker | None,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``count`` patches and return them with their corners.

    In ``iid`` mode corners are uniform over the periodic grid. In ``walk``
    mode the walker moves one step before each patch, so consecutive corners
    differ by one unit step.
    """
    height, width = image.shape
    _check_patch_size(k, height, width)
    if mode is PatchMode.WALK:
        if walker is None:
            msg = "walk mode needs a PatchWalker"
            raise DataError(msg)
        corners = walker.walk(count, rng)
    else:
        corners = np.column_stack(
            [rng.integers(height, size=count), rng.integers(width, size=count)]
        )
    return extract_patches(image, corners, k), corners


def grid_positions(length: int, k: int, stride: int) -> list[int]:
    """Corners ``0, stride, 2*stride, ...`` plus the last position ``length - k``."""
    positions = list(range(0, length - k + 1, stride))
    if positions[-1] != length - k:
        positions.append(length - k)
    return positions


def reconstruct_grid(  # noqa: PLR0913
    image: np.ndarray,
    W: np.ndarray,
    k: int,
    lam: float = 0.0,
    stride: int | None = None,
    *,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> np.ndarray:
    """Code every patch on the stride grid against ``W`` and average overlaps.

    Patches stay inside the image; the last row and column of corners are
    always included so every pixel is covered. The result is clipped to [0, 1].
    """
    height, width = image.shape
    _check_patch_size(k, height, width)
    if W.shape[0] != k * k:
        msg = f"dictionary has {W.shape[0]} rows, expected {k * k} for {k}x{k} patches"
        raise DataError(msg)
    stride = stride or k
    corners = np.array(
        [
            (r, c)
            for r in grid_positions(height, k, stride)
            for c in grid_positions(width, k, stride)
        ]
    )
    X = extract_patches(image, corners, k)
    H = sparse_code(X, W, lam, tol=tol, max_iter=max_iter)
    approx = (W @ H).T.reshape(-1, k, k)
    total = np.zeros((height, width))
    counts = np.zeros((height, width))
    for (r, c), patch in zip(corners, approx, strict=True):
        total[r : r + k, c : c + k] += patch
        counts[r : r + k, c : c + k] += 1
    logger.debug(
        "Grid reconstructed: size=%dx%d patches=%d stride=%d",
        height,
        width,
        len(corners),
        stride,
    )
    return np.clip(total / counts, 0.0, 1.0)


def synthetic_stripes(height: int, width: int, period: int) -> np.ndarray:
    """Binary vertical stripes: column ``j`` is 1 when ``j mod period < period / 2``."""
    if period < 2:  # noqa: PLR2004
        msg = f"stripe period must be at least 2, got {period}"
        raise DataError(msg)
    row = (np.arange(width) % period < period / 2).astype(float)
    return np.tile(row, (height, 1))


def psnr(reference: np.ndarray, estimate: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB for images in [0, 1]."""
    mse = float(np.mean((reference - estimate) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * float(np.log10(1.0 / mse))
