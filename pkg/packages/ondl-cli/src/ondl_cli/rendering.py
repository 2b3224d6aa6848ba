"""Atom grids: dictionary columns laid out as k x k image tiles."""

from __future__ import annotations

import math

import numpy as np

from ondl_common.errors import DataError


def normalize_tile(tile: np.ndarray) -> np.ndarray:
    """Min-max scale a tile to [0, 1]; a constant tile maps to 1 if positive, else 0."""
    low, high = float(tile.min()), float(tile.max())
    if high > low:
        return (tile - low) / (high - low)
    return np.full(tile.shape, 1.0 if high > 0 else 0.0)


def atom_grid(
    W: np.ndarray, k: int, *, columns: int | None = None, gap: int = 1
) -> np.ndarray:
    """Arrange the columns of ``W`` as k x k tiles, row by row, ``gap`` pixels apart."""
    if W.ndim != 2 or W.shape[0] != k * k:  # noqa: PLR2004
        msg = f"dictionary of shape {W.shape} does not hold {k}x{k} atoms"
        raise DataError(msg)
    r = W.shape[1]
    columns = columns or math.ceil(math.sqrt(r))
    rows = math.ceil(r / columns)
    pitch = k + gap
    grid = np.zeros((rows * pitch - gap, columns * pitch - gap))
    for j in range(r):
        top, left = (j // columns) * pitch, (j % columns) * pitch
        grid[top : top + k, left : left + k] = normalize_tile(W[:, j].reshape(k, k))
    return grid


def grid_tile(
    grid: np.ndarray, index: int, k: int, columns: int, gap: int = 1
) -> np.ndarray:
    """Cut tile ``index`` back out of an atom grid."""
    pitch = k + gap
    top, left = (index // columns) * pitch, (index % columns) * pitch
    return grid[top : top + k, left : left + k]
