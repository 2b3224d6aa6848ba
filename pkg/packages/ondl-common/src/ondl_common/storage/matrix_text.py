"""Plain-text matrix files for dictionaries and aggregate checkpoints.

A matrix block is a header line ``"rows cols"`` followed by one line per row of
space-separated values. Values are written with ``repr(float)``, the shortest
representation that round-trips exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Checkpoint:
    """Aggregate statistics as stored on disk."""

    A: np.ndarray
    B: np.ndarray
    t: int
    r_scalar: float
    kappa1: float
    beta: float


def _format_block(matrix: np.ndarray) -> list[str]:
    rows, cols = matrix.shape
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(repr(float(v)) for v in row) for row in matrix)
    return lines


def _read_block(lines: Iterator[tuple[int, str]], path: Path) -> np.ndarray:
    try:
        lineno, header = next(lines)
    except StopIteration:
        msg = f"{path}: unexpected end of file, expected a matrix header"
        raise DataError(msg) from None
    parts = header.split()
    if len(parts) != 2:  # noqa: PLR2004
        msg = f"{path}:{lineno}: expected 'rows cols', got {header!r}"
        raise DataError(msg)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        msg = f"{path}:{lineno}: non-integer matrix header {header!r}"
        raise DataError(msg) from None
    matrix = np.empty((rows, cols), dtype=float)
    for i in range(rows):
        try:
            lineno, line = next(lines)
        except StopIteration:
            msg = f"{path}: expected {rows} rows, found {i}"
            raise DataError(msg) from None
        values = line.split()
        if len(values) != cols:
            msg = f"{path}:{lineno}: expected {cols} values, got {len(values)}"
            raise DataError(msg)
        try:
            matrix[i] = [float(v) for v in values]
        except ValueError:
            msg = f"{path}:{lineno}: non-numeric value in {line!r}"
            raise DataError(msg) from None
    return matrix


def _numbered_lines(path: Path) -> Iterator[tuple[int, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise DataError(msg) from exc
    return (
        (i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()
    )


def write_matrix(path: Path, matrix: np.ndarray) -> None:
    """Write a single matrix block to ``path``."""
    lines = _format_block(np.atleast_2d(matrix))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug("Matrix written: path=%s shape=%s", path, matrix.shape)


def read_matrix(path: Path) -> np.ndarray:
    """Read a single matrix block from ``path``."""
    return _read_block(_numbered_lines(path), path)


def write_checkpoint(path: Path, checkpoint: Checkpoint) -> None:
    """Write A and B blocks followed by the ``t r_scalar kappa1 beta`` trailer."""
    lines = _format_block(checkpoint.A) + _format_block(checkpoint.B)
    lines.append(
        f"{int(checkpoint.t)} {float(checkpoint.r_scalar)!r} "
        f"{float(checkpoint.kappa1)!r} {float(checkpoint.beta)!r}"
    )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug("Checkpoint written: path=%s t=%d", path, checkpoint.t)


def read_checkpoint(path: Path) -> Checkpoint:
    """Read a checkpoint written by :func:`write_checkpoint`."""
    lines = _numbered_lines(path)
    A = _read_block(lines, path)
    B = _read_block(lines, path)
    try:
        lineno, trailer = next(lines)
    except StopIteration:
        msg = f"{path}: missing 't r_scalar kappa1 beta' trailer"
        raise DataError(msg) from None
    parts = trailer.split()
    if len(parts) != 4:  # noqa: PLR2004
        msg = f"{path}:{lineno}: expected 't r_scalar kappa1 beta', got {trailer!r}"
        raise DataError(msg)
    try:
        return Checkpoint(
            A=A,
            B=B,
            t=int(parts[0]),
            r_scalar=float(parts[1]),
            kappa1=float(parts[2]),
            beta=float(parts[3]),
        )
    except ValueError:
        msg = f"{path}:{lineno}: malformed trailer {trailer!r}"
        raise DataError(msg) from None
