"""Dictionary constraint sets: finite unions of boxes cut by Frobenius balls."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ondl_common.errors import DataError

logger = logging.getLogger(__name__)

_DYKSTRA_MAX_ITER = 500
_DYKSTRA_TOL = 1e-12


def _is_cone(lower: np.ndarray, upper: np.ndarray) -> bool:
    lower_ok = np.all((lower == 0.0) | np.isneginf(lower))
    upper_ok = np.all((upper == 0.0) | np.isposinf(upper))
    return bool(lower_ok and upper_ok)


def _ball(v: np.ndarray, radius: float) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    if norm <= radius:
        return v
    return v * (radius / norm)


def project_box_ball(
    v: np.ndarray, lower: np.ndarray, upper: np.ndarray, radius: float
) -> np.ndarray:
    """Euclidean projection onto ``{lower <= x <= upper, ||x|| <= radius}``.

    When the box is a closed convex cone (bounds in ``{0, +/-inf}``) clamping
    then rescaling is exact. Otherwise Dykstra's alternating projections are
    used and the result is clamped back into the box.
    """
    clamped = np.clip(v, lower, upper)
    if not math.isfinite(radius) or float(np.linalg.norm(clamped)) <= radius:
        return clamped
    if _is_cone(lower, upper):
        return _ball(clamped, radius)
    x = v.astype(float, copy=True)
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for _ in range(_DYKSTRA_MAX_ITER):
        y = np.clip(x + p, lower, upper)
        p = x + p - y
        x_next = _ball(y + q, radius)
        q = y + q - x_next
        if float(np.linalg.norm(x_next - x)) < _DYKSTRA_TOL:
            x = x_next
            break
        x = x_next
    return np.clip(x, lower, upper)


@dataclass(frozen=True)
class ConstraintPiece:
    """One compact convex piece: an entrywise box intersected with a Frobenius ball.

    ``lower`` and ``upper`` are scalars or arrays broadcastable to the dictionary
    shape. The piece must be bounded, so either ``radius`` or every upper bound
    is finite.
    """

    lower: float | np.ndarray = 0.0
    upper: float | np.ndarray = math.inf
    radius: float = math.inf

    def bounds(self, shape: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        """Return lower and upper bounds broadcast to ``shape``."""
        lower = np.broadcast_to(np.asarray(self.lower, dtype=float), shape)
        upper = np.broadcast_to(np.asarray(self.upper, dtype=float), shape)
        return lower, upper

    def validate(self, shape: tuple[int, ...]) -> None:
        """Raise ``DataError`` unless the piece is non-empty and compact."""
        lower, upper = self.bounds(shape)
        if np.any(lower > upper):
            msg = "constraint piece has a lower bound above its upper bound"
            raise DataError(msg)
        if not math.isfinite(self.radius) and not np.all(np.isfinite(upper)):
            msg = "constraint piece is unbounded; give a finite radius or upper bounds"
            raise DataError(msg)
        if self.radius < 0:
            msg = f"constraint radius must be nonnegative, got {self.radius}"
            raise DataError(msg)
        nearest = np.clip(np.zeros(shape), lower, upper)
        if float(np.linalg.norm(nearest)) > self.radius:
            msg = "constraint piece is empty: its box lies outside its radius"
            raise DataError(msg)

    def project(self, W: np.ndarray) -> np.ndarray:
        """Project a full dictionary onto this piece."""
        lower, upper = self.bounds(W.shape)
        return project_box_ball(W, lower, upper, self.radius)

    def project_column(self, column: np.ndarray, j: int, W: np.ndarray) -> np.ndarray:
        """Project a replacement for column ``j`` of ``W``, other columns held fixed."""
        lower, upper = self.bounds(W.shape)
        residual = math.inf
        if math.isfinite(self.radius):
            rest = float(np.sum(W * W)) - column_sq_norm(W, j)
            residual = math.sqrt(max(self.radius**2 - rest, 0.0))
        return project_box_ball(column, lower[:, j], upper[:, j], residual)

    def contains(self, W: np.ndarray, tol: float = 1e-9) -> bool:
        """Return True if ``W`` lies in the piece up to ``tol``."""
        lower, upper = self.bounds(W.shape)
        in_box = bool(np.all(W >= lower - tol) and np.all(W <= upper + tol))
        return in_box and float(np.linalg.norm(W)) <= self.radius + tol


def column_sq_norm(W: np.ndarray, j: int) -> float:
    """Squared Euclidean norm of column ``j``."""
    col = W[:, j]
    return float(col @ col)


@dataclass(frozen=True)
class ConstraintSpec:
    """A finite union of compact convex pieces."""

    pieces: tuple[ConstraintPiece, ...]

    def __post_init__(self) -> None:
        """Reject an empty union."""
        if not self.pieces:
            msg = "a constraint needs at least one piece"
            raise DataError(msg)

    @classmethod
    def nonnegative_ball(cls, radius: float) -> ConstraintSpec:
        """Single piece ``{W >= 0, ||W||_F <= radius}``."""
        return cls((ConstraintPiece(lower=0.0, radius=radius),))

    @property
    def m(self) -> int:
        """Number of pieces."""
        return len(self.pieces)

    def validate(self, shape: tuple[int, ...]) -> None:
        """Validate every piece for dictionaries of ``shape``."""
        for piece in self.pieces:
            piece.validate(shape)

    def locate(self, W: np.ndarray, tol: float = 1e-9) -> int | None:
        """Return the lowest index of a piece containing ``W``, or None."""
        for i, piece in enumerate(self.pieces):
            if piece.contains(W, tol):
                return i
        return None


@dataclass(frozen=True)
class Dictionary:
    """A d x r dictionary matrix and the constraint piece it lies in."""

    W: np.ndarray
    constraint: ConstraintSpec
    active_piece: int = 0

    def __post_init__(self) -> None:
        """Check shape, finiteness, and membership of the active piece."""
        if self.W.ndim != 2:  # noqa: PLR2004
            msg = f"dictionary must be 2-D, got shape {self.W.shape}"
            raise DataError(msg)
        if not np.all(np.isfinite(self.W)):
            msg = "dictionary has non-finite entries"
            raise DataError(msg)
        if not 0 <= self.active_piece < self.constraint.m:
            msg = f"active piece {self.active_piece} outside 0..{self.constraint.m - 1}"
            raise DataError(msg)
        if not self.constraint.pieces[self.active_piece].contains(self.W, tol=1e-6):
            msg = f"dictionary does not lie in constraint piece {self.active_piece}"
            raise DataError(msg)

    @property
    def shape(self) -> tuple[int, int]:
        """Return ``(d, r)``."""
        d, r = self.W.shape
        return d, r

    @classmethod
    def random(
        cls, d: int, r: int, constraint: ConstraintSpec, rng: np.random.Generator
    ) -> Dictionary:
        """Draw i.i.d. uniform [0, 1] entries and project them onto the first piece."""
        constraint.validate((d, r))
        W0 = constraint.pieces[0].project(rng.uniform(0.0, 1.0, size=(d, r)))
        logger.debug(
            "Dictionary initialized: d=%d r=%d norm=%.4g", d, r, np.linalg.norm(W0)
        )
        return cls(W0, constraint, 0)

    @classmethod
    def from_matrix(cls, W: np.ndarray, constraint: ConstraintSpec) -> Dictionary:
        """Wrap ``W``, locating the piece that contains it."""
        constraint.validate(W.shape)
        piece = constraint.locate(W, tol=1e-6)
        if piece is None:
            msg = "dictionary matrix lies in no constraint piece"
            raise DataError(msg)
        return cls(np.asarray(W, dtype=float), constraint, piece)
