"""Constrained quadratic dictionary update with the ellipsoidal growth condition.

Each piece ``C_i`` of the constraint is searched by damped projected block
coordinate descent on ``g(W) = tr(W A~ W^T) - 2 tr(W B)`` with
``A~ = A + kappa1 I``. The finished iterate is then checked against

    E = {W : tr((B^T - W A~)(W_prev - W)^T) <= 0}

and, when outside, bisected back toward the piece's starting point, which is
``W_prev`` for the active piece.

Membership in ``E`` is equivalent to ``g(W_prev) - g(W) >= tr(D A~ D^T)`` with
``D = W_prev - W``, which is the second-order growth the online scheme needs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ondl_engine.omf.constraints import Dictionary

if TYPE_CHECKING:
    from ondl_engine.omf.aggregates import AggregateStats
    from ondl_engine.omf.constraints import ConstraintPiece

logger = logging.getLogger(__name__)

_BISECTION_STEPS = 50
_START_MAX_ITER = 1000


def quadratic_objective(W: np.ndarray, stats: AggregateStats) -> float:
    """Return ``g(W) = tr(W (A + kappa1 I) W^T) - 2 tr(W B)``."""
    return float(np.sum((W @ stats.ridge_A) * W) - 2.0 * np.sum(W * stats.B.T))


def ellipsoid_value(W: np.ndarray, W_prev: np.ndarray, stats: AggregateStats) -> float:
    """Return ``tr((B^T - W A~)(W_prev - W)^T)``; ``W`` is in ``E`` when <= 0."""
    return float(np.sum((stats.B.T - W @ stats.ridge_A) * (W_prev - W)))


def growth_check(W1: np.ndarray, W2: np.ndarray, stats: AggregateStats) -> float:
    """Return ``g(W1) - g(W2) - tr(D A~ D^T)`` with ``D = W1 - W2``."""
    D = W1 - W2
    curvature = float(np.sum((D @ stats.ridge_A) * D))
    return quadratic_objective(W1, stats) - quadratic_objective(W2, stats) - curvature


@dataclass
class _Sweep:
    """Mutable block-coordinate state for one piece."""

    W: np.ndarray
    M: np.ndarray  # W @ A~, maintained column update by column update


def _feasible_start(
    piece: ConstraintPiece,
    W_prev: np.ndarray,
    stats: AggregateStats,
    tol: float,
) -> np.ndarray | None:
    """Find a point of ``piece ∩ E`` by projected gradient on the ellipsoid function.

    The ellipsoid function is a convex quadratic, so descending it from the
    projection of ``W_prev`` either reaches a nonpositive value or settles at a
    positive minimum, in which case the intersection is empty.
    """
    ridge = stats.ridge_A
    Bt = stats.B.T
    L = 2.0 * float(np.linalg.norm(ridge, 2))
    W = piece.project(W_prev)
    if ellipsoid_value(W, W_prev, stats) <= 0.0:
        return W
    if L == 0.0:
        return None
    for _ in range(_START_MAX_ITER):
        grad = 2.0 * (W @ ridge) - W_prev @ ridge - Bt
        W_next = piece.project(W - grad / L)
        if ellipsoid_value(W_next, W_prev, stats) <= 0.0:
            return W_next
        if float(np.linalg.norm(W_next - W)) < tol:
            break
        W = W_next
    return None


def _column_step(
    state: _Sweep, j: int, piece: ConstraintPiece, stats: AggregateStats
) -> None:
    ridge = stats.ridge_A
    a_jj = ridge[j, j]
    if a_jj == 0.0:
        return
    W, M = state.W, state.M
    c0 = W[:, j].copy()
    target = stats.B[j, :]
    grad = M[:, j] - target
    candidate = piece.project_column(c0 - grad / (a_jj + 1.0), j, W)
    direction = candidate - c0
    if not np.any(direction):
        return
    # g restricted to column j, relative to its current value
    linear = M[:, j] - a_jj * c0 - target
    step = 1.0
    for _ in range(_BISECTION_STEPS):
        c = c0 + step * direction
        delta_obj = a_jj * (c @ c - c0 @ c0) + 2.0 * (c - c0) @ linear
        if delta_obj <= 0.0:
            state.M = M + np.outer(c - c0, ridge[j, :])
            W[:, j] = c
            return
        step *= 0.5


def _solve_piece(
    piece: ConstraintPiece,
    start: np.ndarray,
    stats: AggregateStats,
    *,
    tol: float,
    max_sweeps: int,
) -> tuple[np.ndarray, int]:
    W = start.copy()
    state = _Sweep(W, W @ stats.ridge_A)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):  # noqa: B007
        before = state.W.copy()
        for j in range(W.shape[1]):
            _column_step(state, j, piece, stats)
        if float(np.linalg.norm(state.W - before)) < tol:
            break
    return state.W, sweeps


def _pull_into_ellipsoid(
    W: np.ndarray, anchor: np.ndarray, W_prev: np.ndarray, stats: AggregateStats
) -> np.ndarray:
    """Bisect the segment from ``anchor`` to ``W`` for its last point inside ``E``.

    ``anchor`` lies in ``E`` and in the same convex piece as ``W``, so every
    point returned stays in the piece. The ellipsoid function is convex along
    the segment, which makes the feasible part an interval starting at ``anchor``.
    """
    if ellipsoid_value(W, W_prev, stats) <= 0.0:
        return W
    direction = W - anchor
    lo, hi = 0.0, 1.0
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if ellipsoid_value(anchor + mid * direction, W_prev, stats) <= 0.0:
            lo = mid
        else:
            hi = mid
    return anchor + lo * direction


def dictionary_update(
    W_prev: Dictionary,
    stats: AggregateStats,
    *,
    tol: float = 1e-6,
    max_sweeps: int = 100,
    enforce_ellipsoid: bool = True,
) -> Dictionary:
    """Minimize the dictionary objective over ``C ∩ E`` piece by piece.

    Pieces are solved independently; the lowest objective wins and ties go to
    the lowest piece index. If no piece meets ``E`` the previous dictionary is
    returned unchanged.
    """
    prev = W_prev.W
    best: tuple[float, int, np.ndarray] | None = None
    for i, piece in enumerate(W_prev.constraint.pieces):
        if i == W_prev.active_piece:
            start: np.ndarray | None = prev
        elif enforce_ellipsoid:
            start = _feasible_start(piece, prev, stats, tol)
        else:
            start = piece.project(prev)
        if start is None:
            logger.debug(
                "Dictionary piece skipped: piece=%d reason=empty-intersection", i
            )
            continue
        W_i, sweeps = _solve_piece(piece, start, stats, tol=tol, max_sweeps=max_sweeps)
        if enforce_ellipsoid:
            W_i = _pull_into_ellipsoid(W_i, start, prev, stats)
        value = quadratic_objective(W_i, stats)
        logger.debug(
            "Dictionary piece solved: piece=%d sweeps=%d objective=%.6g",
            i,
            sweeps,
            value,
        )
        if best is None or value < best[0]:
            best = (value, i, W_i)
    if best is None:
        logger.warning(
            "Dictionary update found no feasible piece — t=%d keeping previous",
            stats.t,
        )
        return W_prev
    _, index, W_best = best
    return Dictionary(W_best, W_prev.constraint, index)
