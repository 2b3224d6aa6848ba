"""Surrogate and empirical losses plus the runtime checks built on them."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError, InvariantViolation
from ondl_common.models import StepRule
from ondl_engine.omf.coding import column_losses, sparse_code

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ondl_engine.omf.aggregates import AggregateStats, WeightSchedule

logger = logging.getLogger(__name__)


def surrogate_loss(W: np.ndarray, stats: AggregateStats) -> float:
    """Return ``tr(W A W^T) - 2 tr(W B) + r_t``."""
    if W.shape[1] != stats.A.shape[0] or W.shape[0] != stats.B.shape[1]:
        msg = (
            f"W {W.shape} does not match aggregates "
            f"A {stats.A.shape}, B {stats.B.shape}"
        )
        raise DataError(msg)
    quadratic = np.sum((W @ stats.A) * W)
    return float(quadratic - 2.0 * np.sum(W * stats.B.T) + stats.r_scalar)


def empirical_loss(  # noqa: PLR0913
    W: np.ndarray,
    history: Sequence[np.ndarray],
    schedule: WeightSchedule,
    lam: float = 0.0,
    kappa2: float = 0.0,
    *,
    tol: float = 1e-6,
    max_iter: int = 200,
    step_rule: StepRule = StepRule.SPECTRAL,
) -> float:
    """Return the weighted empirical loss ``sum_s w_s^t * l(X_s, W)``.

    Every historical matrix is re-coded against ``W``. The matrices are coded
    in one batch since columns are independent subproblems.
    """
    if not history:
        msg = "empirical loss needs a non-empty history"
        raise DataError(msg)
    weights = schedule.historical_weights(len(history))
    column_weights = np.concatenate(
        [np.full(X.shape[1], w) for X, w in zip(history, weights, strict=True)]
    )
    X_all = np.hstack(history)
    H_all = sparse_code(
        X_all, W, lam, kappa2, tol=tol, max_iter=max_iter, step_rule=step_rule
    )
    return float(column_weights @ column_losses(X_all, W, H_all, lam, kappa2))


def aggregate_bounds(lam: float, radius: float) -> tuple[float, float]:
    """Return the bounds ``(R^4 / lam^2, R^3 / lam)`` on the aggregate norms."""
    return radius**4 / lam**2, radius**3 / lam


def check_aggregate_bounds(
    stats: AggregateStats, lam: float, radius: float, *, rel_tol: float = 1e-9
) -> None:
    """Raise ``InvariantViolation`` if the aggregates exceed their norm bounds."""
    bound_A, bound_B = aggregate_bounds(lam, radius)
    norm_A = float(np.linalg.norm(stats.A))
    norm_B = float(np.linalg.norm(stats.B))
    if norm_A > bound_A * (1 + rel_tol) or norm_B > bound_B * (1 + rel_tol):
        msg = (
            f"aggregate bound violated at t={stats.t}: ||A||={norm_A:.6g} "
            f"(bound {bound_A:.6g}), ||B||={norm_B:.6g} (bound {bound_B:.6g})"
        )
        raise InvariantViolation(msg)


@dataclass
class IterateStabilityTracker:
    """Track ``||W_{t+1} - W_t||_F / w_{t+1}`` and its running supremum."""

    ratios: list[float] = field(default_factory=list)
    supremum: float = 0.0

    def record(self, W_prev: np.ndarray, W_next: np.ndarray, weight: float) -> float:
        """Record one step and return its ratio."""
        ratio = float(np.linalg.norm(W_next - W_prev)) / weight
        self.ratios.append(ratio)
        self.supremum = max(self.supremum, ratio)
        return ratio

    def supremum_until(self, t: int) -> float:
        """Return the largest ratio over the first ``t`` recorded steps."""
        window = self.ratios[:t]
        return max(window) if window else 0.0

    @property
    def finite(self) -> bool:
        """Return True when every recorded ratio is finite."""
        return math.isfinite(self.supremum)
