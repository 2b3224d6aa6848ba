"""Weight schedule and the running aggregates that define the surrogate loss."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ondl_common.errors import DataError, UsageError
from ondl_common.storage import Checkpoint

BETA_MIN = 0.75


@dataclass(frozen=True)
class WeightSchedule:
    """Weights ``w_t = t ** -beta`` for ``t >= 1``."""

    beta: float = 1.0

    def __post_init__(self) -> None:
        """Reject exponents outside ``(3/4, 1]``."""
        if not BETA_MIN < self.beta <= 1.0:
            msg = f"beta must lie in (0.75, 1], got {self.beta}"
            raise UsageError(msg)

    def weight(self, t: int) -> float:
        """Return ``w_t``."""
        if t < 1:
            msg = f"weights start at t=1, got t={t}"
            raise DataError(msg)
        return float(t) ** -self.beta

    def historical_weights(self, t: int) -> np.ndarray:
        """Return ``w_s^t = w_s * prod_{j=s+1}^t (1 - w_j)`` for ``s = 1..t``.

        These are the weights with which sample ``s`` enters the empirical and
        surrogate losses at time ``t``; they sum to one because ``w_1 = 1``.
        """
        if t < 1:
            return np.zeros(0)
        w = np.arange(1, t + 1, dtype=float) ** -self.beta
        tail = np.cumprod((1.0 - w)[::-1])[::-1]
        return w * np.append(tail[1:], 1.0)


@dataclass(frozen=True)
class AggregateStats:
    """Running sufficient statistics ``(A_t, B_t, r_t)`` after ``t`` steps."""

    A: np.ndarray
    B: np.ndarray
    r_scalar: float = 0.0
    t: int = 0
    kappa1: float = 0.0

    @classmethod
    def zeros(cls, r: int, d: int, kappa1: float = 0.0) -> AggregateStats:
        """Return the initial statistics ``A_0 = 0`` (r x r) and ``B_0 = 0`` (r x d)."""
        return cls(np.zeros((r, r)), np.zeros((r, d)), 0.0, 0, kappa1)

    @property
    def ridge_A(self) -> np.ndarray:
        """Return ``A + kappa1 * I``, the quadratic form of the dictionary objective."""
        return self.A + self.kappa1 * np.eye(self.A.shape[0])

    def to_checkpoint(self, beta: float) -> Checkpoint:
        """Return the on-disk representation."""
        return Checkpoint(self.A, self.B, self.t, self.r_scalar, self.kappa1, beta)

    @classmethod
    def from_checkpoint(cls, checkpoint: Checkpoint) -> AggregateStats:
        """Rebuild statistics from a checkpoint, checking the block shapes agree."""
        r = checkpoint.A.shape[0]
        if checkpoint.A.shape != (r, r) or checkpoint.B.shape[0] != r:
            msg = (
                f"checkpoint blocks disagree: A {checkpoint.A.shape}, "
                f"B {checkpoint.B.shape}"
            )
            raise DataError(msg)
        return cls(
            checkpoint.A,
            checkpoint.B,
            checkpoint.r_scalar,
            checkpoint.t,
            checkpoint.kappa1,
        )


def update_aggregates(
    stats: AggregateStats,
    H: np.ndarray,
    X: np.ndarray,
    schedule: WeightSchedule,
    *,
    lam: float = 0.0,
    kappa2: float = 0.0,
) -> AggregateStats:
    """Fold one code/data pair into the aggregates with weight ``w_{t+1}``.

    The remainder carries the elastic-net term as well, so that the surrogate
    stays an upper bound of the empirical loss when ``kappa2 > 0``.
    """
    r, d = stats.B.shape
    if H.shape[0] != r or X.shape[0] != d or H.shape[1] != X.shape[1]:
        msg = (
            f"aggregate update shapes disagree: B {stats.B.shape}, "
            f"H {H.shape}, X {X.shape}"
        )
        raise DataError(msg)
    w = schedule.weight(stats.t + 1)
    HHt = H @ H.T
    A = (1.0 - w) * stats.A + w * 0.5 * (HHt + HHt.T)
    B = (1.0 - w) * stats.B + w * (H @ X.T)
    fresh = float(np.sum(X * X) + lam * np.sum(H) + 0.5 * kappa2 * np.sum(H * H))
    r_scalar = (1.0 - w) * stats.r_scalar + w * fresh
    return AggregateStats(A, B, r_scalar, stats.t + 1, stats.kappa1)
