"""Online matrix factorization engine: code each batch, then update the dictionary."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError, InvariantViolation
from ondl_common.models import OMFParams
from ondl_engine.omf.aggregates import AggregateStats, WeightSchedule, update_aggregates
from ondl_engine.omf.coding import coding_loss, sparse_code
from ondl_engine.omf.constraints import ConstraintSpec, Dictionary
from ondl_engine.omf.diagnostics import (
    IterateStabilityTracker,
    check_aggregate_bounds,
    empirical_loss,
    surrogate_loss,
)
from ondl_engine.omf.dictionary import dictionary_update, ellipsoid_value

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ondl_common.storage import Checkpoint

logger = logging.getLogger(__name__)

INVARIANT_TOL = 1e-8


@dataclass(frozen=True)
class StepResult:
    """Outputs of one engine step."""

    t: int
    code: np.ndarray
    surrogate: float
    weight: float
    delta_norm: float
    piece: int
    elapsed_ms: float


def omf_step(
    dictionary: Dictionary,
    stats: AggregateStats,
    X: np.ndarray,
    params: OMFParams,
    schedule: WeightSchedule,
) -> tuple[Dictionary, AggregateStats, np.ndarray, float]:
    """Run one sparse-code, aggregate, dictionary-update cycle.

    Returns the new dictionary, the new aggregates, the code ``H_t`` and the
    surrogate value ``f^_t(W_t)``.
    """
    H = sparse_code(
        X,
        dictionary.W,
        params.lam,
        params.kappa2,
        tol=params.coding_tol,
        max_iter=params.coding_max_iter,
        step_rule=params.step_rule,
    )
    new_stats = update_aggregates(
        stats, H, X, schedule, lam=params.lam, kappa2=params.kappa2
    )
    new_dictionary = dictionary_update(
        dictionary,
        new_stats,
        tol=params.dict_tol,
        max_sweeps=params.dict_max_sweeps,
        enforce_ellipsoid=params.enforce_ellipsoid,
    )
    return new_dictionary, new_stats, H, surrogate_loss(new_dictionary.W, new_stats)


class OnlineNMF:
    """Single-owner online NMF state driven one data matrix at a time."""

    def __init__(
        self,
        dictionary: Dictionary,
        params: OMFParams | None = None,
        *,
        stats: AggregateStats | None = None,
        slow_step_ms: float = 500.0,
    ) -> None:
        """Initialize from a feasible dictionary and optional prior aggregates."""
        self._params = params or OMFParams()
        self._schedule = WeightSchedule(self._params.beta)
        d, r = dictionary.shape
        self._dictionary = dictionary
        self._stats = stats or AggregateStats.zeros(r, d, self._params.kappa1)
        if self._stats.A.shape != (r, r) or self._stats.B.shape != (r, d):
            msg = f"aggregates {self._stats.B.shape} do not match dictionary {d}x{r}"
            raise DataError(msg)
        self._slow_step_ms = slow_step_ms
        self._history: list[np.ndarray] = []
        self._surrogates: list[float] = []
        self.stability = IterateStabilityTracker()

    @classmethod
    def initialize(  # noqa: PLR0913
        cls,
        d: int,
        r: int,
        params: OMFParams,
        rng: np.random.Generator,
        *,
        constraint: ConstraintSpec | None = None,
        slow_step_ms: float = 500.0,
    ) -> OnlineNMF:
        """Start from a random dictionary in the first piece of ``constraint``.

        The default constraint is the nonnegative orthant intersected with a
        Frobenius ball of radius 1000.
        """
        constraint = constraint or ConstraintSpec.nonnegative_ball(1000.0)
        dictionary = Dictionary.random(d, r, constraint, rng)
        return cls(dictionary, params, slow_step_ms=slow_step_ms)

    @classmethod
    def from_checkpoint(
        cls,
        W: np.ndarray,
        checkpoint: Checkpoint,
        params: OMFParams,
        *,
        constraint: ConstraintSpec | None = None,
    ) -> OnlineNMF:
        """Resume from a stored dictionary and aggregates checkpoint."""
        constraint = constraint or ConstraintSpec.nonnegative_ball(1000.0)
        dictionary = Dictionary.from_matrix(W, constraint)
        stats = AggregateStats.from_checkpoint(checkpoint)
        params = params.model_copy(
            update={"kappa1": checkpoint.kappa1, "beta": checkpoint.beta}
        )
        return cls(dictionary, params, stats=stats)

    @property
    def params(self) -> OMFParams:
        """Return the run parameters."""
        return self._params

    @property
    def schedule(self) -> WeightSchedule:
        """Return the weight schedule."""
        return self._schedule

    @property
    def dictionary(self) -> Dictionary:
        """Return the current dictionary."""
        return self._dictionary

    @property
    def W(self) -> np.ndarray:
        """Return the current dictionary matrix."""
        return self._dictionary.W

    @property
    def stats(self) -> AggregateStats:
        """Return the current aggregates."""
        return self._stats

    @property
    def t(self) -> int:
        """Return the number of steps taken."""
        return self._stats.t

    @property
    def history(self) -> list[np.ndarray]:
        """Return stored data matrices (empty unless history tracking is on)."""
        return self._history

    @property
    def surrogate_trace(self) -> list[float]:
        """Return ``f^_t(W_t)`` for every step taken so far."""
        return self._surrogates

    def checkpoint(self) -> Checkpoint:
        """Return the aggregates in checkpoint form."""
        return self._stats.to_checkpoint(self._params.beta)

    def empirical_loss(self, W: np.ndarray | None = None) -> float:
        """Return ``f_t(W)`` over the stored history (current dictionary by default)."""
        return empirical_loss(
            self.W if W is None else W,
            self._history,
            self._schedule,
            self._params.lam,
            self._params.kappa2,
            tol=self._params.coding_tol,
            max_iter=self._params.coding_max_iter,
            step_rule=self._params.step_rule,
        )

    def _ridge_surrogate(self, W: np.ndarray, stats: AggregateStats) -> float:
        return surrogate_loss(W, stats) + stats.kappa1 * float(np.sum(W * W))

    def _validate(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[0] != self._dictionary.shape[0]:  # noqa: PLR2004
            d = self._dictionary.shape[0]
            msg = f"data matrix of shape {X.shape} does not have {d} rows"
            raise DataError(msg)
        if not np.all(np.isfinite(X)):
            msg = "data matrix has non-finite entries"
            raise DataError(msg)
        radius = self._params.data_radius
        if radius is not None and float(np.linalg.norm(X)) > radius * (1 + 1e-12):
            msg = f"data matrix norm {np.linalg.norm(X):.6g} exceeds radius {radius}"
            raise DataError(msg)
        return X

    def step(self, X: np.ndarray) -> StepResult:
        """Consume one data matrix and return the code and surrogate value."""
        started_at = time.monotonic()
        X = self._validate(X)
        params = self._params
        W_prev, stats_prev = self._dictionary, self._stats
        check_descent = bool(
            params.check_invariants and params.track_history and self._history
        )
        f_prev = F_prev = 0.0
        if check_descent:
            f_prev = self.empirical_loss()
            F_prev = self._ridge_surrogate(W_prev.W, stats_prev)

        dictionary, stats, H, surrogate = omf_step(
            W_prev, stats_prev, X, params, self._schedule
        )
        weight = self._schedule.weight(stats.t)
        self._dictionary, self._stats = dictionary, stats
        self._surrogates.append(surrogate)
        if params.track_history:
            self._history.append(X)
        ratio = self.stability.record(W_prev.W, dictionary.W, weight)

        if params.check_invariants:
            self._check_step(W_prev.W, X, H, weight)
            if check_descent:
                loss = coding_loss(X, W_prev.W, H, params.lam, params.kappa2)
                gain = self._ridge_surrogate(dictionary.W, stats) - F_prev
                allowed = weight * (loss - f_prev)
                if gain > allowed + INVARIANT_TOL * max(1.0, abs(F_prev)):
                    msg = (
                        f"surrogate descent violated at t={stats.t}: "
                        f"increase {gain:.6g} > {allowed:.6g}"
                    )
                    raise InvariantViolation(msg)

        elapsed_ms = (time.monotonic() - started_at) * 1000
        self._log_step(stats.t, elapsed_ms, surrogate, ratio)
        return StepResult(
            t=stats.t,
            code=H,
            surrogate=surrogate,
            weight=weight,
            delta_norm=ratio * weight,
            piece=dictionary.active_piece,
            elapsed_ms=elapsed_ms,
        )

    def _check_step(
        self, W_prev: np.ndarray, X: np.ndarray, H: np.ndarray, weight: float
    ) -> None:
        params, stats = self._params, self._stats
        if params.lam > 0 and params.data_radius is not None:
            check_aggregate_bounds(stats, params.lam, params.data_radius)
        if params.enforce_ellipsoid:
            value = ellipsoid_value(self.W, W_prev, stats)
            scale = max(1.0, abs(surrogate_loss(W_prev, stats)))
            if value > INVARIANT_TOL * scale:
                msg = f"ellipsoid condition violated at t={stats.t}: value {value:.6g}"
                raise InvariantViolation(msg)
        if np.any(H < 0):
            msg = f"negative code entries at t={stats.t}"
            raise InvariantViolation(msg)
        logger.debug(
            "Invariants checked: t=%d weight=%.4g data_norm=%.4g",
            stats.t,
            weight,
            np.linalg.norm(X),
        )

    def _log_step(
        self, t: int, elapsed_ms: float, surrogate: float, ratio: float
    ) -> None:
        if elapsed_ms >= self._slow_step_ms:
            logger.warning(
                "Slow OMF step — t=%d duration_ms=%.0f surrogate=%.6g ratio=%.4g",
                t,
                elapsed_ms,
                surrogate,
                ratio,
            )
            return
        logger.debug(
            "OMF step — t=%d duration_ms=%.0f surrogate=%.6g ratio=%.4g",
            t,
            elapsed_ms,
            surrogate,
            ratio,
        )

    def run(self, stream: Iterable[np.ndarray]) -> list[StepResult]:
        """Step through every matrix of ``stream``."""
        results = [self.step(X) for X in stream]
        logger.info(
            "OMF run finished: steps=%d t=%d surrogate=%.6g stability_sup=%.4g",
            len(results),
            self.t,
            self._surrogates[-1] if self._surrogates else float("nan"),
            self.stability.supremum,
        )
        return results
