"""Online nonnegative matrix factorization for Markov-dependent data streams."""

from ondl_engine.omf.aggregates import AggregateStats, WeightSchedule, update_aggregates
from ondl_engine.omf.coding import coding_loss, column_losses, kkt_residual, sparse_code
from ondl_engine.omf.constraints import ConstraintPiece, ConstraintSpec, Dictionary
from ondl_engine.omf.diagnostics import (
    IterateStabilityTracker,
    aggregate_bounds,
    check_aggregate_bounds,
    empirical_loss,
    surrogate_loss,
)
from ondl_engine.omf.dictionary import (
    dictionary_update,
    ellipsoid_value,
    growth_check,
    quadratic_objective,
)
from ondl_engine.omf.engine import OnlineNMF, StepResult, omf_step

__all__ = [
    "AggregateStats",
    "ConstraintPiece",
    "ConstraintSpec",
    "Dictionary",
    "IterateStabilityTracker",
    "OnlineNMF",
    "StepResult",
    "WeightSchedule",
    "aggregate_bounds",
    "check_aggregate_bounds",
    "coding_loss",
    "column_losses",
    "dictionary_update",
    "ellipsoid_value",
    "empirical_loss",
    "growth_check",
    "kkt_residual",
    "omf_step",
    "quadratic_objective",
    "sparse_code",
    "surrogate_loss",
    "update_aggregates",
]
