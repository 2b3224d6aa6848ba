"""Classification of node pairs by reconstructed weight, and ROC evaluation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from sklearn import metrics

from ondl_common.errors import DataError
from ondl_common.models import Direction, NoiseMode

if TYPE_CHECKING:
    from collections.abc import Mapping

    from ondl_engine.motifs import Network
    from ondl_engine.ndl.reconstruct import ReconstructionState

logger = logging.getLogger(__name__)

type Pair = tuple[int, int]


def default_direction(mode: NoiseMode) -> Direction:  # noqa: ARG001
    """Low weights flag genuine non-edges and inserted edges alike."""
    return Direction.LOWER


def candidate_pairs(corrupted: Network, mode: NoiseMode) -> list[Pair]:
    """Unordered pairs ``u < v`` to classify: non-edges or edges, by noise mode."""
    rows, cols = np.triu_indices(corrupted.n, k=1)
    present = corrupted.weights_at(rows, cols) > 0.0
    keep = ~present if mode is NoiseMode.SUBTRACTIVE else present
    return list(zip(rows[keep].tolist(), cols[keep].tolist(), strict=True))


def pair_scores(
    corrupted: Network, recon: ReconstructionState, mode: NoiseMode
) -> dict[Pair, float]:
    """Reconstructed weight of every candidate pair."""
    return {(u, v): recon.pair_score(u, v) for u, v in candidate_pairs(corrupted, mode)}


def denoise_classify(
    corrupted: Network,
    recon: ReconstructionState,
    mode: NoiseMode,
    theta: float,
    direction: Direction | None = None,
) -> dict[Pair, bool]:
    """Flag candidate pairs whose reconstructed weight falls past ``theta``.

    With the lower direction a pair is positive when its weight is below
    ``theta``; with the higher direction when it is above. Lower is the default
    in both noise modes, so ``theta = inf`` flags every candidate.
    """
    direction = direction or default_direction(mode)
    scores = pair_scores(corrupted, recon, mode)
    if direction is Direction.LOWER:
        return {pair: score < theta for pair, score in scores.items()}
    return {pair: score > theta for pair, score in scores.items()}


@dataclass(frozen=True)
class RocCurve:
    """ROC points with their score thresholds, and the area under the curve."""

    thresholds: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float


def roc_auc(
    scores: Mapping[Pair, float],
    labels: Mapping[Pair, bool],
    direction: Direction = Direction.LOWER,
) -> RocCurve:
    """Sweep every threshold over ``scores`` and integrate the ROC curve.

    Pairs in ``labels`` without a score count as weight 0. For the lower
    direction a pair is predicted positive when its score is at or below the
    threshold. Ties share credit, so the area equals the Mann-Whitney statistic.

    Raises:
        DataError: if the labels contain only one class.

    """
    keys = list(labels)
    truth = np.fromiter((labels[key] for key in keys), dtype=bool, count=len(keys))
    if truth.all() or not truth.any():
        msg = "ROC needs both positive and negative labels"
        raise DataError(msg)
    values = np.fromiter(
        (scores.get(key, 0.0) for key in keys), dtype=float, count=len(keys)
    )
    sign = -1.0 if direction is Direction.LOWER else 1.0
    fpr, tpr, thresholds = metrics.roc_curve(
        truth, sign * values, pos_label=True, drop_intermediate=False
    )
    auc = float(metrics.auc(fpr, tpr))
    logger.info(
        "ROC computed: pairs=%d positives=%d direction=%s auc=%.4f",
        len(keys),
        int(truth.sum()),
        direction,
        auc,
    )
    return RocCurve(thresholds=sign * thresholds, fpr=fpr, tpr=tpr, auc=auc)
