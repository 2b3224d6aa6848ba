"""Network pipelines: dictionary learning, reconstruction and denoising."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ondl_common.errors import DataError
from ondl_common.models import NoiseMode
from ondl_common.storage import (
    read_labels,
    read_matrix,
    write_dominance,
    write_edge_list,
    write_labels,
    write_roc,
)
from ondl_engine.ndl import (
    CHAIN_PATTERN_3,
    corrupt_network,
    default_direction,
    denoise_classify,
    matching_atoms,
    ndl_learn,
    nr_reconstruct,
    roc_auc,
)

if TYPE_CHECKING:
    from pathlib import Path

    import numpy as np

    from ondl_cli.commands.context import CommandContext
    from ondl_engine.motifs import Network
    from ondl_engine.ndl import ReconstructionState

logger = logging.getLogger(__name__)

type Pair = tuple[int, int]


def _learn(
    ctx: CommandContext, network: Network
) -> tuple[np.ndarray, dict[str, float]]:
    learned = ndl_learn(
        network,
        ctx.ndl_params(),
        ctx.rng,
        slow_step_ms=ctx.settings.app.slow_step_ms,
    )
    ctx.write_learned(learned.W, learned.checkpoint, learned.surrogate_trace, learned.k)
    write_dominance(ctx.recorder.output("dominance.csv"), learned.dominance.tolist())
    summary = {
        "final_surrogate": learned.surrogate_trace[-1],
        "acceptance_rate": learned.acceptance_rate,
    }
    if learned.k == CHAIN_PATTERN_3.shape[0]:
        chain_atoms = matching_atoms(learned.W, learned.k, CHAIN_PATTERN_3)
        summary["chain_atoms"] = float(len(chain_atoms))
    return learned.W, summary


def _write_reconstruction(
    ctx: CommandContext, state: ReconstructionState, labels: list[str]
) -> int:
    entries = (
        (labels[a], labels[b], weight)
        for (a, b), weight in sorted(state.values.items())
    )
    return write_edge_list(ctx.recorder.output("reconstruction.txt"), entries)


def _labels_by_index(path: Path, network: Network) -> dict[Pair, bool]:
    index = {name: i for i, name in enumerate(network.labels)}
    labels: dict[Pair, bool] = {}
    for (u, v), flag in read_labels(path).items():
        if u not in index or v not in index:
            msg = f"{path}: label pair ({u}, {v}) names an unknown node"
            raise DataError(msg)
        a, b = index[u], index[v]
        labels[min(a, b), max(a, b)] = flag
    return labels


def run_ndl_learn(ctx: CommandContext) -> dict[str, float]:
    """Learn a network dictionary from ``--edges``."""
    network = ctx.load_network()
    _, summary = _learn(ctx, network)
    return summary


def run_reconstruct(ctx: CommandContext) -> dict[str, float]:
    """Reconstruct ``--edges`` from ``--dictionary``."""
    network = ctx.load_network()
    W = read_matrix(ctx.require("dictionary"))
    state = nr_reconstruct(network, W, ctx.reconstruction_params(), ctx.rng)
    written = _write_reconstruction(ctx, state, network.labels)
    return {"visited_pairs": float(state.visited), "written": float(written)}


def run_denoise(ctx: CommandContext) -> dict[str, float]:
    """Corrupt ``--edges`` unless ``--labels`` is given, then reconstruct and score.

    Without ``--dictionary`` a dictionary is first learned on the corrupted
    network.
    """
    config = ctx.config
    mode = config.mode if isinstance(config.mode, NoiseMode) else NoiseMode.SUBTRACTIVE
    network = ctx.load_network()
    summary: dict[str, float] = {}
    if config.labels is not None:
        corrupted = network
        labels = _labels_by_index(config.labels, network)
    else:
        result = corrupt_network(network, mode, config.fraction, ctx.rng)
        corrupted, labels = result.corrupted, result.labels
        write_edge_list(
            ctx.recorder.output("corrupted.txt"),
            (
                (corrupted.labels[u], corrupted.labels[v], w)
                for u, v, w in corrupted.edges()
            ),
        )
        write_labels(ctx.recorder.output("labels.csv"), result.labelled_names())
        summary["changed"] = float(len(result.changed))
    if config.dictionary is not None:
        W = read_matrix(config.dictionary)
    else:
        W, learned = _learn(ctx, corrupted)
        summary.update(learned)
    state = nr_reconstruct(corrupted, W, ctx.reconstruction_params(), ctx.rng)
    _write_reconstruction(ctx, state, corrupted.labels)
    direction = config.direction or default_direction(mode)
    scores = {pair: state.pair_score(*pair) for pair in labels}
    roc = roc_auc(scores, labels, direction)
    write_roc(
        ctx.recorder.output("roc.csv"),
        roc.thresholds.tolist(),
        roc.fpr.tolist(),
        roc.tpr.tolist(),
        roc.auc,
    )
    if config.threshold is not None:
        predicted = denoise_classify(
            corrupted, state, mode, config.threshold, direction
        )
        names = corrupted.labels
        write_labels(
            ctx.recorder.output("predictions.csv"),
            {(names[u], names[v]): flag for (u, v), flag in predicted.items()},
        )
        summary["predicted_positive"] = float(sum(predicted.values()))
    summary["auc"] = roc.auc
    summary["visited_pairs"] = float(state.visited)
    return summary
