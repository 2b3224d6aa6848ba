"""Network dictionary learning, reconstruction, corruption, and denoising."""

from ondl_engine.ndl.corrupt import CorruptionResult, corrupt_network
from ondl_engine.ndl.denoise import (
    RocCurve,
    candidate_pairs,
    default_direction,
    denoise_classify,
    pair_scores,
    roc_auc,
)
from ondl_engine.ndl.learn import (
    CHAIN_PATTERN_3,
    NetworkDictionary,
    dominance_scores,
    dominant_atom,
    matching_atoms,
    ndl_learn,
    threshold_atom,
)
from ondl_engine.ndl.reconstruct import ReconstructionState, nr_reconstruct

__all__ = [
    "CHAIN_PATTERN_3",
    "CorruptionResult",
    "NetworkDictionary",
    "ReconstructionState",
    "RocCurve",
    "candidate_pairs",
    "corrupt_network",
    "default_direction",
    "denoise_classify",
    "dominance_scores",
    "dominant_atom",
    "matching_atoms",
    "ndl_learn",
    "nr_reconstruct",
    "pair_scores",
    "roc_auc",
    "threshold_atom",
]
