"""Weighted networks, motifs, and homomorphism-sampling Markov chains."""

from ondl_engine.motifs.chains import (
    MotifSampler,
    PivotOutcome,
    glauber_update,
    pivot_acceptance,
    pivot_update,
    rejection_sample_hom,
    walk_sample_hom,
)
from ondl_engine.motifs.motif import (
    Homomorphism,
    Motif,
    PowerRowSums,
    is_homomorphism,
    mesoscale_patch,
    motif_weight,
    motif_weights,
    patch_matrix,
)
from ondl_engine.motifs.network import Network
from ondl_engine.motifs.oracle import (
    empirical_distribution,
    hom_distribution_bruteforce,
    tv_distance,
)

__all__ = [
    "Homomorphism",
    "Motif",
    "MotifSampler",
    "Network",
    "PivotOutcome",
    "PowerRowSums",
    "empirical_distribution",
    "glauber_update",
    "hom_distribution_bruteforce",
    "is_homomorphism",
    "mesoscale_patch",
    "motif_weight",
    "motif_weights",
    "patch_matrix",
    "pivot_acceptance",
    "pivot_update",
    "rejection_sample_hom",
    "tv_distance",
    "walk_sample_hom",
]
