"""Markov-dependent data sources: Ising Gibbs chains and image patch walks."""

from ondl_engine.sources.ising import (
    IsingChain,
    IsingConfig,
    boltzmann_distribution,
    ising_gibbs_step,
    lattice_energy,
    spin_flip_probability,
    state_index,
)
from ondl_engine.sources.patches import (
    PatchWalker,
    extract_patches,
    image_patch_minibatch,
    psnr,
    reconstruct_grid,
    spin_patch_minibatch,
    spins_to_unit,
    synthetic_stripes,
    unit_to_spins,
)

__all__ = [
    "IsingChain",
    "IsingConfig",
    "PatchWalker",
    "boltzmann_distribution",
    "extract_patches",
    "image_patch_minibatch",
    "ising_gibbs_step",
    "lattice_energy",
    "psnr",
    "reconstruct_grid",
    "spin_flip_probability",
    "spin_patch_minibatch",
    "spins_to_unit",
    "state_index",
    "synthetic_stripes",
    "unit_to_spins",
]
