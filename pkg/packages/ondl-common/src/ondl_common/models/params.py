"""Algorithm parameter models for the online factorization and its pipelines."""

from __future__ import annotations

from enum import StrEnum

from pydantic import Field

from ondl_common.models.base import ParamsBase


class StepRule(StrEnum):
    """Enumerate step-size rules for projected-gradient sparse coding."""

    SPECTRAL = "spectral"
    TRACE = "trace"


class McmcMode(StrEnum):
    """Enumerate motif-sampling Markov chains."""

    PIVOT = "pivot"
    PIVOT_APPROX = "pivot-approx"
    GLAUBER = "glauber"


class PatchMode(StrEnum):
    """Enumerate image-patch sampling schemes."""

    IID = "iid"
    WALK = "walk"


class NoiseMode(StrEnum):
    """Enumerate network corruption schemes."""

    ADDITIVE = "additive"
    SUBTRACTIVE = "subtractive"


class Direction(StrEnum):
    """Which end of the reconstruction score marks the positive class."""

    LOWER = "lower"
    HIGHER = "higher"


class InitMethod(StrEnum):
    """Enumerate ways to draw the first homomorphism of a motif chain."""

    REJECTION = "rejection"
    WALK = "walk"


class OMFParams(ParamsBase):
    """Parameters of one online matrix factorization run."""

    lam: float = Field(default=1.0, ge=0.0, alias="lambda")
    kappa1: float = Field(default=0.0, ge=0.0)
    kappa2: float = Field(default=0.0, ge=0.0)
    beta: float = Field(default=1.0, gt=0.75, le=1.0)
    coding_tol: float = Field(default=1e-6, gt=0.0)
    coding_max_iter: int = Field(default=200, ge=1)
    dict_tol: float = Field(default=1e-6, gt=0.0)
    dict_max_sweeps: int = Field(default=100, ge=1)
    step_rule: StepRule = StepRule.SPECTRAL
    enforce_ellipsoid: bool = True
    track_history: bool = False
    check_invariants: bool = False
    data_radius: float | None = Field(default=None, gt=0.0)


class NDLParams(ParamsBase):
    """Parameters of network dictionary learning with k-chain motifs."""

    k: int = Field(default=3, ge=1)
    iterations: int = Field(default=100, ge=1, alias="T")
    batch_size: int = Field(default=100, ge=1, alias="N")
    n_atoms: int = Field(default=25, ge=1, alias="r")
    lam: float = Field(default=1.0, ge=0.0, alias="lambda")
    kappa1: float = Field(default=0.0, ge=0.0)
    kappa2: float = Field(default=0.0, ge=0.0)
    dict_radius: float = Field(default=1000.0, gt=0.0)
    mcmc_mode: McmcMode = McmcMode.PIVOT
    beta: float = Field(default=1.0, gt=0.75, le=1.0)
    init: InitMethod = InitMethod.REJECTION
    coding_tol: float = Field(default=1e-6, gt=0.0)
    coding_max_iter: int = Field(default=200, ge=1)
    rejection_max_tries: int = Field(default=1_000_000, ge=1)


class ReconstructionParams(ParamsBase):
    """Parameters of network reconstruction from a learned dictionary."""

    k: int = Field(default=3, ge=1)
    iterations: int = Field(default=10_000, ge=1, alias="T")
    lam: float = Field(default=0.0, ge=0.0, alias="lambda")
    mcmc_mode: McmcMode = McmcMode.PIVOT
    init: InitMethod = InitMethod.REJECTION
    coding_tol: float = Field(default=1e-6, gt=0.0)
    coding_max_iter: int = Field(default=200, ge=1)
    rejection_max_tries: int = Field(default=1_000_000, ge=1)
