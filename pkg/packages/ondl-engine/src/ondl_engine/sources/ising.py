"""Gibbs sampler for the ferromagnetic Ising model on a periodic square lattice.

Neighbour sums use the four periodic lookups of a site, with multiplicity, so
on a 2x2 lattice each neighbour counts twice. The Boltzmann weight uses the
matching energy ``E(x) = -1/2 * sum_v x_v * S_v``, under which the single-site
conditional is ``P(x_v = +1) = 1 / (1 + exp(-2 S_v / T))``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import expit

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

MAX_ENUMERATED_SITES = 20


def spin_flip_probability(S: float, temperature: float) -> float:
    """Probability that the resampled spin is +1 given neighbour sum ``S``."""
    return float(expit(2.0 * S / temperature))


def _check_lattice(N: int, temperature: float) -> None:
    if N < 2:  # noqa: PLR2004
        msg = f"lattice side must be at least 2, got {N}"
        raise DataError(msg)
    if temperature <= 0:
        msg = f"temperature must be positive, got {temperature}"
        raise DataError(msg)


def neighbour_table(N: int) -> np.ndarray:
    """Return the (N*N, 4) table of periodic lattice neighbours of each site."""
    rows, cols = np.divmod(np.arange(N * N), N)
    return np.stack(
        [
            ((rows - 1) % N) * N + cols,
            ((rows + 1) % N) * N + cols,
            rows * N + (cols - 1) % N,
            rows * N + (cols + 1) % N,
        ],
        axis=1,
    )


def lattice_energy(spins: np.ndarray) -> float:
    """Energy ``-1/2 * sum_v x_v * S_v`` of a configuration."""
    neighbour_sum = sum(
        np.roll(spins, shift, axis) for shift in (1, -1) for axis in (0, 1)
    )
    return -0.5 * float(np.sum(spins * neighbour_sum))


@dataclass(frozen=True)
class IsingConfig:
    """A spin configuration at a given temperature."""

    spins: np.ndarray
    temperature: float

    def __post_init__(self) -> None:
        """Check the lattice is square with +/-1 entries."""
        shape = self.spins.shape
        if self.spins.ndim != 2 or shape[0] != shape[1]:  # noqa: PLR2004
            msg = f"spins must form a square grid, got shape {self.spins.shape}"
            raise DataError(msg)
        _check_lattice(self.spins.shape[0], self.temperature)
        if not np.all(np.abs(self.spins) == 1):
            msg = "spins must be -1 or +1"
            raise DataError(msg)

    @property
    def N(self) -> int:
        """Lattice side length."""
        return self.spins.shape[0]

    @classmethod
    def random(
        cls, N: int, temperature: float, rng: np.random.Generator
    ) -> IsingConfig:
        """Independent fair +/-1 spins."""
        _check_lattice(N, temperature)
        spins = rng.choice(np.array([-1, 1], dtype=np.int8), size=(N, N))
        return cls(spins, temperature)

    def neighbour_sum(self, row: int, col: int) -> int:
        """Sum of the four periodic neighbours of ``(row, col)``."""
        N, s = self.N, self.spins
        return int(
            s[(row - 1) % N, col]
            + s[(row + 1) % N, col]
            + s[row, (col - 1) % N]
            + s[row, (col + 1) % N]
        )


def ising_gibbs_step(config: IsingConfig, rng: np.random.Generator) -> IsingConfig:
    """Resample one uniformly chosen site from its conditional distribution."""
    site = int(rng.integers(config.N * config.N))
    row, col = divmod(site, config.N)
    p_plus = spin_flip_probability(config.neighbour_sum(row, col), config.temperature)
    spins = config.spins.copy()
    spins[row, col] = 1 if rng.random() < p_plus else -1
    return IsingConfig(spins, config.temperature)


def state_index(spins: np.ndarray) -> int:
    """Index of a configuration: bit ``v`` is set when flattened site ``v`` is +1."""
    bits = (spins.ravel() > 0).astype(np.int64)
    return int(bits @ (1 << np.arange(bits.size, dtype=np.int64)))


def boltzmann_distribution(N: int, temperature: float) -> np.ndarray:
    """Exact Gibbs measure over all ``2**(N*N)`` states, see :func:`state_index`."""
    _check_lattice(N, temperature)
    n = N * N
    if n > MAX_ENUMERATED_SITES:
        msg = f"cannot enumerate {n} sites; at most {MAX_ENUMERATED_SITES} supported"
        raise DataError(msg)
    bits = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    configs = (2 * bits - 1).reshape(-1, N, N)
    neighbour_sum = sum(
        np.roll(configs, shift, axis) for shift in (1, -1) for axis in (1, 2)
    )
    energy = -0.5 * np.sum(configs * neighbour_sum, axis=(1, 2))
    logits = -energy / temperature
    weights = np.exp(logits - logits.max())
    return weights / weights.sum()


class IsingChain:
    """Batched single-site Gibbs sampler.

    Sites and uniforms are drawn in blocks up front, which gives the same law
    as repeated :func:`ising_gibbs_step` calls at a fraction of the cost.
    """

    def __init__(
        self,
        N: int,
        temperature: float,
        rng: np.random.Generator,
        *,
        spins: np.ndarray | None = None,
    ) -> None:
        """Start from ``spins`` or from independent fair spins."""
        config = (
            IsingConfig(np.asarray(spins, dtype=np.int8), temperature)
            if spins is not None
            else IsingConfig.random(N, temperature, rng)
        )
        self._N = config.N
        self._temperature = temperature
        self._rng = rng
        self._spins = config.spins.ravel().tolist()
        self._neighbours = neighbour_table(self._N).tolist()
        # neighbour sums take values -4, -2, 0, 2, 4
        self._p_plus = {
            S: spin_flip_probability(S, temperature) for S in range(-4, 5, 2)
        }
        self.steps_taken = 0

    @property
    def N(self) -> int:
        """Lattice side length."""
        return self._N

    @property
    def temperature(self) -> float:
        """Temperature of the Gibbs measure."""
        return self._temperature

    @property
    def spins(self) -> np.ndarray:
        """Current configuration as an N x N array."""
        return np.array(self._spins, dtype=np.int8).reshape(self._N, self._N)

    @property
    def config(self) -> IsingConfig:
        """Current configuration."""
        return IsingConfig(self.spins, self._temperature)

    def run(self, n_steps: int, *, record_states: bool = False) -> np.ndarray | None:
        """Advance ``n_steps`` single-site updates.

        With ``record_states`` the state index after every step is returned;
        only lattices of at most 20 sites can be recorded.
        """
        n_sites = self._N * self._N
        if record_states and n_sites > MAX_ENUMERATED_SITES:
            msg = (
                f"state recording needs at most {MAX_ENUMERATED_SITES} sites, "
                f"got {n_sites}"
            )
            raise DataError(msg)
        sites = self._rng.integers(n_sites, size=n_steps).tolist()
        uniforms = self._rng.random(n_steps).tolist()
        spins, neighbours, p_plus = self._spins, self._neighbours, self._p_plus
        record = np.empty(n_steps, dtype=np.int64) if record_states else None
        index = state_index(self.spins) if record_states else 0
        for step, (v, u) in enumerate(zip(sites, uniforms, strict=True)):
            a, b, c, d = neighbours[v]
            new = 1 if u < p_plus[spins[a] + spins[b] + spins[c] + spins[d]] else -1
            if record is not None:
                if new != spins[v]:
                    index += (1 << v) if new > 0 else -(1 << v)
                record[step] = index
            spins[v] = new
        self.steps_taken += n_steps
        return record

    def magnetization(self) -> float:
        """Mean spin."""
        return sum(self._spins) / len(self._spins)

    def energy(self) -> float:
        """Energy of the current configuration."""
        return lattice_energy(self.spins)

    def configurations(self, epoch: int, count: int) -> Iterator[IsingConfig]:
        """Yield ``count`` configurations, one every ``epoch`` steps."""
        for _ in range(count):
            self.run(epoch)
            yield self.config
        logger.debug(
            "Ising chain advanced: N=%d T=%.4g steps=%d magnetization=%.4f",
            self._N,
            self._temperature,
            self.steps_taken,
            self.magnetization(),
        )
