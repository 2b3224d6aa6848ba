"""Shared test fixtures for the ondl test suite."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import networkx as nx
import numpy as np
import pytest

from ondl_common.models import NDLParams, OMFParams
from ondl_engine.motifs import Network
from ondl_engine.omf import ConstraintSpec, Dictionary, OnlineNMF


@pytest.fixture
def rng() -> np.random.Generator:
    """Create a seeded generator."""
    return np.random.default_rng(20240601)


@pytest.fixture
def make_omf_params() -> Callable[..., OMFParams]:
    """Create OMFParams with small, fast defaults."""

    def _make(**kwargs: Any) -> OMFParams:
        defaults: dict[str, Any] = {
            "lam": 0.1,
            "coding_tol": 1e-10,
            "coding_max_iter": 2000,
            "dict_tol": 1e-10,
            "dict_max_sweeps": 500,
        }
        defaults.update(kwargs)
        return OMFParams(**defaults)

    return _make


@pytest.fixture
def make_ndl_params() -> Callable[..., NDLParams]:
    """Create NDLParams for short runs on small graphs."""

    def _make(**kwargs: Any) -> NDLParams:
        defaults: dict[str, Any] = {
            "k": 3,
            "iterations": 20,
            "batch_size": 50,
            "n_atoms": 4,
            "lam": 0.0,
        }
        defaults.update(kwargs)
        return NDLParams(**defaults)

    return _make


@pytest.fixture
def make_engine(
    rng: np.random.Generator, make_omf_params: Callable[..., OMFParams]
) -> Callable[..., OnlineNMF]:
    """Create an OnlineNMF with a random nonnegative dictionary."""

    def _make(d: int = 4, r: int = 2, **kwargs: Any) -> OnlineNMF:
        radius = kwargs.pop("radius", 10.0)
        return OnlineNMF.initialize(
            d,
            r,
            make_omf_params(**kwargs),
            rng,
            constraint=ConstraintSpec.nonnegative_ball(radius),
        )

    return _make


@pytest.fixture
def make_dictionary(rng: np.random.Generator) -> Callable[..., Dictionary]:
    """Create a feasible random dictionary."""

    def _make(d: int = 4, r: int = 2, radius: float = 10.0) -> Dictionary:
        return Dictionary.random(d, r, ConstraintSpec.nonnegative_ball(radius), rng)

    return _make


@pytest.fixture
def cycle() -> Callable[[int], Network]:
    """Create the simple cycle on n nodes."""

    def _make(n: int) -> Network:
        return Network.from_networkx(nx.cycle_graph(n))

    return _make


@pytest.fixture
def weighted_network() -> Network:
    """Create a 5-node weighted bidirectional network that is not regular."""
    A = np.array(
        [
            [0.0, 1.0, 2.0, 0.0, 0.0],
            [1.5, 0.0, 1.0, 0.5, 0.0],
            [1.0, 2.0, 0.0, 1.0, 3.0],
            [0.0, 1.0, 0.5, 0.0, 1.0],
            [0.0, 0.0, 2.0, 1.0, 0.0],
        ]
    )
    return Network(A)


@pytest.fixture
def write_edges(tmp_path: Path) -> Callable[..., Path]:
    """Write an edge-list file from ``(u, v)`` or ``(u, v, w)`` tuples."""

    def _write(edges: list[tuple[Any, ...]], name: str = "edges.txt") -> Path:
        path = tmp_path / name
        path.write_text("".join(" ".join(str(x) for x in e) + "\n" for e in edges))
        return path

    return _write
