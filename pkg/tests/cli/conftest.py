"""Fixtures for command-line tests."""

import json
import logging
from collections.abc import Callable, Iterator
from pathlib import Path
from typing import Any

import networkx as nx
import pytest

from ondl_cli.app import main


@pytest.fixture(autouse=True)
def isolate_run(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Run from an empty directory and drop log files a command opens."""
    monkeypatch.chdir(tmp_path)
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in list(root.handlers):
        if isinstance(handler, logging.FileHandler) and handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.fixture
def cycle_edges(write_edges: Callable[..., Path]) -> Path:
    """Edge list of the 10-cycle."""
    return write_edges(list(nx.cycle_graph(10).edges()), "cycle.txt")


@pytest.fixture
def run_cli(tmp_path: Path) -> Callable[..., tuple[int, dict[str, Any]]]:
    """Run ``ondl`` into ``tmp_path/<name>`` and return the exit code and metadata."""

    def _run(*argv: object, name: str = "run") -> tuple[int, dict[str, Any]]:
        out_dir = tmp_path / name
        args = [str(a) for a in argv]
        code = main([*args, "--out-dir", str(out_dir)])
        metadata_path = out_dir / "metadata.json"
        metadata = (
            json.loads(metadata_path.read_text()) if metadata_path.exists() else {}
        )
        return code, metadata

    return _run
