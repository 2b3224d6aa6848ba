"""Whitespace-separated edge-list files.

Each non-comment line is ``u v [w]``. Node labels are arbitrary strings interned
to consecutive indices in order of first appearance; a missing weight means 1.0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass
class EdgeList:
    """Parsed edge list: interned labels plus a weight per ordered pair."""

    labels: list[str] = field(default_factory=list)
    weights: dict[tuple[int, int], float] = field(default_factory=dict)
    undirected: bool = False
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def intern(self, label: str) -> int:
        """Return the index of ``label``, assigning the next one on first sight."""
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.labels)
            self._index[label] = idx
            self.labels.append(label)
        return idx

    def add(self, u: str, v: str, weight: float = 1.0) -> None:
        """Insert an edge; a repeated pair keeps the last weight seen."""
        i, j = self.intern(u), self.intern(v)
        self.weights[i, j] = weight
        if self.undirected:
            self.weights[j, i] = weight

    @property
    def n_nodes(self) -> int:
        """Return the number of interned nodes."""
        return len(self.labels)


def parse_edge_lines(
    lines: Iterable[str], *, undirected: bool = False, source: str = "<edges>"
) -> EdgeList:
    """Parse edge-list text, raising ``DataError`` that cites the offending line."""
    edges = EdgeList(undirected=undirected)
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            msg = f"{source}:{lineno}: expected 'u v [w]', got {line!r}"
            raise DataError(msg)
        weight = 1.0
        if len(parts) == 3:  # noqa: PLR2004
            try:
                weight = float(parts[2])
            except ValueError:
                msg = f"{source}:{lineno}: weight {parts[2]!r} is not a number"
                raise DataError(msg) from None
            if not math.isfinite(weight) or weight < 0:
                msg = (
                    f"{source}:{lineno}: weight must be finite and nonnegative, "
                    f"got {weight}"
                )
                raise DataError(msg)
        edges.add(parts[0], parts[1], weight)
    return edges


def read_edge_list(path: Path, *, undirected: bool = False) -> EdgeList:
    """Read an edge-list file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise DataError(msg) from exc
    edges = parse_edge_lines(text.splitlines(), undirected=undirected, source=str(path))
    logger.info(
        "Edge list read: path=%s nodes=%d entries=%d undirected=%s",
        path,
        edges.n_nodes,
        len(edges.weights),
        undirected,
    )
    return edges


def write_edge_list(
    path: Path, entries: Iterable[tuple[str, str, float]], *, precision: int = 6
) -> int:
    """Write ``u v w`` lines with ``precision`` significant digits; return the count."""
    count = 0
    with path.open("w", encoding="utf-8") as fh:
        for u, v, w in entries:
            fh.write(f"{u} {v} {w:.{precision}g}\n")
            count += 1
    logger.debug("Edge list written: path=%s entries=%d", path, count)
    return count
