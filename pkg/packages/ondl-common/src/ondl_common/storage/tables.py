"""CSV tables emitted by the pipelines: loss traces, ROC curves, labels, diagnostics."""

from __future__ import annotations

import csv
import logging
from typing import TYPE_CHECKING

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence
    from pathlib import Path

logger = logging.getLogger(__name__)

_TRUE = frozenset({"true", "1", "yes"})
_FALSE = frozenset({"false", "0", "no"})


def write_rows(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]
) -> None:
    """Write a header and rows; floats use the shortest round-trip representation."""
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(repr(float(v)) if isinstance(v, float) else v for v in row)
    logger.debug("CSV written: path=%s header=%s", path, ",".join(header))


def read_rows(path: Path, header: Sequence[str]) -> list[list[str]]:
    """Read rows after checking the header line."""
    try:
        with path.open(encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise DataError(msg) from exc
    if not rows or rows[0] != list(header):
        msg = f"{path}:1: expected header {','.join(header)!r}"
        raise DataError(msg)
    return [row for row in rows[1:] if row]


def _float(path: Path, lineno: int, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        msg = f"{path}:{lineno}: {value!r} is not a number"
        raise DataError(msg) from None


def write_loss_trace(path: Path, surrogate: Sequence[float]) -> None:
    """Write ``t,surrogate`` with t counting from 1."""
    rows = ((t, float(v)) for t, v in enumerate(surrogate, 1))
    write_rows(path, ("t", "surrogate"), rows)


def read_loss_trace(path: Path) -> list[float]:
    """Read the surrogate column of a loss trace."""
    rows = read_rows(path, ("t", "surrogate"))
    return [_float(path, i, row[1]) for i, row in enumerate(rows, start=2)]


def write_roc(
    path: Path,
    thresholds: Sequence[float],
    fpr: Sequence[float],
    tpr: Sequence[float],
    auc: float,
) -> None:
    """Write ``threshold,fpr,tpr`` rows followed by an ``auc,<value>`` trailer."""
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("threshold", "fpr", "tpr"))
        for row in zip(thresholds, fpr, tpr, strict=True):
            writer.writerow(repr(float(v)) for v in row)
        writer.writerow(("auc", repr(float(auc))))
    logger.debug("ROC written: path=%s points=%d auc=%.4f", path, len(fpr), auc)


def read_roc(path: Path) -> tuple[list[tuple[float, float, float]], float]:
    """Read an ROC table and its AUC trailer."""
    rows = read_rows(path, ("threshold", "fpr", "tpr"))
    if not rows or rows[-1][0] != "auc":
        msg = f"{path}: missing 'auc,<value>' trailer"
        raise DataError(msg)
    auc = _float(path, len(rows) + 1, rows[-1][1])
    points = [
        (_float(path, i, r[0]), _float(path, i, r[1]), _float(path, i, r[2]))
        for i, r in enumerate(rows[:-1], start=2)
    ]
    return points, auc


def write_labels(path: Path, labels: Mapping[tuple[str, str], bool]) -> None:
    """Write ``u,v,label`` rows with ``true``/``false`` labels."""
    write_rows(
        path,
        ("u", "v", "label"),
        ((u, v, "true" if flag else "false") for (u, v), flag in labels.items()),
    )


def read_labels(path: Path) -> dict[tuple[str, str], bool]:
    """Read a label file; ``true/false``, ``1/0`` and ``yes/no`` are accepted."""
    labels: dict[tuple[str, str], bool] = {}
    for lineno, row in enumerate(read_rows(path, ("u", "v", "label")), start=2):
        if len(row) != 3:  # noqa: PLR2004
            msg = f"{path}:{lineno}: expected 'u,v,label'"
            raise DataError(msg)
        u, v, raw = row
        flag = raw.strip().lower()
        if flag in _TRUE:
            labels[u, v] = True
        elif flag in _FALSE:
            labels[u, v] = False
        else:
            msg = f"{path}:{lineno}: label {raw!r} is not a boolean"
            raise DataError(msg)
    return labels


def write_dominance(path: Path, scores: Sequence[float]) -> None:
    """Write the ``atom,dominance`` sidecar of an atom grid."""
    rows = ((i, float(s)) for i, s in enumerate(scores))
    write_rows(path, ("atom", "dominance"), rows)
