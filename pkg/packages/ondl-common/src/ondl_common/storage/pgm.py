"""Binary PGM (P5) images for patch sources, atom grids, and spin configurations."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

_MAGIC = b"P5"
_MAXVAL = 255
_WIDE_MAXVAL = 65535


def _header_tokens(data: bytes, path: Path) -> tuple[list[bytes], int]:
    """Return the four header tokens and the offset of the raster."""
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4:  # noqa: PLR2004
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            msg = f"{path}: truncated PGM header"
            raise DataError(msg)
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates maxval from the raster
    return tokens, pos + 1


def read_pgm(path: Path) -> np.ndarray:
    """Read a P5 image and return its pixels scaled to [0, 1]."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        msg = f"cannot read {path}: {exc}"
        raise DataError(msg) from exc
    if not data.startswith(_MAGIC):
        msg = f"{path}: not a binary PGM (P5) file"
        raise DataError(msg)
    tokens, offset = _header_tokens(data, path)
    try:
        width, height, maxval = (int(tok) for tok in tokens[1:])
    except ValueError:
        msg = f"{path}: malformed PGM header"
        raise DataError(msg) from None
    if not 0 < maxval <= _WIDE_MAXVAL:
        msg = f"{path}: unsupported maxval {maxval}"
        raise DataError(msg)
    dtype = np.dtype(np.uint8) if maxval <= _MAXVAL else np.dtype(">u2")
    expected = width * height * dtype.itemsize
    raster = data[offset : offset + expected]
    if len(raster) != expected:
        msg = f"{path}: expected {expected} raster bytes, found {len(raster)}"
        raise DataError(msg)
    pixels = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    logger.debug("PGM read: path=%s size=%dx%d", path, height, width)
    return pixels.astype(float) / maxval


def to_gray_levels(pixels: np.ndarray) -> np.ndarray:
    """Map values in [0, 1] to 8-bit gray levels, clipping out-of-range values."""
    return np.rint(np.clip(pixels, 0.0, 1.0) * _MAXVAL).astype(np.uint8)


def write_pgm(path: Path, pixels: np.ndarray) -> None:
    """Write values in [0, 1] as a P5 image with maxval 255."""
    if pixels.ndim != 2:  # noqa: PLR2004
        msg = f"PGM images are 2-D, got shape {pixels.shape}"
        raise DataError(msg)
    height, width = pixels.shape
    header = b"P5\n%d %d\n%d\n" % (width, height, _MAXVAL)
    path.write_bytes(header + to_gray_levels(pixels).tobytes())
    logger.debug("PGM written: path=%s size=%dx%d", path, height, width)


def write_spins_pgm(path: Path, spins: np.ndarray) -> None:
    """Write a +/-1 spin configuration with -1 as 0 and +1 as 255."""
    write_pgm(path, (np.asarray(spins, dtype=float) + 1.0) / 2.0)


def read_spins_pgm(path: Path) -> np.ndarray:
    """Read a spin configuration written by :func:`write_spins_pgm`."""
    pixels = read_pgm(path)
    return np.where(pixels >= 0.5, 1, -1).astype(np.int8)  # noqa: PLR2004
