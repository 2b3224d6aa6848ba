"""File formats: matrix text, checkpoints, PGM images, edge lists, CSV tables."""

from ondl_common.storage.edgelist import (
    EdgeList,
    parse_edge_lines,
    read_edge_list,
    write_edge_list,
)
from ondl_common.storage.matrix_text import (
    Checkpoint,
    read_checkpoint,
    read_matrix,
    write_checkpoint,
    write_matrix,
)
from ondl_common.storage.pgm import read_pgm, read_spins_pgm, write_pgm, write_spins_pgm
from ondl_common.storage.tables import (
    read_labels,
    read_loss_trace,
    read_roc,
    read_rows,
    write_dominance,
    write_labels,
    write_loss_trace,
    write_roc,
    write_rows,
)

__all__ = [
    "Checkpoint",
    "EdgeList",
    "parse_edge_lines",
    "read_checkpoint",
    "read_edge_list",
    "read_labels",
    "read_loss_trace",
    "read_matrix",
    "read_pgm",
    "read_roc",
    "read_rows",
    "read_spins_pgm",
    "write_checkpoint",
    "write_dominance",
    "write_edge_list",
    "write_labels",
    "write_loss_trace",
    "write_matrix",
    "write_pgm",
    "write_roc",
    "write_rows",
    "write_spins_pgm",
]
