"""Weighted networks on an indexed node set, stored as immutable CSR matrices."""

from __future__ import annotations

import logging
from functools import cached_property
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np
import scipy.sparse as sp

from ondl_common.errors import DataError

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from ondl_common.storage import EdgeList

logger = logging.getLogger(__name__)


class Network:
    """Node labels plus a nonnegative sparse weight matrix ``A``.

    Instances are immutable; degree vectors and lookup tables are computed on
    first use and cached.
    """

    def __init__(
        self,
        adjacency: sp.sparray | sp.spmatrix | np.ndarray,
        labels: Sequence[str] | None = None,
    ) -> None:
        """Validate and store the weight matrix."""
        A = sp.csr_array(adjacency, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:  # noqa: PLR2004
            msg = f"adjacency must be square, got shape {A.shape}"
            raise DataError(msg)
        A.sum_duplicates()
        A.eliminate_zeros()
        A.sort_indices()
        if not np.all(np.isfinite(A.data)) or np.any(A.data < 0):
            msg = "network weights must be finite and nonnegative"
            raise DataError(msg)
        self._A = A
        n = A.shape[0]
        self._labels = (
            list(labels) if labels is not None else [str(i) for i in range(n)]
        )
        if len(self._labels) != n:
            msg = f"got {len(self._labels)} labels for {n} nodes"
            raise DataError(msg)

    @classmethod
    def from_edge_list(cls, edges: EdgeList) -> Network:
        """Build from a parsed edge list."""
        n = edges.n_nodes
        if edges.weights:
            keys = np.array(list(edges.weights.keys()), dtype=np.int64)
            values = np.fromiter(edges.weights.values(), dtype=float, count=len(keys))
            A = sp.coo_array((values, (keys[:, 0], keys[:, 1])), shape=(n, n))
        else:
            A = sp.coo_array((n, n))
        return cls(A, edges.labels)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, weight: str = "weight") -> Network:
        """Build from a networkx graph; undirected graphs become symmetric matrices."""
        nodes = list(graph.nodes)
        A = nx.to_scipy_sparse_array(graph, nodelist=nodes, weight=weight, format="csr")
        return cls(A, [str(v) for v in nodes])

    def to_networkx(self) -> nx.Graph:
        """Return a networkx graph labelled by node index, undirected when symmetric."""
        create_using = nx.Graph if self.is_symmetric else nx.DiGraph
        return nx.from_scipy_sparse_array(self._A, create_using=create_using)

    @property
    def n(self) -> int:
        """Number of nodes."""
        return self._A.shape[0]

    @property
    def labels(self) -> list[str]:
        """Node labels by index."""
        return self._labels

    @property
    def adjacency(self) -> sp.csr_array:
        """The CSR weight matrix."""
        return self._A

    @property
    def nnz(self) -> int:
        """Number of stored (positive) entries."""
        return self._A.nnz

    def dense(self) -> np.ndarray:
        """Dense copy of the weight matrix."""
        return self._A.toarray()

    @cached_property
    def transpose(self) -> sp.csr_array:
        """CSR form of ``A^T``; its rows are the in-neighbourhoods."""
        T = sp.csr_array(self._A.T)
        T.sort_indices()
        return T

    @cached_property
    def out_weights(self) -> np.ndarray:
        """Row sums ``sum_c A(v, c)``."""
        return np.asarray(self._A.sum(axis=1)).ravel()

    @cached_property
    def in_weights(self) -> np.ndarray:
        """Column sums ``sum_c A(c, v)``."""
        return np.asarray(self._A.sum(axis=0)).ravel()

    @cached_property
    def diagonal(self) -> np.ndarray:
        """Self-loop weights ``A(v, v)``."""
        return self._A.diagonal()

    @cached_property
    def is_symmetric(self) -> bool:
        """True when ``A == A^T``."""
        return (self._A != self.transpose).nnz == 0

    @cached_property
    def is_simple(self) -> bool:
        """True for symmetric 0/1 weights with no self-loops."""
        return bool(
            self.is_symmetric
            and np.all(self._A.data == 1.0)
            and not np.any(self.diagonal)
        )

    @cached_property
    def is_bidirectional(self) -> bool:
        """True when ``A(a, b) > 0`` exactly when ``A(b, a) > 0``."""
        pattern = (self._A > 0).astype(np.int8)
        return (pattern != pattern.T).nnz == 0

    @cached_property
    def _keys(self) -> np.ndarray:
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self._A.indptr))
        return rows * self.n + self._A.indices.astype(np.int64)

    def weights_at(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Vectorized lookup of ``A(rows[i], cols[i])``."""
        row_offsets = np.asarray(rows, dtype=np.int64) * self.n
        query = row_offsets + np.asarray(cols, dtype=np.int64)
        keys = self._keys
        if keys.size == 0:
            return np.zeros(query.shape)
        pos = np.minimum(np.searchsorted(keys, query), keys.size - 1)
        return np.where(keys[pos] == query, self._A.data[pos], 0.0)

    def weight(self, a: int, b: int) -> float:
        """Return ``A(a, b)``."""
        return float(self.weights_at(np.array([a]), np.array([b]))[0])

    def out_row(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Out-neighbour indices and weights of ``v``, sorted by index."""
        start, stop = self._A.indptr[v], self._A.indptr[v + 1]
        return self._A.indices[start:stop], self._A.data[start:stop]

    def in_row(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """In-neighbour indices and weights of ``v``, sorted by index."""
        T = self.transpose
        start, stop = T.indptr[v], T.indptr[v + 1]
        return T.indices[start:stop], T.data[start:stop]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield stored entries; symmetric networks yield each pair once, ``u <= v``."""
        coo = self._A.tocoo()
        symmetric = self.is_symmetric
        entries = zip(
            coo.row.tolist(), coo.col.tolist(), coo.data.tolist(), strict=True
        )
        for u, v, w in entries:
            if symmetric and u > v:
                continue
            yield u, v, w

    def __repr__(self) -> str:
        """Summarize size and flags."""
        return (
            f"Network(n={self.n}, nnz={self.nnz}, simple={self.is_simple}, "
            f"bidirectional={self.is_bidirectional})"
        )
