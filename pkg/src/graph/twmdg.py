"""
Temporal Weighted Multidigraph
Immutable edge store with a per-source, time-sorted index for L_t(u) queries
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import RejectedRecordError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)

# (src_label, dst_label, weight_ether, timestamp)
Record = Tuple[str, str, float, int]


@dataclass(frozen=True)
class TemporalEdge:
    """One transaction: the four-tuple plus its insertion-order id."""

    edge_id: int
    src: int
    dst: int
    weight: float
    timestamp: int


def _readonly(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


class Twmdg:
    """
    Temporal weighted multidigraph

    Nodes are dense ids 0..n-1 mapped one-to-one onto lowercased labels.
    Edges are dense ids 0..m-1 in insertion order; parallel edges and
    self-loops are kept as distinct edges. The outgoing index stores, per
    source, edge ids ordered by (timestamp, edge_id) in CSR form.

    Instances are never mutated after construction and may be shared
    between worker threads without locking.
    """

    def __init__(
        self,
        labels: Sequence[str],
        src: np.ndarray,
        dst: np.ndarray,
        weight: np.ndarray,
        timestamp: np.ndarray,
    ):
        self._labels: Tuple[str, ...] = tuple(labels)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self._labels)}
        if len(self._index) != len(self._labels):
            raise ValueError("node labels must be unique")

        self.src = _readonly(np.asarray(src, dtype=np.int64).copy())
        self.dst = _readonly(np.asarray(dst, dtype=np.int64).copy())
        self.weight = _readonly(np.asarray(weight, dtype=np.float64).copy())
        self.timestamp = _readonly(np.asarray(timestamp, dtype=np.int64).copy())

        n, m = len(self._labels), len(self.src)
        if not (len(self.dst) == len(self.weight) == len(self.timestamp) == m):
            raise ValueError("edge arrays must have equal length")
        if m and (self.src.min() < 0 or self.dst.min() < 0 or max(self.src.max(), self.dst.max()) >= n):
            raise ValueError("edge endpoint out of node range")

        edge_ids = np.arange(m, dtype=np.int64)
        # primary key src, then timestamp, then edge id
        order = np.lexsort((edge_ids, self.timestamp, self.src))
        counts = np.bincount(self.src, minlength=n) if m else np.zeros(n, dtype=np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])

        self._out_order = _readonly(order.astype(np.int64))
        self._out_offsets = _readonly(offsets)
        self._out_ts = _readonly(self.timestamp[order] if m else np.zeros(0, dtype=np.int64))

    # -- sizes and labels ---------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self._labels)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    def label(self, node: int) -> str:
        return self._labels[node]

    def node_id(self, label: str) -> int:
        """Look up a node by address; matching is case-insensitive."""
        return self._index[label.lower()]

    def has_label(self, label: str) -> bool:
        return label.lower() in self._index

    # -- edges --------------------------------------------------------------

    def edge(self, edge_id: int) -> TemporalEdge:
        return TemporalEdge(
            edge_id=int(edge_id),
            src=int(self.src[edge_id]),
            dst=int(self.dst[edge_id]),
            weight=float(self.weight[edge_id]),
            timestamp=int(self.timestamp[edge_id]),
        )

    def edges(self) -> List[TemporalEdge]:
        return [self.edge(e) for e in range(self.num_edges)]

    def iter_edges(self) -> Iterator[TemporalEdge]:
        for e in range(self.num_edges):
            yield self.edge(e)

    def out_edges(self, node: int) -> np.ndarray:
        """All out-edges of node in (timestamp, edge_id) order."""
        return self._out_order[self._out_offsets[node]:self._out_offsets[node + 1]]

    def out_degree(self) -> np.ndarray:
        return np.diff(self._out_offsets)

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.num_nodes)

    def successive_edges(self, node: int, t: Optional[int] = None) -> np.ndarray:
        """
        Temporal successive edges L_t(node) = {e : Src(e) = node, T(e) >= t}

        Binary search over the node's time-sorted slice, so the cost is
        logarithmic in the out-degree plus the size of the result.

        Args:
            node: Source node id
            t: Inclusive lower time bound; None means no bound (first hop)

        Returns:
            Read-only view of edge ids in (timestamp, edge_id) order
        """
        lo, hi = self._out_offsets[node], self._out_offsets[node + 1]
        if t is not None:
            lo += int(np.searchsorted(self._out_ts[lo:hi], t, side="left"))
        return self._out_order[lo:hi]

    def to_records(self, edge_ids: Optional[Sequence[int]] = None) -> List[Record]:
        """Four-tuples with labels, in edge-id order (or the given order)."""
        ids = range(self.num_edges) if edge_ids is None else edge_ids
        return [
            (
                self._labels[self.src[e]],
                self._labels[self.dst[e]],
                float(self.weight[e]),
                int(self.timestamp[e]),
            )
            for e in ids
        ]

    def __repr__(self) -> str:
        return f"Twmdg(nodes={self.num_nodes}, edges={self.num_edges})"


def build_graph(records: Sequence[Record]) -> Twmdg:
    """
    Build a TWMDG from (src_label, dst_label, weight, timestamp) records

    Labels are lowercased before id assignment, so mixed-case spellings of
    one address merge. Node ids follow first appearance; edge ids follow
    input order.

    Raises:
        RejectedRecordError: weight not a positive finite number, timestamp
            negative or non-integral, or an empty address
    """
    index: Dict[str, int] = {}
    labels: List[str] = []
    m = len(records)
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    weight = np.empty(m, dtype=np.float64)
    timestamp = np.empty(m, dtype=np.int64)

    for i, record in enumerate(records):
        try:
            s_label, d_label, w, t = record
        except (TypeError, ValueError):
            raise RejectedRecordError(i, "expected (src, dst, weight, timestamp)")
        s_label, d_label = str(s_label).strip().lower(), str(d_label).strip().lower()
        if not s_label or not d_label:
            raise RejectedRecordError(i, "empty address")
        try:
            w = float(w)
        except (TypeError, ValueError):
            raise RejectedRecordError(i, f"weight {w!r} is not a number")
        if not (w > 0 and math.isfinite(w)):
            raise RejectedRecordError(i, f"weight must be positive, got {w!r}")
        if isinstance(t, float) and not t.is_integer():
            raise RejectedRecordError(i, f"timestamp {t!r} is not an integer")
        try:
            t = int(t)
        except (TypeError, ValueError):
            raise RejectedRecordError(i, f"timestamp {t!r} is not an integer")
        if t < 0:
            raise RejectedRecordError(i, f"timestamp must be non-negative, got {t}")

        for label in (s_label, d_label):
            if label not in index:
                index[label] = len(labels)
                labels.append(label)
        src[i], dst[i], weight[i], timestamp[i] = index[s_label], index[d_label], w, t

    graph = Twmdg(labels, src, dst, weight, timestamp)
    logger.debug(f"Built {graph!r}")
    return graph


def successive_edges(g: Twmdg, u: int, t: Optional[int] = None) -> np.ndarray:
    """Module-level alias for Twmdg.successive_edges."""
    return g.successive_edges(u, t)
