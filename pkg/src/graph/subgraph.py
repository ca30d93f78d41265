"""
K-order subgraph extraction and static-graph collapse
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.graph.twmdg import Twmdg
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SubgraphResult:
    """Extracted subgraph plus new-id -> original-id maps."""

    graph: Twmdg
    node_map: np.ndarray
    edge_map: np.ndarray
    center: int


class StaticDigraph:
    """
    Simple weighted digraph: at most one edge per ordered pair, no timestamps

    Out-neighbours of each node are stored sorted by node id (CSR), so
    `has_edge` is a binary search.
    """

    def __init__(self, labels: Sequence[str], src: np.ndarray, dst: np.ndarray, weight: np.ndarray):
        self.labels = tuple(labels)
        n = len(self.labels)
        order = np.lexsort((dst, src))
        self.src = src[order]
        self.dst = dst[order]
        self.weight = weight[order]
        counts = np.bincount(self.src, minlength=n) if len(self.src) else np.zeros(n, dtype=np.int64)
        self._offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._offsets[1:])

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    def out_neighbors(self, node: int) -> np.ndarray:
        return self.dst[self._offsets[node]:self._offsets[node + 1]]

    def _position(self, u: int, v: int) -> Optional[int]:
        lo, hi = self._offsets[u], self._offsets[u + 1]
        pos = lo + int(np.searchsorted(self.dst[lo:hi], v))
        if pos < hi and self.dst[pos] == v:
            return pos
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self._position(u, v) is not None

    def weight_of(self, u: int, v: int) -> float:
        pos = self._position(u, v)
        if pos is None:
            raise KeyError((u, v))
        return float(self.weight[pos])

    def total_weight(self) -> float:
        return float(self.weight.sum())

    def edge_list(self) -> List[Tuple[int, int, float]]:
        return [(int(u), int(v), float(w)) for u, v, w in zip(self.src, self.dst, self.weight)]


def collapse_to_static(g: Twmdg) -> StaticDigraph:
    """
    Merge parallel edges into one edge per ordered pair, summing weights

    Timestamps are dropped. Self-loops survive as a single loop.
    """
    n = g.num_nodes
    if g.num_edges == 0:
        empty = np.zeros(0, dtype=np.int64)
        return StaticDigraph(g.labels, empty, empty, np.zeros(0, dtype=np.float64))

    pair_key = g.src * n + g.dst
    keys, inverse = np.unique(pair_key, return_inverse=True)
    merged = np.bincount(inverse, weights=g.weight, minlength=len(keys))
    static = StaticDigraph(g.labels, keys // n, keys % n, merged)
    logger.debug(f"Collapsed {g.num_edges} edges into {static.num_edges} static edges")
    return static


def _bfs_distances(adjacency: List[List[int]], start: int, limit: Optional[int]) -> Dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if limit is not None and dist[node] >= limit:
            continue
        for nxt in adjacency[node]:
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
    return dist


def _collapsed_adjacency(g: Twmdg) -> Tuple[List[List[int]], List[List[int]]]:
    forward: List[List[int]] = [[] for _ in range(g.num_nodes)]
    backward: List[List[int]] = [[] for _ in range(g.num_nodes)]
    static = collapse_to_static(g)
    for u, v in zip(static.src.tolist(), static.dst.tolist()):
        forward[u].append(v)
        backward[v].append(u)
    return forward, backward


def k_order_subgraph(
    g: Twmdg, center: int, k_in: Optional[int], k_out: Optional[int]
) -> SubgraphResult:
    """
    Directed K-order neighbourhood of `center`

    An edge u->v is kept when it extends a shortest forward path from the
    center without exceeding k_out hops (dist_out(u) < k_out), or when it
    starts a backward path into the center within k_in hops
    (dist_in(v) < k_in). Self-loops on the center are always kept. Edges
    between frontier nodes that lie on no such path are dropped.

    With both depths unbounded the result is the whole weakly connected
    component of the center, edges in either direction included.

    Args:
        k_in, k_out: Depth bounds; None means unbounded

    Returns:
        SubgraphResult with ids re-densified in original order
    """
    forward, backward = _collapsed_adjacency(g)
    if k_in is None and k_out is None:
        undirected = [f + b for f, b in zip(forward, backward)]
        component = np.zeros(g.num_nodes, dtype=bool)
        component[list(_bfs_distances(undirected, center, None))] = True
        return _extract(g, center, component[g.src], k_in, k_out)

    dist_out = _bfs_distances(forward, center, k_out)
    dist_in = _bfs_distances(backward, center, k_in)

    def within(dist: Dict[int, int], node: int, limit: Optional[int]) -> bool:
        return node in dist and (limit is None or dist[node] < limit)

    keep = np.zeros(g.num_edges, dtype=bool)
    for e, (u, v) in enumerate(zip(g.src.tolist(), g.dst.tolist())):
        if u == center and v == center:
            keep[e] = True
        elif within(dist_out, u, k_out) or within(dist_in, v, k_in):
            keep[e] = True
    return _extract(g, center, keep, k_in, k_out)


def _extract(
    g: Twmdg, center: int, keep: np.ndarray, k_in: Optional[int], k_out: Optional[int]
) -> SubgraphResult:
    """Re-densified subgraph of the kept edges plus the center."""
    edge_map = np.flatnonzero(keep).astype(np.int64)
    node_mask = np.zeros(g.num_nodes, dtype=bool)
    node_mask[center] = True
    node_mask[g.src[edge_map]] = True
    node_mask[g.dst[edge_map]] = True
    node_map = np.flatnonzero(node_mask).astype(np.int64)

    remap = np.full(g.num_nodes, -1, dtype=np.int64)
    remap[node_map] = np.arange(len(node_map))
    sub = Twmdg(
        [g.label(i) for i in node_map],
        remap[g.src[edge_map]],
        remap[g.dst[edge_map]],
        g.weight[edge_map],
        g.timestamp[edge_map],
    )
    logger.info(
        f"K-order subgraph around {g.label(center)} (k_in={k_in}, k_out={k_out}): "
        f"{sub.num_nodes} nodes, {sub.num_edges} edges"
    )
    return SubgraphResult(graph=sub, node_map=node_map, edge_map=edge_map, center=int(remap[center]))
