"""
Walk samplers: temporal walks on a TWMDG and DeepWalk/node2vec walks on
the collapsed static digraph
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from src.graph.subgraph import StaticDigraph
from src.graph.twmdg import Twmdg
from src.walks.strategies import WalkConfig, choose_index, edge_probabilities


@dataclass
class TemporalWalk:
    """Node sequence v_1..v_n with the n-1 edges traversed between them."""

    node_seq: List[int] = field(default_factory=list)
    edge_seq: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.node_seq)


class StaticWalkMode(str, Enum):
    UNIFORM = "uniform"
    NODE2VEC = "node2vec"


def sample_temporal_walk(
    g: Twmdg, start: int, cfg: WalkConfig, rng: np.random.Generator
) -> TemporalWalk:
    """
    One temporal walk from `start`

    The first hop may use any out-edge; each later hop draws from
    L_{T(e_prev)}(v) under the configured law. Stops at cfg.walk_length
    nodes or at a node with no temporally valid successor.
    """
    walk = TemporalWalk(node_seq=[int(start)])
    t: Optional[int] = None
    current = int(start)
    while len(walk.node_seq) < cfg.walk_length:
        candidates = g.successive_edges(current, t)
        if candidates.size == 0:
            break
        if candidates.size == 1:
            edge = int(candidates[0])
        else:
            probabilities = edge_probabilities(g, candidates, cfg)
            edge = int(candidates[choose_index(probabilities, rng.random())])
        current = int(g.dst[edge])
        t = int(g.timestamp[edge])
        walk.edge_seq.append(edge)
        walk.node_seq.append(current)
    return walk


def validate_temporal_walk(g: Twmdg, walk: TemporalWalk) -> bool:
    """
    Independent check of the temporal-walk definition

    Src(e_i) = v_i, Dst(e_i) = v_{i+1}, and timestamps non-decreasing.
    """
    if not walk.node_seq or len(walk.edge_seq) != len(walk.node_seq) - 1:
        return False
    previous_time = None
    for i, edge in enumerate(walk.edge_seq):
        if g.src[edge] != walk.node_seq[i] or g.dst[edge] != walk.node_seq[i + 1]:
            return False
        if previous_time is not None and g.timestamp[edge] < previous_time:
            return False
        previous_time = g.timestamp[edge]
    return True


def node2vec_weights(
    static: StaticDigraph, previous: int, neighbors: np.ndarray, p: float, q: float
) -> np.ndarray:
    """
    Second-order node2vec biases for leaving `current` after `previous`

    1/p to return, 1 when the candidate links back to `previous`, 1/q otherwise.
    """
    weights = np.empty(len(neighbors), dtype=np.float64)
    for i, x in enumerate(neighbors.tolist()):
        if x == previous:
            weights[i] = 1.0 / p
        elif static.has_edge(x, previous):
            weights[i] = 1.0
        else:
            weights[i] = 1.0 / q
    return weights


def sample_static_walk(
    static: StaticDigraph,
    start: int,
    walk_length: int,
    mode: StaticWalkMode,
    rng: np.random.Generator,
    p: float = 1.0,
    q: float = 1.0,
) -> List[int]:
    """
    DeepWalk (uniform) or node2vec walk over the collapsed digraph

    One uniform draw per step; stops at dead ends.
    """
    mode = StaticWalkMode(mode)
    walk = [int(start)]
    while len(walk) < walk_length:
        neighbors = static.out_neighbors(walk[-1])
        if neighbors.size == 0:
            break
        u = rng.random()
        if mode == StaticWalkMode.UNIFORM or len(walk) == 1:
            index = min(int(u * neighbors.size), neighbors.size - 1)
        else:
            index = choose_index(node2vec_weights(static, walk[-2], neighbors, p, q), u)
        walk.append(int(neighbors[index]))
    return walk
