"""
Walk Corpus Generation
Parallel over (node, walk-index) tasks with per-task RNG streams
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

from src.graph.subgraph import StaticDigraph
from src.graph.twmdg import Twmdg
from src.utils.errors import ArtifactIOError
from src.utils.log_decorators import log_execution_time
from src.utils.logging_factory import get_logger
from src.walks.rng import STREAM_STATIC_WALKS, STREAM_WALKS, task_rng
from src.walks.sampler import (
    StaticWalkMode,
    sample_static_walk,
    sample_temporal_walk,
    validate_temporal_walk,
)
from src.walks.strategies import WalkConfig

logger = get_logger(__name__)

# One walk per entry, each a list of node labels
WalkCorpus = List[List[str]]

NODES_PER_TASK = 256


def resolve_workers(workers: Optional[int]) -> int:
    """0 or None means all cores."""
    if not workers:
        return os.cpu_count() or 1
    return max(1, int(workers))


def _run_tasks(
    num_nodes: int,
    walks_per_node: int,
    workers: int,
    walk_nodes: Callable[[int, range], List[List[str]]],
) -> WalkCorpus:
    """
    Fan node chunks out to a thread pool, one pass per walk index

    Results are collected with `map`, which preserves submission order, so
    the corpus is ordered by (walk_index, node) whatever the worker count.
    """
    chunks = [range(lo, min(lo + NODES_PER_TASK, num_nodes)) for lo in range(0, num_nodes, NODES_PER_TASK)]
    corpus: WalkCorpus = []
    if workers == 1:
        for walk_index in range(walks_per_node):
            for chunk in chunks:
                corpus.extend(walk_nodes(walk_index, chunk))
        return corpus

    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="walks") as pool:
        for walk_index in range(walks_per_node):
            for walks in pool.map(lambda chunk: walk_nodes(walk_index, chunk), chunks):
                corpus.extend(walks)
    return corpus


@log_execution_time(slow_threshold_ms=30_000)
def generate_corpus(
    g: Twmdg, cfg: WalkConfig, workers: Optional[int] = 1, verify: bool = False
) -> WalkCorpus:
    """
    Temporal walk corpus over every node of g

    r walks start at each node; walks with fewer than cfg.min_emit_length
    nodes are discarded. Each (node, walk_index) task seeds its own stream,
    so the output is bit-identical for any `workers`.

    Args:
        g: Graph to walk
        cfg: Walk configuration
        workers: Thread count; 0/None means all cores
        verify: Re-check every walk with validate_temporal_walk

    Returns:
        List of walks as node-label lists
    """
    workers = resolve_workers(workers)
    if g.num_edges == 0:
        logger.info("Graph has no edges; corpus is empty")
        return []

    def walk_nodes(walk_index: int, nodes: range) -> List[List[str]]:
        walks = []
        for node in nodes:
            walk = sample_temporal_walk(g, node, cfg, task_rng(cfg.seed, node, walk_index, STREAM_WALKS))
            if verify and not validate_temporal_walk(g, walk):
                raise AssertionError(f"invalid temporal walk from node {node}: {walk}")
            if len(walk) >= cfg.min_emit_length:
                walks.append([g.label(v) for v in walk.node_seq])
        return walks

    corpus = _run_tasks(g.num_nodes, cfg.walks_per_node, workers, walk_nodes)
    logger.info(
        f"Generated {len(corpus)} temporal walks from {g.num_nodes} nodes "
        f"(r={cfg.walks_per_node}, l={cfg.walk_length}, {cfg.temporal.value}/{cfg.weighted.value}, "
        f"alpha={cfg.alpha}, workers={workers})"
    )
    return corpus


@log_execution_time(slow_threshold_ms=30_000)
def generate_static_corpus(
    static: StaticDigraph,
    walk_length: int,
    walks_per_node: int,
    mode: StaticWalkMode,
    seed: int,
    p: float = 1.0,
    q: float = 1.0,
    min_emit_length: int = 2,
    workers: Optional[int] = 1,
) -> WalkCorpus:
    """DeepWalk / node2vec corpus over a collapsed digraph, same determinism contract."""
    workers = resolve_workers(workers)
    mode = StaticWalkMode(mode)
    if static.num_edges == 0:
        logger.info("Static graph has no edges; corpus is empty")
        return []

    def walk_nodes(walk_index: int, nodes: range) -> List[List[str]]:
        walks = []
        for node in nodes:
            rng = task_rng(seed, node, walk_index, STREAM_STATIC_WALKS)
            walk = sample_static_walk(static, node, walk_length, mode, rng, p, q)
            if len(walk) >= min_emit_length:
                walks.append([static.labels[v] for v in walk])
        return walks

    corpus = _run_tasks(static.num_nodes, walks_per_node, workers, walk_nodes)
    logger.info(
        f"Generated {len(corpus)} static {mode.value} walks "
        f"(r={walks_per_node}, l={walk_length}, p={p}, q={q}, workers={workers})"
    )
    return corpus


def write_corpus(path: str, corpus: Sequence[Sequence[str]]) -> None:
    """One walk per line, labels separated by single spaces, UTF-8."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for walk in corpus:
                f.write(" ".join(walk))
                f.write("\n")
    except OSError as e:
        raise ArtifactIOError(f"cannot write corpus {path}: {e}") from e
    logger.info(f"Wrote {len(corpus)} walks to {path}")


def read_corpus(path: str) -> WalkCorpus:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return [line.split(" ") for line in f.read().splitlines() if line]
    except OSError as e:
        raise ArtifactIOError(f"cannot read corpus {path}: {e}") from e
