"""
Positive and negative node pairs for link prediction
"""

from dataclasses import dataclass
from typing import Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.embedding.sgns import EmbeddingMatrix
from src.utils.errors import InsufficientPairsError

POSITIVE = 1
NEGATIVE = 0
REJECTION_FACTOR = 100

Pair = Tuple[Hashable, Hashable]


@dataclass(frozen=True)
class LabeledPair:
    """Ordered (src, dst) pair with a 1/0 link label."""

    src: Hashable
    dst: Hashable
    label: int


def available_pairs(nodes: Sequence[Hashable], forbidden: Set[Pair]) -> int:
    """Ordered non-self pairs over `nodes` not in `forbidden`."""
    members = set(nodes)
    blocked = sum(1 for u, v in forbidden if u != v and u in members and v in members)
    return len(members) * (len(members) - 1) - blocked


def sample_negative_pairs(
    nodes: Sequence[Hashable],
    forbidden: Set[Pair],
    count: int,
    rng: np.random.Generator,
) -> List[LabeledPair]:
    """
    Uniform ordered pairs (u, v), u != v, outside `forbidden`, no repeats

    Raises:
        InsufficientPairsError: fewer than `count` admissible pairs, or
            100 * count draws did not find them
    """
    nodes = list(dict.fromkeys(nodes))
    if count <= 0:
        return []
    if available_pairs(nodes, forbidden) < count:
        raise InsufficientPairsError(
            f"only {available_pairs(nodes, forbidden)} admissible pairs for {count} negatives"
        )

    chosen: List[LabeledPair] = []
    seen: Set[Pair] = set()
    n = len(nodes)
    for _ in range(REJECTION_FACTOR * count):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        pair = (nodes[i], nodes[j])
        if pair in forbidden or pair in seen:
            continue
        seen.add(pair)
        chosen.append(LabeledPair(pair[0], pair[1], NEGATIVE))
        if len(chosen) == count:
            return chosen
    raise InsufficientPairsError(
        f"found {len(chosen)} of {count} negative pairs after {REJECTION_FACTOR * count} draws"
    )


def build_labeled_pairs(
    pairs: Iterable[Pair], emb: EmbeddingMatrix
) -> Tuple[List[LabeledPair], int]:
    """
    Distinct positive pairs in first-seen order, dropping unembedded ones

    Returns:
        (positives, number of distinct pairs skipped for a missing embedding)
    """
    positives: List[LabeledPair] = []
    skipped = 0
    for pair in dict.fromkeys(pairs):
        src, dst = pair
        if src in emb and dst in emb:
            positives.append(LabeledPair(src, dst, POSITIVE))
        else:
            skipped += 1
    return positives, skipped


def edge_features(emb: EmbeddingMatrix, src: Hashable, dst: Hashable) -> Optional[np.ndarray]:
    """[phi(src), phi(dst)], or None when either node has no embedding."""
    if src not in emb or dst not in emb:
        return None
    return np.concatenate([emb.vector(src), emb.vector(dst)])


def feature_matrix(emb: EmbeddingMatrix, pairs: Sequence[LabeledPair]) -> Tuple[np.ndarray, np.ndarray]:
    """Stack edge_features rows and labels for pairs known to be embedded."""
    if not pairs:
        return np.zeros((0, 2 * emb.dim)), np.zeros(0, dtype=np.int64)
    src = np.array([emb.index[p.src] for p in pairs], dtype=np.int64)
    dst = np.array([emb.index[p.dst] for p in pairs], dtype=np.int64)
    features = np.hstack([emb.phi[src], emb.phi[dst]])
    labels = np.array([p.label for p in pairs], dtype=np.int64)
    return features, labels
