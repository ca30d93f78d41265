"""
Corpus vocabulary and negative-sampling table
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from src.utils.errors import EmptyVocabError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)

NEGATIVE_POWER = 0.75


@dataclass
class Vocab:
    """
    Node labels ordered by descending frequency, ties by label

    `cum_table` is the running sum of freq^0.75 normalised to 1; a negative
    is drawn by searching it with one uniform variate.
    """

    labels: Tuple[str, ...]
    counts: np.ndarray
    index: Dict[str, int] = field(init=False)
    negative_probabilities: np.ndarray = field(init=False)
    cum_table: np.ndarray = field(init=False)

    def __post_init__(self):
        self.index = {label: i for i, label in enumerate(self.labels)}
        mass = np.power(self.counts.astype(np.float64), NEGATIVE_POWER)
        self.negative_probabilities = mass / mass.sum()
        self.cum_table = np.cumsum(self.negative_probabilities)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.index

    def frequency(self, label: str) -> int:
        return int(self.counts[self.index[label]])

    def encode(self, walk: Iterable[str]) -> np.ndarray:
        """Walk labels to vocab indices; out-of-vocab labels are dropped."""
        return np.array([self.index[t] for t in walk if t in self.index], dtype=np.int64)

    def sample_negatives(self, rng: np.random.Generator, size) -> np.ndarray:
        draws = rng.random(size) * self.cum_table[-1]
        picks = np.searchsorted(self.cum_table, draws, side="right")
        return np.minimum(picks, len(self.labels) - 1)


def build_vocab(corpus: Sequence[Sequence[str]], min_count: int = 1) -> Vocab:
    """
    Count node occurrences and drop nodes seen fewer than min_count times

    Raises:
        EmptyVocabError: nothing survives the threshold
    """
    counter: Counter = Counter()
    for walk in corpus:
        counter.update(walk)
    kept: List[Tuple[str, int]] = sorted(
        ((label, n) for label, n in counter.items() if n >= min_count),
        key=lambda item: (-item[1], item[0]),
    )
    if not kept:
        raise EmptyVocabError(
            f"empty vocabulary: {len(counter)} distinct nodes, none with frequency >= {min_count}"
        )
    vocab = Vocab(
        labels=tuple(label for label, _ in kept),
        counts=np.array([n for _, n in kept], dtype=np.int64),
    )
    logger.debug(f"Vocabulary: {len(vocab)} of {len(counter)} nodes kept (min_count={min_count})")
    return vocab
