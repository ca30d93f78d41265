"""
Ranking metrics
"""

import numpy as np

from src.utils.errors import DimensionError, UndefinedMetricError


def _check(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise DimensionError(f"{scores.shape} scores vs {labels.shape} labels")
    return scores, labels


def average_ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks, tied values sharing the mean of their positions."""
    unique, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    first = np.cumsum(counts) - counts + 1
    return (first + (counts - 1) / 2.0)[inverse]


def score_auc(scores, labels) -> float:
    """
    ROC AUC as the Mann-Whitney statistic

    (#pos > neg pairs + 0.5 * #ties) / (n_pos * n_neg)

    Raises:
        UndefinedMetricError: only one class present
    """
    scores, labels = _check(scores, labels)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedMetricError("AUC needs both classes")
    rank_sum = float(average_ranks(scores)[labels].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def score_ap(scores, labels) -> float:
    """
    Average precision over the score-descending order, ties in input order

    Raises:
        UndefinedMetricError: no positives
    """
    scores, labels = _check(scores, labels)
    n_pos = int(labels.sum())
    if n_pos == 0:
        raise UndefinedMetricError("AP needs at least one positive")
    ranked = labels[np.argsort(-scores, kind="stable")]
    hits = np.cumsum(ranked)
    precision = hits / np.arange(1, len(ranked) + 1)
    return float(precision[ranked].sum() / n_pos)
