"""
Edge-selection laws for temporal walks

Every function returns a probability vector aligned with the candidate
edge ids it was given. Rank-based laws use ordinal ranks, ties broken by
edge id, so the rank sum over L candidates is always L(L+1)/2.
"""

from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.graph.twmdg import Twmdg
from src.utils.errors import DimensionError, MathError, NoCandidatesError


class TemporalStrategy(str, Enum):
    """Time-domain law over L_t(v)."""

    UNBIASED = "unbiased"              # uniform
    BIASED_RECENT = "biased_recent"    # descending time rank, favours edges close to t
    BIASED_DISTANT = "biased_distant"  # ascending time rank, favours later edges


class WeightStrategy(str, Enum):
    """Amount-domain law over L_t(v)."""

    UNBIASED = "unbiased"            # uniform
    BIASED_RAW = "biased_raw"        # proportional to amount
    BIASED_LINEAR = "biased_linear"  # proportional to ascending amount rank


class WalkConfig(BaseModel):
    """Walk length l, walks per node r, blend alpha and the two laws."""

    model_config = ConfigDict(frozen=True)

    walk_length: int = Field(10, ge=2)
    walks_per_node: int = Field(20, ge=1)
    alpha: float = Field(0.5, ge=0.0, le=1.0)
    temporal: TemporalStrategy = TemporalStrategy.BIASED_RECENT
    weighted: WeightStrategy = WeightStrategy.BIASED_RAW
    min_emit_length: int = Field(2, ge=2)
    seed: int = Field(42, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _emit_within_length(self):
        if self.min_emit_length > self.walk_length:
            raise ValueError("min_emit_length must not exceed walk_length")
        return self

    @property
    def is_uniform(self) -> bool:
        return (
            self.temporal == TemporalStrategy.UNBIASED
            and self.weighted == WeightStrategy.UNBIASED
        )


def _check_candidates(candidates: Sequence[int]) -> np.ndarray:
    ids = np.asarray(candidates, dtype=np.int64)
    if ids.size == 0:
        raise NoCandidatesError("candidate edge set is empty")
    return ids


def ordinal_ranks(keys: np.ndarray, edge_ids: np.ndarray) -> np.ndarray:
    """Ascending ranks 1..L over (key, edge_id)."""
    order = np.lexsort((edge_ids, keys))
    ranks = np.empty(len(order), dtype=np.float64)
    ranks[order] = np.arange(1, len(order) + 1, dtype=np.float64)
    return ranks


def _uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def temporal_probabilities(
    g: Twmdg, candidates: Sequence[int], strategy: TemporalStrategy
) -> np.ndarray:
    """
    P_T over the candidate edges

    Raises:
        NoCandidatesError: empty candidate list
    """
    ids = _check_candidates(candidates)
    strategy = TemporalStrategy(strategy)
    if strategy == TemporalStrategy.UNBIASED:
        return _uniform(len(ids))

    ranks = ordinal_ranks(g.timestamp[ids], ids)
    if strategy == TemporalStrategy.BIASED_RECENT:
        # earliest candidate gets rank L
        ranks = len(ids) + 1 - ranks
    return ranks / ranks.sum()


def weight_probabilities(
    g: Twmdg, candidates: Sequence[int], strategy: WeightStrategy
) -> np.ndarray:
    """
    P_W over the candidate edges

    Raises:
        NoCandidatesError: empty candidate list
    """
    ids = _check_candidates(candidates)
    strategy = WeightStrategy(strategy)
    if strategy == WeightStrategy.UNBIASED:
        return _uniform(len(ids))
    if strategy == WeightStrategy.BIASED_RAW:
        weights = g.weight[ids]
        return weights / weights.sum()

    ranks = ordinal_ranks(g.weight[ids], ids)
    return ranks / ranks.sum()


def combined_probabilities(p_t: np.ndarray, p_w: np.ndarray, alpha: float) -> np.ndarray:
    """
    Blend P(e) = P_T(e)^alpha * P_W(e)^(1 - alpha), renormalised over L_t

    alpha = 1 and alpha = 0 return copies of p_t and p_w exactly.

    Raises:
        DimensionError: vectors differ in length or are empty
        MathError: alpha outside [0, 1] or the product underflows to zero
    """
    p_t = np.asarray(p_t, dtype=np.float64)
    p_w = np.asarray(p_w, dtype=np.float64)
    if p_t.shape != p_w.shape or p_t.ndim != 1 or p_t.size == 0:
        raise DimensionError(f"probability vectors differ: {p_t.shape} vs {p_w.shape}")
    if not 0.0 <= alpha <= 1.0:
        raise MathError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 1.0:
        return p_t.copy()
    if alpha == 0.0:
        return p_w.copy()

    blended = np.power(p_t, alpha) * np.power(p_w, 1.0 - alpha)
    total = blended.sum()
    if not total > 0:
        raise MathError("blended probabilities vanish")
    return blended / total


def edge_probabilities(g: Twmdg, candidates: Sequence[int], cfg: WalkConfig) -> np.ndarray:
    """Full selection law for one walk step under cfg."""
    ids = _check_candidates(candidates)
    if cfg.is_uniform:
        return _uniform(len(ids))
    p_t = temporal_probabilities(g, ids, cfg.temporal)
    p_w = weight_probabilities(g, ids, cfg.weighted)
    return combined_probabilities(p_t, p_w, cfg.alpha)


def choose_index(probabilities: np.ndarray, u: float) -> int:
    """Inverse-CDF draw: smallest i with cdf[i] > u * total."""
    cdf = np.cumsum(probabilities)
    index = int(np.searchsorted(cdf, u * cdf[-1], side="right"))
    return min(index, len(cdf) - 1)
