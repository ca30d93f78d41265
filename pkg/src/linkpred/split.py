"""
Time-ordered train/test split of the edge list
"""

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.graph.twmdg import TemporalEdge
from src.utils.errors import SplitError


class SplitSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    train_fraction: float = Field(0.5, gt=0.0, lt=1.0)


def train_size(m: int, train_fraction: float) -> int:
    """ceil(fraction * m) in exact arithmetic, kept within [1, m - 1]."""
    n = math.ceil(Fraction(str(train_fraction)) * m)
    return min(max(n, 1), m - 1)


def temporal_split(
    edges: Sequence[TemporalEdge], spec: SplitSpec = SplitSpec()
) -> Tuple[List[TemporalEdge], List[TemporalEdge]]:
    """
    Earlier edges train, later edges test

    Edges are ordered by (timestamp, edge_id); the first ceil(fraction * m)
    form the training set, so ties at the boundary fall by edge id.

    Raises:
        SplitError: fewer than two edges
    """
    if len(edges) < 2:
        raise SplitError(f"temporal split needs at least 2 edges, got {len(edges)}")
    ordered = sorted(edges, key=lambda e: (e.timestamp, e.edge_id))
    n_train = train_size(len(ordered), spec.train_fraction)
    return ordered[:n_train], ordered[n_train:]
