"""
Degree statistics and power-law fit
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from src.graph.twmdg import Twmdg
from src.utils.errors import MathError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)

MIN_TAIL_NODES = 10
EXPONENT_EPS = 1e-6
MAX_EXPONENT = 60.0


@dataclass
class DegreeHistogram:
    """Total-degree histogram with a discrete power-law MLE."""

    pairs: List[Tuple[int, int]]
    xmin: int
    fitted_exponent: Optional[float] = None
    n_tail: int = 0

    @property
    def fit_available(self) -> bool:
        return self.fitted_exponent is not None

    def as_dict(self) -> Dict[int, int]:
        return dict(self.pairs)

    def total_nodes(self) -> int:
        return sum(count for _, count in self.pairs)


def approximate_exponent(tail: np.ndarray, xmin: int) -> float:
    """Closed form 1 + n / sum(ln(d_i / (xmin - 0.5))); reliable only for xmin >= 6."""
    return 1.0 + len(tail) / float(np.log(tail / (xmin - 0.5)).sum())


def fit_power_law(
    degrees: np.ndarray, xmin: int = 1, exact: bool = True
) -> Tuple[Optional[float], int]:
    """
    Discrete power-law exponent by maximum likelihood over d_i >= xmin

    The exact fit maximises

        -n ln zeta(gamma, xmin) - gamma * sum(ln d_i)

    over gamma in (1, MAX_EXPONENT]. With exact=False the closed-form
    approximation is returned instead; it underestimates gamma for small
    xmin (about 2.0 for a gamma = 2.5 sample at xmin = 1).

    Returns:
        (exponent or None when fewer than 10 degrees reach xmin, tail size)
    """
    if xmin < 1:
        raise MathError(f"xmin must be a positive integer, got {xmin}")
    tail = np.asarray(degrees, dtype=np.float64)
    tail = tail[tail >= xmin]
    n = len(tail)
    if n < MIN_TAIL_NODES:
        return None, n
    if not exact:
        return approximate_exponent(tail, xmin), n

    log_sum = float(np.log(tail).sum())

    def neg_log_likelihood(gamma: float) -> float:
        return n * math.log(zeta(gamma, xmin)) + gamma * log_sum

    result = minimize_scalar(
        neg_log_likelihood,
        bounds=(1.0 + EXPONENT_EPS, MAX_EXPONENT),
        method="bounded",
        options={"xatol": 1e-8},
    )
    return float(result.x), n


def total_degree(g: Twmdg) -> np.ndarray:
    """In + out degree per node, parallel edges counted individually."""
    return g.out_degree() + g.in_degree()


def degree_histogram(g: Twmdg, xmin: int = 1) -> DegreeHistogram:
    """
    Histogram over total degree plus power-law fit

    Raises:
        MathError: graph has no nodes
    """
    if g.num_nodes == 0:
        raise MathError("degree histogram needs at least one node")
    degrees = total_degree(g)
    values, counts = np.unique(degrees, return_counts=True)
    exponent, n_tail = fit_power_law(degrees, xmin)
    if exponent is None:
        logger.warning(f"Power-law fit unavailable: only {n_tail} nodes with degree >= {xmin}")
    else:
        logger.info(f"Power-law fit: gamma={exponent:.3f} over {n_tail} nodes (xmin={xmin})")
    return DegreeHistogram(
        pairs=[(int(v), int(c)) for v, c in zip(values, counts)],
        xmin=xmin,
        fitted_exponent=exponent,
        n_tail=n_tail,
    )


@dataclass
class GraphSummary:
    nodes: int
    edges: int
    distinct_pairs: int
    parallel_surplus: int
    self_loops: int
    first_timestamp: Optional[int]
    last_timestamp: Optional[int]
    total_weight: float
    mean_degree: float

    def to_dict(self) -> Dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "distinct_pairs": self.distinct_pairs,
            "parallel_surplus": self.parallel_surplus,
            "self_loops": self.self_loops,
            "first_timestamp": self.first_timestamp,
            "last_timestamp": self.last_timestamp,
            "total_weight": self.total_weight,
            "mean_degree": self.mean_degree,
        }


def graph_summary(g: Twmdg) -> GraphSummary:
    """Size, multiplicity and time-span figures for the stats report."""
    m = g.num_edges
    distinct = int(len(np.unique(g.src * max(g.num_nodes, 1) + g.dst))) if m else 0
    return GraphSummary(
        nodes=g.num_nodes,
        edges=m,
        distinct_pairs=distinct,
        parallel_surplus=m - distinct,
        self_loops=int(np.count_nonzero(g.src == g.dst)),
        first_timestamp=int(g.timestamp.min()) if m else None,
        last_timestamp=int(g.timestamp.max()) if m else None,
        total_weight=float(g.weight.sum()) if m else 0.0,
        mean_degree=float(2 * m / g.num_nodes) if g.num_nodes else 0.0,
    )

