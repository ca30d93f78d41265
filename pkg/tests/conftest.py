import os

import numpy as np
import pytest

from src.graph.twmdg import build_graph
from src.utils.logging_factory import LoggingFactory

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

# Ten transfers among six accounts, timestamp = position in the list
EXAMPLE_RECORDS = [
    ("A0", "A1", 2.0, 1),
    ("A1", "A2", 1.0, 2),
    ("A0", "A1", 0.5, 3),
    ("A2", "A3", 1.5, 4),
    ("A1", "A3", 3.0, 5),
    ("A1", "A4", 1.0, 6),
    ("A3", "A4", 2.5, 7),
    ("A4", "A5", 0.8, 8),
    ("A5", "A1", 1.2, 9),
    ("A1", "A0", 4.0, 10),
]


def make_random_records(n_nodes: int, n_edges: int, seed: int = 0, horizon: int = 1000):
    """Uniform random transfers; labels n0..n{n-1}."""
    rng = np.random.default_rng(seed)
    src = rng.integers(0, n_nodes, size=n_edges)
    dst = rng.integers(0, n_nodes, size=n_edges)
    weights = rng.uniform(0.1, 10.0, size=n_edges)
    times = rng.integers(0, horizon, size=n_edges)
    return [(f"n{s}", f"n{d}", float(w), int(t)) for s, d, w, t in zip(src, dst, weights, times)]


@pytest.fixture
def example_records():
    return list(EXAMPLE_RECORDS)


@pytest.fixture
def example_graph():
    return build_graph(EXAMPLE_RECORDS)


@pytest.fixture
def random_graph():
    """Factory: random_graph(n_nodes, n_edges, seed=0, horizon=1000)."""

    def factory(n_nodes: int, n_edges: int, seed: int = 0, horizon: int = 1000):
        return build_graph(make_random_records(n_nodes, n_edges, seed, horizon))

    return factory


@pytest.fixture
def etherscan_fixture_dir():
    return os.path.join(FIXTURE_DIR, "etherscan")


@pytest.fixture(autouse=True)
def _reset_logging():
    # CLI runs install root handlers; drop them so each test starts clean
    yield
    LoggingFactory.reset()
