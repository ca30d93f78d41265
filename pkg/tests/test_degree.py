"""
Tests for degree statistics and the power-law fit
"""
import math

import numpy as np
import pytest
from scipy.special import zeta

from src.graph.degree import MIN_TAIL_NODES, degree_histogram, fit_power_law, graph_summary, total_degree
from src.graph.twmdg import build_graph
from src.utils.errors import MathError


def test_total_degree(example_graph):
    """Test total degree counts each parallel edge"""
    assert total_degree(example_graph).tolist() == [3, 7, 2, 3, 3, 2]


def test_histogram_pairs(example_graph):
    """Test histogram pairs are sorted by degree and sum to the node count"""
    hist = degree_histogram(example_graph)
    assert hist.pairs == [(2, 2), (3, 3), (7, 1)]
    assert hist.total_nodes() == example_graph.num_nodes
    assert hist.as_dict()[3] == 3


def test_fit_unavailable_on_small_tail(example_graph):
    """Test fewer than ten tail nodes means no exponent"""
    hist = degree_histogram(example_graph)
    assert not hist.fit_available
    assert hist.fitted_exponent is None
    assert hist.n_tail == 6


def test_fit_power_law_formula():
    """Test the approximate estimator against the closed form"""
    degrees = np.array([1, 1, 2, 2, 3, 4, 5, 8, 13, 21, 34, 55])
    gamma, n_tail = fit_power_law(degrees, xmin=2, exact=False)
    tail = degrees[degrees >= 2]
    expected = 1 + len(tail) / np.log(tail / 1.5).sum()
    assert n_tail == len(tail)
    assert gamma == pytest.approx(expected)


def test_fit_power_law_threshold():
    """Test exactly MIN_TAIL_NODES tail values are enough"""
    degrees = np.arange(1, MIN_TAIL_NODES + 1)
    assert fit_power_law(degrees, xmin=1)[0] is not None
    assert fit_power_law(degrees, xmin=2)[0] is None


def test_fit_power_law_bad_xmin():
    """Test xmin below one is refused"""
    with pytest.raises(MathError):
        fit_power_law(np.array([1, 2, 3]), xmin=0)


def test_fit_recovers_exponent_from_sampled_degrees():
    """Test the estimator on degrees drawn from a discrete power law"""
    rng = np.random.default_rng(11)
    gamma = 2.5
    # continuous Pareto rounded down is close to a discrete power law for large xmin
    samples = np.floor(5 * np.power(1.0 - rng.random(50_000), -1.0 / (gamma - 1.0)))
    fitted, _ = fit_power_law(samples, xmin=20)
    assert fitted == pytest.approx(gamma, abs=0.15)


def test_exact_fit_recovers_exponent_from_degree_one():
    """Test the zeta likelihood recovers gamma on Zipf samples at xmin=1"""
    samples = np.random.default_rng(12).zipf(2.5, 50_000)
    fitted, n_tail = fit_power_law(samples, xmin=1)
    assert n_tail == 50_000
    assert fitted == pytest.approx(2.5, abs=0.05)


def test_closed_form_underestimates_at_degree_one():
    """Test the approximate estimator is biased low when xmin=1"""
    samples = np.random.default_rng(12).zipf(2.5, 50_000)
    approximate, _ = fit_power_law(samples, xmin=1, exact=False)
    assert approximate < 2.2


def test_exact_fit_is_likelihood_maximum():
    """Test nearby exponents have a lower zeta log-likelihood"""
    samples = np.random.default_rng(13).zipf(3.0, 5000)
    fitted, _ = fit_power_law(samples, xmin=2)
    tail = samples[samples >= 2]

    def log_likelihood(gamma):
        return -len(tail) * math.log(zeta(gamma, 2)) - gamma * np.log(tail).sum()

    assert log_likelihood(fitted) >= log_likelihood(fitted - 0.01)
    assert log_likelihood(fitted) >= log_likelihood(fitted + 0.01)


def test_histogram_empty_graph():
    """Test a graph without nodes cannot be summarised"""
    with pytest.raises(MathError):
        degree_histogram(build_graph([]))


def test_graph_summary(example_graph):
    """Test summary figures for the example graph"""
    summary = graph_summary(example_graph)
    assert summary.nodes == 6
    assert summary.edges == 10
    assert summary.distinct_pairs == 9
    assert summary.parallel_surplus == 1
    assert summary.self_loops == 0
    assert (summary.first_timestamp, summary.last_timestamp) == (1, 10)
    assert summary.total_weight == pytest.approx(17.5)
    assert math.isclose(summary.mean_degree, 20 / 6)
    assert set(summary.to_dict()) >= {"nodes", "edges", "mean_degree"}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
