"""
Tests for temporal and static walk samplers
"""
import numpy as np
import pytest

from src.graph.subgraph import collapse_to_static
from src.graph.twmdg import build_graph
from src.synth.generator import SynthConfig, generate
from src.walks.rng import stage_rng, task_rng
from src.walks.sampler import (
    StaticWalkMode,
    TemporalWalk,
    node2vec_weights,
    sample_static_walk,
    sample_temporal_walk,
    validate_temporal_walk,
)
from src.walks.strategies import TemporalStrategy, WalkConfig, WeightStrategy


def test_walk_respects_time_order(random_graph):
    """Test every sampled walk is a valid temporal walk"""
    g = random_graph(30, 400, seed=2, horizon=100)
    cfg = WalkConfig(walk_length=12)
    for node in range(g.num_nodes):
        for i in range(5):
            walk = sample_temporal_walk(g, node, cfg, task_rng(7, node, i))
            assert validate_temporal_walk(g, walk)
            assert 1 <= len(walk) <= 12


def test_walk_stops_at_dead_end():
    """Test a walk ends where no later edge leaves the node"""
    g = build_graph([("a", "b", 1.0, 5), ("b", "c", 1.0, 3), ("b", "d", 1.0, 6)])
    cfg = WalkConfig(walk_length=10)
    walk = sample_temporal_walk(g, g.node_id("a"), cfg, stage_rng(0, 0))
    # b -> c happened before a -> b, so only b -> d is valid
    assert [g.label(v) for v in walk.node_seq] == ["a", "b", "d"]
    assert walk.edge_seq == [0, 2]


def test_walk_from_sink_is_single_node():
    """Test a start node without out-edges yields a one-node walk"""
    g = build_graph([("a", "b", 1.0, 1)])
    walk = sample_temporal_walk(g, g.node_id("b"), WalkConfig(), stage_rng(0, 0))
    assert walk.node_seq == [g.node_id("b")]
    assert walk.edge_seq == []


def test_walk_equal_timestamps_allowed():
    """Test non-decreasing (not strictly increasing) time is valid"""
    g = build_graph([("a", "b", 1.0, 4), ("b", "c", 1.0, 4)])
    walk = sample_temporal_walk(g, 0, WalkConfig(walk_length=3), stage_rng(0, 0))
    assert [g.label(v) for v in walk.node_seq] == ["a", "b", "c"]


def test_walk_length_cap(example_graph):
    """Test the walk never exceeds walk_length nodes"""
    cfg = WalkConfig(walk_length=2)
    walk = sample_temporal_walk(example_graph, 0, cfg, stage_rng(1, 0))
    assert len(walk) == 2
    assert len(walk.edge_seq) == 1


def test_walk_is_reproducible(example_graph):
    """Test identical streams give identical walks"""
    cfg = WalkConfig(walk_length=6)
    first = sample_temporal_walk(example_graph, 0, cfg, task_rng(3, 0, 0))
    second = sample_temporal_walk(example_graph, 0, cfg, task_rng(3, 0, 0))
    assert first == second


def test_first_hop_frequencies_follow_law(example_graph):
    """Test empirical first-hop choices from A1 match biased_raw"""
    cfg = WalkConfig(walk_length=2, temporal=TemporalStrategy.UNBIASED,
                     weighted=WeightStrategy.BIASED_RAW, alpha=0.0)
    a1 = example_graph.node_id("A1")
    counts = {1: 0, 4: 0, 5: 0, 9: 0}
    n = 20_000
    rng = stage_rng(123, 0)
    for _ in range(n):
        counts[sample_temporal_walk(example_graph, a1, cfg, rng).edge_seq[0]] += 1
    # amounts 1.0, 3.0, 1.0, 4.0
    expected = {1: 1 / 9, 4: 3 / 9, 5: 1 / 9, 9: 4 / 9}
    for edge, share in expected.items():
        assert counts[edge] / n == pytest.approx(share, abs=0.015)


def test_validate_rejects_broken_walks(example_graph):
    """Test the independent validator catches each violation"""
    assert not validate_temporal_walk(example_graph, TemporalWalk())
    # e5 (A1->A3 @5) then e3 (A2->A3 @4): wrong source
    assert not validate_temporal_walk(example_graph, TemporalWalk([1, 3, 4], [4, 3]))
    # e5 (A1->A3 @5) then e1 (A0->A1 @1) out of order and disconnected
    assert not validate_temporal_walk(example_graph, TemporalWalk([1, 3, 1], [4, 0]))
    # e2 (A1->A2 @2), e4 (A2->A3 @4), e7 (A3->A4 @7)
    assert validate_temporal_walk(example_graph, TemporalWalk([1, 2, 3, 4], [1, 3, 6]))
    # time goes backwards: e10 (A1->A0 @10) then e1 (A0->A1 @1)
    assert not validate_temporal_walk(example_graph, TemporalWalk([1, 0, 1], [9, 0]))


def test_node2vec_weights(example_graph):
    """Test return, stay-close and move-away biases"""
    static = collapse_to_static(example_graph)
    # walked a0 -> a1; a1's neighbours are a0, a2, a3, a4
    weights = node2vec_weights(static, 0, static.out_neighbors(1), p=2.0, q=4.0)
    # a0 is the return; none of a2, a3, a4 links back to a0
    assert weights.tolist() == [0.5, 0.25, 0.25, 0.25]
    # walked a2 -> a3; a3's only neighbour a4 has no edge to a2
    assert node2vec_weights(static, 2, static.out_neighbors(3), 1.0, 0.5).tolist() == [2.0]


def test_node2vec_weights_linked_candidate():
    """Test weight 1 for a candidate linking back to the previous node"""
    g = build_graph([("p", "c", 1.0, 0), ("c", "x", 1.0, 1), ("x", "p", 1.0, 2)])
    static = collapse_to_static(g)
    weights = node2vec_weights(static, g.node_id("p"), static.out_neighbors(g.node_id("c")), 3.0, 3.0)
    assert weights.tolist() == [1.0]


def test_static_walks_follow_edges(example_graph):
    """Test uniform and node2vec walks only use static edges"""
    static = collapse_to_static(example_graph)
    for mode in StaticWalkMode:
        for i in range(20):
            walk = sample_static_walk(static, 2, 8, mode, task_rng(0, 2, i, 1), p=0.5, q=2.0)
            assert len(walk) == 8
            assert all(static.has_edge(u, v) for u, v in zip(walk, walk[1:]))


def test_static_walk_dead_end():
    """Test static walks stop at sinks"""
    static = collapse_to_static(build_graph([("a", "b", 1.0, 0)]))
    assert sample_static_walk(static, 0, 5, "uniform", stage_rng(0, 1)) == [0, 1]


def test_node2vec_unit_parameters_match_uniform(example_graph):
    """Test p = q = 1 reproduces the uniform walk for the same stream"""
    static = collapse_to_static(example_graph)
    for i in range(10):
        uniform = sample_static_walk(static, 0, 6, StaticWalkMode.UNIFORM, task_rng(9, 0, i, 1))
        biased = sample_static_walk(static, 0, 6, StaticWalkMode.NODE2VEC, task_rng(9, 0, i, 1))
        assert uniform == biased


def test_sampler_consumes_no_draw_for_single_candidate():
    """Test a forced step leaves the stream untouched"""
    g = build_graph([("a", "b", 1.0, 0), ("b", "c", 1.0, 1)])
    rng = stage_rng(4, 0)
    sample_temporal_walk(g, 0, WalkConfig(walk_length=3), rng)
    assert rng.random() == stage_rng(4, 0).random()


def test_static_uniform_step_frequencies():
    """Test each of four out-neighbours gets a quarter of 10^5 steps"""
    g = build_graph([("hub", f"leaf{i}", float(i + 1), i) for i in range(4)])
    static = collapse_to_static(g)
    hub = g.node_id("hub")
    rng = stage_rng(11, 1)
    counts = np.zeros(g.num_nodes, dtype=np.int64)
    for _ in range(100_000):
        counts[sample_static_walk(static, hub, 2, StaticWalkMode.UNIFORM, rng)[1]] += 1
    shares = counts[static.out_neighbors(hub)] / 100_000
    assert shares == pytest.approx([0.25] * 4, abs=0.01)


def test_walks_on_synthetic_graph_are_temporal():
    """Test 10^4 walks over a generated graph all respect time order"""
    g, _ = generate(SynthConfig(n_nodes=500, n_background_edges=5000, n_chains=20, seed=3))
    cfg = WalkConfig(walk_length=10)
    checked = 0
    for node in range(g.num_nodes):
        for i in range(20):
            walk = sample_temporal_walk(g, node, cfg, task_rng(5, node, i))
            assert validate_temporal_walk(g, walk)
            checked += 1
    assert checked >= 9000


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
