"""
Tests for positive/negative pair construction and edge features
"""
import itertools

import numpy as np
import pytest

from src.embedding.sgns import EmbeddingMatrix
from src.linkpred.negatives import (
    NEGATIVE,
    POSITIVE,
    available_pairs,
    build_labeled_pairs,
    edge_features,
    feature_matrix,
    sample_negative_pairs,
)
from src.utils.errors import InsufficientPairsError
from src.walks.rng import stage_rng


@pytest.fixture
def emb():
    return EmbeddingMatrix(labels=("a", "b", "c"), phi=np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]]))


def test_negatives_avoid_forbidden_and_self_pairs():
    """Test drawn pairs are distinct, non-self and outside the forbidden set"""
    nodes = [f"n{i}" for i in range(10)]
    forbidden = {("n0", "n1"), ("n2", "n3"), ("n4", "n4")}
    pairs = sample_negative_pairs(nodes, forbidden, 40, stage_rng(0, 3))
    keys = [(p.src, p.dst) for p in pairs]
    assert len(keys) == len(set(keys)) == 40
    assert all(p.src != p.dst for p in pairs)
    assert not set(keys) & forbidden
    assert all(p.label == NEGATIVE for p in pairs)


def test_negatives_single_admissible_set():
    """Test count=1 with one forbidden pair among three nodes"""
    pair = sample_negative_pairs(["A", "B", "C"], {("A", "B")}, 1, stage_rng(5, 3))[0]
    assert (pair.src, pair.dst) in {("B", "A"), ("A", "C"), ("C", "A"), ("B", "C"), ("C", "B")}


def test_negatives_exhaust_exactly():
    """Test every admissible pair can be drawn"""
    pairs = sample_negative_pairs(["A", "B", "C"], {("A", "B")}, 5, stage_rng(1, 3))
    assert {(p.src, p.dst) for p in pairs} == {("B", "A"), ("A", "C"), ("C", "A"), ("B", "C"), ("C", "B")}


def test_negatives_complete_digraph_forbidden():
    """Test no admissible pair left"""
    nodes = ["A", "B", "C"]
    forbidden = {(u, v) for u, v in itertools.product(nodes, nodes) if u != v}
    assert available_pairs(nodes, forbidden) == 0
    with pytest.raises(InsufficientPairsError):
        sample_negative_pairs(nodes, forbidden, 1, stage_rng(0, 3))


def test_negatives_uniform_over_candidates():
    """Test each admissible pair is drawn about equally often"""
    rng = stage_rng(2, 3)
    counts = {}
    n = 50_000
    for _ in range(n):
        pair = sample_negative_pairs(["A", "B", "C"], {("A", "B")}, 1, rng)[0]
        counts[(pair.src, pair.dst)] = counts.get((pair.src, pair.dst), 0) + 1
    assert len(counts) == 5
    for count in counts.values():
        assert count / n == pytest.approx(0.2, abs=0.01)


def test_negatives_zero_count():
    """Test count 0 returns nothing"""
    assert sample_negative_pairs(["A", "B"], set(), 0, stage_rng(0, 3)) == []


def test_negatives_deterministic():
    """Test the same stream gives the same pairs"""
    nodes = [f"n{i}" for i in range(8)]
    first = sample_negative_pairs(nodes, set(), 10, stage_rng(9, 3))
    second = sample_negative_pairs(nodes, set(), 10, stage_rng(9, 3))
    assert first == second


def test_build_labeled_pairs_dedupes_and_skips(emb):
    """Test distinct pairs in first-seen order; unembedded pairs counted"""
    positives, skipped = build_labeled_pairs([("a", "b"), ("b", "c"), ("a", "b"), ("a", "z")], emb)
    assert [(p.src, p.dst) for p in positives] == [("a", "b"), ("b", "c")]
    assert all(p.label == POSITIVE for p in positives)
    assert skipped == 1


def test_edge_features_concatenate(emb):
    """Test F(a,b) = [phi(a), phi(b)] and order sensitivity"""
    assert edge_features(emb, "a", "b").tolist() == [1.0, 2.0, 3.0, 4.0]
    assert edge_features(emb, "b", "a").tolist() == [3.0, 4.0, 1.0, 2.0]
    assert edge_features(emb, "a", "a").tolist() == [1.0, 2.0, 1.0, 2.0]
    assert edge_features(emb, "a", "missing") is None


def test_feature_matrix(emb):
    """Test stacked rows match edge_features"""
    positives, _ = build_labeled_pairs([("a", "c")], emb)
    negatives = sample_negative_pairs(list(emb.labels), {("a", "c")}, 2, stage_rng(0, 3))
    x, y = feature_matrix(emb, positives + negatives)
    assert x.shape == (3, 4)
    assert y.tolist() == [1, 0, 0]
    assert x[0].tolist() == edge_features(emb, "a", "c").tolist()


def test_feature_matrix_empty(emb):
    """Test no pairs gives an empty (0, 2d) matrix"""
    x, y = feature_matrix(emb, [])
    assert x.shape == (0, 4)
    assert y.shape == (0,)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
