"""
Tests for the corpus vocabulary and negative table
"""
import numpy as np
import pytest

from src.embedding.vocab import build_vocab
from src.utils.errors import EmptyVocabError
from src.walks.rng import stage_rng

CORPUS = [["a", "b", "c"], ["b", "c"], ["c"]]


def test_vocab_order_by_frequency():
    """Test labels sorted by descending count"""
    vocab = build_vocab(CORPUS)
    assert vocab.labels == ("c", "b", "a")
    assert vocab.counts.tolist() == [3, 2, 1]
    assert vocab.frequency("b") == 2


def test_vocab_ties_broken_by_label():
    """Test equal counts fall back to label order"""
    assert build_vocab([["z", "y", "x"]]).labels == ("x", "y", "z")


def test_vocab_min_count():
    """Test rare labels are dropped and encode skips them"""
    vocab = build_vocab(CORPUS, min_count=2)
    assert len(vocab) == 2
    assert "a" not in vocab
    assert vocab.encode(["a", "c", "unknown", "b"]).tolist() == [0, 1]


def test_vocab_empty_after_threshold():
    """Test nothing surviving min_count is an error"""
    with pytest.raises(EmptyVocabError):
        build_vocab(CORPUS, min_count=4)
    with pytest.raises(EmptyVocabError):
        build_vocab([])


def test_negative_distribution_uses_three_quarter_power():
    """Test negative probabilities are freq^0.75 normalised"""
    vocab = build_vocab(CORPUS)
    mass = np.array([3, 2, 1], dtype=float) ** 0.75
    assert vocab.negative_probabilities == pytest.approx(mass / mass.sum())
    assert vocab.cum_table[-1] == pytest.approx(1.0)


def test_negative_sampling_frequencies():
    """Test empirical negative draws follow the table"""
    vocab = build_vocab(CORPUS)
    draws = vocab.sample_negatives(stage_rng(0, 3), 60_000)
    shares = np.bincount(draws, minlength=3) / len(draws)
    assert shares == pytest.approx(vocab.negative_probabilities, abs=0.01)
    assert draws.min() >= 0
    assert draws.max() < len(vocab)


def test_negative_sampling_shape():
    """Test a 2-d size request"""
    vocab = build_vocab(CORPUS)
    assert vocab.sample_negatives(stage_rng(0, 3), (4, 5)).shape == (4, 5)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
