"""
Walk engine: selection laws, samplers and corpus generation
"""

from .corpus import (
    WalkCorpus,
    generate_corpus,
    generate_static_corpus,
    read_corpus,
    write_corpus,
)
from .rng import stage_rng, task_rng
from .sampler import (
    StaticWalkMode,
    TemporalWalk,
    sample_static_walk,
    sample_temporal_walk,
    validate_temporal_walk,
)
from .strategies import (
    TemporalStrategy,
    WalkConfig,
    WeightStrategy,
    choose_index,
    combined_probabilities,
    edge_probabilities,
    temporal_probabilities,
    weight_probabilities,
)

__all__ = [
    'WalkCorpus',
    'generate_corpus',
    'generate_static_corpus',
    'read_corpus',
    'write_corpus',
    'stage_rng',
    'task_rng',
    'StaticWalkMode',
    'TemporalWalk',
    'sample_static_walk',
    'sample_temporal_walk',
    'validate_temporal_walk',
    'TemporalStrategy',
    'WalkConfig',
    'WeightStrategy',
    'choose_index',
    'combined_probabilities',
    'edge_probabilities',
    'temporal_probabilities',
    'weight_probabilities',
]
