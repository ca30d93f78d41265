"""
Reproducible random streams

Each consumer derives its own numpy Generator from the master seed via
SeedSequence entropy tuples, so results never depend on how work is
scheduled across workers.
"""

import numpy as np

# Stream identifiers; appended to the master seed to keep stages independent
STREAM_WALKS = 0
STREAM_STATIC_WALKS = 1
STREAM_SGNS = 2
STREAM_NEGATIVES = 3
STREAM_CLASSIFIER = 4
STREAM_SYNTH = 5


def task_rng(seed: int, node: int, walk_index: int, stream: int = STREAM_WALKS) -> np.random.Generator:
    """Generator for one (node, walk-index) walk task."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream, node, walk_index])))


def stage_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for a sequential pipeline stage."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))
