"""
SkipGram node embeddings
"""

from .io import read_embeddings, write_embeddings
from .sgns import (
    EmbeddingMatrix,
    SgnsParams,
    cosine_similarity,
    sgns_loss_and_grads,
    sgns_step,
    train_embeddings,
)
from .vocab import Vocab, build_vocab

__all__ = [
    'read_embeddings',
    'write_embeddings',
    'EmbeddingMatrix',
    'SgnsParams',
    'cosine_similarity',
    'sgns_loss_and_grads',
    'sgns_step',
    'train_embeddings',
    'Vocab',
    'build_vocab',
]
