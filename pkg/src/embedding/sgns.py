"""
SkipGram with Negative Sampling
Node embeddings learned from a walk corpus by plain SGD
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.embedding.vocab import Vocab, build_vocab
from src.utils.errors import DimensionError
from src.utils.log_decorators import log_execution_time
from src.utils.logging_factory import get_logger
from src.walks.rng import STREAM_SGNS, stage_rng

logger = get_logger(__name__)

LOGIT_CLIP = 30.0
NEGATIVE_RESAMPLE_ATTEMPTS = 8
MIN_LR_FRACTION = 1e-4
TRAIN_DTYPE = np.float32


class SgnsParams(BaseModel):
    """Dimension d, window k, negatives, epochs, initial lr, seed, pairs per update."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(128, ge=1)
    k: int = Field(4, ge=1)
    n_neg: int = Field(5, ge=1)
    epochs: int = Field(5, ge=1)
    lr: float = Field(0.025, gt=0.0)
    seed: int = Field(42, ge=0, lt=2**64)
    min_count: int = Field(1, ge=0)
    batch_pairs: int = Field(2048, ge=1)


@dataclass
class EmbeddingMatrix:
    """Input vectors phi and context vectors psi, one row per vocab label."""

    labels: Tuple[str, ...]
    phi: np.ndarray
    psi: Optional[np.ndarray] = None
    loss_history: List[float] = field(default_factory=list)
    index: Dict[str, int] = field(init=False)

    def __post_init__(self):
        self.index = {label: i for i, label in enumerate(self.labels)}
        if self.phi.shape[0] != len(self.labels):
            raise DimensionError(f"{self.phi.shape[0]} rows for {len(self.labels)} labels")

    @property
    def dim(self) -> int:
        return int(self.phi.shape[1])

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.index

    def vector(self, label: str) -> np.ndarray:
        return self.phi[self.index[label]]

    def most_similar(self, label: str, topn: int = 10) -> List[Tuple[str, float]]:
        """Nearest labels by cosine similarity, excluding `label` itself."""
        target = self.vector(label)
        norms = np.linalg.norm(self.phi, axis=1) * np.linalg.norm(target)
        with np.errstate(divide="ignore", invalid="ignore"):
            sims = np.where(norms > 0, self.phi @ target / norms, 0.0)
        sims[self.index[label]] = -np.inf
        order = np.argsort(-sims, kind="stable")[:topn]
        return [(self.labels[i], float(sims[i])) for i in order]


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    norm = float(np.linalg.norm(a) * np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    return float(np.dot(a, b) / norm)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def sgns_loss_and_grads(
    v: np.ndarray, u_context: np.ndarray, u_negatives: np.ndarray
) -> Tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """
    Loss and gradients for one (center, context, negatives) sample

        loss = -log s(v.u_o) - sum_n log s(-v.u_n)

    Logits are clamped to [-30, 30].

    Returns:
        (loss, d/dv, d/du_o, d/du_n stacked by row)
    """
    u_negatives = np.atleast_2d(u_negatives)
    s_pos = float(np.clip(v @ u_context, -LOGIT_CLIP, LOGIT_CLIP))
    s_neg = np.clip(u_negatives @ v, -LOGIT_CLIP, LOGIT_CLIP)
    loss = float(np.logaddexp(0.0, -s_pos) + np.logaddexp(0.0, s_neg).sum())

    g_pos = float(_sigmoid(s_pos)) - 1.0
    g_neg = _sigmoid(s_neg)
    grad_v = g_pos * u_context + g_neg @ u_negatives
    grad_context = g_pos * v
    grad_negatives = np.outer(g_neg, v)
    return loss, grad_v, grad_context, grad_negatives


def sgns_step(
    center: int,
    context: int,
    negatives: Sequence[int],
    phi: np.ndarray,
    psi: np.ndarray,
    lr: float,
) -> float:
    """
    One SGD step on a single training pair, updating phi and psi in place

    Gradients are taken at the current parameters before any row moves, so
    repeated negatives accumulate.

    Returns:
        The pair's loss before the update
    """
    negatives = np.asarray(negatives, dtype=np.int64)
    loss, grad_v, grad_context, grad_negatives = sgns_loss_and_grads(
        phi[center].copy(), psi[context].copy(), psi[negatives].copy()
    )
    if lr == 0.0:
        return loss
    phi[center] -= lr * grad_v
    psi[context] -= lr * grad_context
    scatter_add(psi, negatives, -lr * grad_negatives)
    return loss


def window_pairs(walk: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """(center, context) index pairs within k positions on either side."""
    n = len(walk)
    centers, contexts = [], []
    for offset in range(1, k + 1):
        if offset >= n:
            break
        centers.append(walk[:-offset])
        contexts.append(walk[offset:])
        centers.append(walk[offset:])
        contexts.append(walk[:-offset])
    if not centers:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(centers), np.concatenate(contexts)


def _draw_negatives(
    vocab: Vocab, rng: np.random.Generator, contexts: np.ndarray, n_neg: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Negatives per pair; collisions with the context are redrawn, then masked."""
    negatives = vocab.sample_negatives(rng, (len(contexts), n_neg))
    for _ in range(NEGATIVE_RESAMPLE_ATTEMPTS):
        clash = negatives == contexts[:, None]
        if not clash.any():
            break
        negatives[clash] = vocab.sample_negatives(rng, int(clash.sum()))
    return negatives, negatives != contexts[:, None]


def scatter_add(target: np.ndarray, rows: np.ndarray, updates: np.ndarray) -> None:
    """
    target[rows] += updates, summing rows that repeat

    Rows are grouped by a stable sort and reduced with np.add.reduceat,
    so the summation order is fixed for a given input.
    """
    if len(rows) == 0:
        return
    order = np.argsort(rows, kind="stable")
    sorted_rows = rows[order]
    starts = np.flatnonzero(np.r_[True, sorted_rows[1:] != sorted_rows[:-1]])
    target[sorted_rows[starts]] += np.add.reduceat(updates[order], starts, axis=0)


def _train_batch(
    centers: np.ndarray,
    contexts: np.ndarray,
    negatives: np.ndarray,
    valid: np.ndarray,
    phi: np.ndarray,
    psi: np.ndarray,
    lr: float,
) -> float:
    """
    One minibatch step; returns the summed loss before the update

    Every gradient is taken at the batch's starting parameters and a row
    touched several times receives the sum of its gradients.
    """
    v = phi[centers]
    u_pos = psi[contexts]
    u_neg = psi[negatives]

    s_pos = np.clip(np.einsum("pd,pd->p", v, u_pos), -LOGIT_CLIP, LOGIT_CLIP)
    s_neg = np.clip(np.einsum("pd,pnd->pn", v, u_neg), -LOGIT_CLIP, LOGIT_CLIP)
    loss = float(
        np.logaddexp(0.0, -s_pos).sum(dtype=np.float64)
        + (np.logaddexp(0.0, s_neg) * valid).sum(dtype=np.float64)
    )

    g_pos = _sigmoid(s_pos) - 1.0
    g_neg = _sigmoid(s_neg) * valid
    grad_v = g_pos[:, None] * u_pos + np.einsum("pn,pnd->pd", g_neg, u_neg)
    grad_pos = g_pos[:, None] * v
    grad_neg = (g_neg[:, :, None] * v[:, None, :]).reshape(-1, phi.shape[1])

    scatter_add(phi, centers, -lr * grad_v)
    scatter_add(
        psi,
        np.concatenate([contexts, negatives.ravel()]),
        np.concatenate([-lr * grad_pos, -lr * grad_neg]),
    )
    return loss


def initial_weights(
    n: int, d: int, rng: np.random.Generator, dtype=np.float64
) -> Tuple[np.ndarray, np.ndarray]:
    """phi uniform in (-0.5/d, 0.5/d), psi zero."""
    phi = rng.uniform(-0.5 / d, 0.5 / d, size=(n, d)).astype(dtype)
    psi = np.zeros((n, d), dtype=dtype)
    return phi, psi


def _corpus_pairs(walks: Sequence[np.ndarray], k: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """All (center, context) pairs in corpus order, plus the number of walks contributing."""
    pairs = [window_pairs(walk, k) for walk in walks]
    pairs = [(c, o) for c, o in pairs if len(c)]
    if not pairs:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, 0
    centers = np.concatenate([c for c, _ in pairs])
    contexts = np.concatenate([o for _, o in pairs])
    return centers, contexts, len(pairs)


@log_execution_time(slow_threshold_ms=60_000)
def train_embeddings(corpus: Sequence[Sequence[str]], params: SgnsParams) -> EmbeddingMatrix:
    """
    Learn node embeddings from a walk corpus

    Every pair within k positions is trained with n_neg negatives drawn
    from the freq^0.75 table. Pairs are visited in corpus order each epoch,
    params.batch_pairs at a time; batch_pairs=1 is plain per-pair SGD. The
    learning rate decays linearly from params.lr towards 1e-4 * params.lr
    over all trained pairs. Training runs in float32 on one thread and all
    randomness comes from one seeded stream, so identical inputs give
    bit-identical matrices.

    Raises:
        EmptyVocabError: corpus empty after min_count filtering
    """
    vocab = build_vocab(corpus, params.min_count)
    rng = stage_rng(params.seed, STREAM_SGNS)
    phi, psi = initial_weights(len(vocab), params.d, rng, dtype=TRAIN_DTYPE)

    centers_all, contexts_all, n_walks = _corpus_pairs([vocab.encode(walk) for walk in corpus], params.k)
    pairs_per_epoch = len(centers_all)
    total_pairs = max(1, pairs_per_epoch * params.epochs)
    logger.info(
        f"Training SGNS: {len(vocab)} nodes, {n_walks} walks, {pairs_per_epoch} pairs/epoch "
        f"(d={params.d}, k={params.k}, n_neg={params.n_neg}, epochs={params.epochs}, "
        f"lr={params.lr}, batch={params.batch_pairs})"
    )

    history: List[float] = []
    done = 0
    for epoch in range(params.epochs):
        epoch_loss = 0.0
        for lo in range(0, pairs_per_epoch, params.batch_pairs):
            hi = min(lo + params.batch_pairs, pairs_per_epoch)
            lr = params.lr * max(MIN_LR_FRACTION, 1.0 - done / total_pairs)
            contexts = contexts_all[lo:hi]
            negatives, valid = _draw_negatives(vocab, rng, contexts, params.n_neg)
            epoch_loss += _train_batch(centers_all[lo:hi], contexts, negatives, valid, phi, psi, lr)
            done += hi - lo
        mean_loss = epoch_loss / max(1, pairs_per_epoch)
        history.append(mean_loss)
        logger.metrics(f"epoch {epoch + 1}/{params.epochs} loss={mean_loss:.6f}",
                       extra={"epoch": epoch + 1, "loss": mean_loss})

    return EmbeddingMatrix(
        labels=vocab.labels,
        phi=phi.astype(np.float64),
        psi=psi.astype(np.float64),
        loss_history=history,
    )
