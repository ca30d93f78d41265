"""
Temporal Link-Prediction Pipeline
Split, walk, embed, classify and score one graph-modelling method
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.embedding.sgns import EmbeddingMatrix, SgnsParams, train_embeddings
from src.graph.subgraph import collapse_to_static
from src.graph.twmdg import TemporalEdge, Twmdg, build_graph
from src.linkpred.classifier import ClassifierParams, train_linear_classifier
from src.linkpred.metrics import score_ap, score_auc
from src.linkpred.negatives import (
    LabeledPair,
    build_labeled_pairs,
    feature_matrix,
    sample_negative_pairs,
)
from src.linkpred.split import SplitSpec, temporal_split
from src.utils.log_decorators import log_execution_time
from src.utils.logging_factory import get_logger
from src.walks.corpus import WalkCorpus, generate_corpus, generate_static_corpus
from src.walks.rng import STREAM_NEGATIVES, stage_rng
from src.walks.sampler import StaticWalkMode
from src.walks.strategies import TemporalStrategy, WalkConfig, WeightStrategy

logger = get_logger(__name__)


class EvalMethod(str, Enum):
    """Graph model + walk family, one per comparison row."""

    STATIC_UNBIASED = "static-unbiased"  # directed DeepWalk
    STATIC_BIASED = "static-biased"      # directed node2vec
    TWMDG_UNBIASED = "twmdg-unbiased"
    TWMDG_BIASED = "twmdg-biased"


class EvalReport(BaseModel):
    """Scores and sample counts of one pipeline run; config keys sorted."""

    model_config = ConfigDict(frozen=True)

    auc: float = Field(ge=0.0, le=1.0)
    ap: float = Field(ge=0.0, le=1.0)
    n_train_pos: int
    n_train_neg: int
    n_test_pos: int
    n_test_neg: int
    n_skipped: int
    method: str
    config: Dict[str, Any]

    @field_validator("config")
    @classmethod
    def _sorted_config(cls, value: Dict[str, Any]) -> Dict[str, Any]:
        return dict(sorted(value.items()))

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def method_corpus(
    train_graph: Twmdg,
    method: EvalMethod,
    walk_cfg: WalkConfig,
    p: float,
    q: float,
    workers: Optional[int],
) -> WalkCorpus:
    """Walk corpus for one comparison method over the training graph."""
    method = EvalMethod(method)
    if method in (EvalMethod.STATIC_UNBIASED, EvalMethod.STATIC_BIASED):
        mode = StaticWalkMode.UNIFORM if method == EvalMethod.STATIC_UNBIASED else StaticWalkMode.NODE2VEC
        return generate_static_corpus(
            collapse_to_static(train_graph),
            walk_cfg.walk_length,
            walk_cfg.walks_per_node,
            mode,
            walk_cfg.seed,
            p=p,
            q=q,
            min_emit_length=walk_cfg.min_emit_length,
            workers=workers,
        )
    if method == EvalMethod.TWMDG_UNBIASED:
        walk_cfg = walk_cfg.model_copy(
            update={"temporal": TemporalStrategy.UNBIASED, "weighted": WeightStrategy.UNBIASED}
        )
    return generate_corpus(train_graph, walk_cfg, workers=workers)


@dataclass
class TrainingStage:
    """Temporal split of g and the walk corpus built from its earlier part."""

    train_edges: List[TemporalEdge]
    test_edges: List[TemporalEdge]
    train_graph: Twmdg
    corpus: WalkCorpus


def prepare_training(
    g: Twmdg,
    method: EvalMethod,
    walk_cfg: WalkConfig,
    split: SplitSpec,
    p: float = 1.0,
    q: float = 1.0,
    workers: Optional[int] = 1,
) -> TrainingStage:
    """
    Split edges by time and walk the training graph only

    Test edges never enter the training graph, so no corpus walk can
    traverse one.
    """
    train_edges, test_edges = temporal_split(g.edges(), split)
    train_graph = build_graph(g.to_records([e.edge_id for e in train_edges]))
    logger.info(
        f"Split {g.num_edges} edges: {len(train_edges)} train "
        f"(t <= {train_edges[-1].timestamp}), {len(test_edges)} test"
    )
    corpus = method_corpus(train_graph, method, walk_cfg, p, q, workers)
    return TrainingStage(train_edges, test_edges, train_graph, corpus)


def _label_pairs(g: Twmdg, edges) -> List[Tuple[str, str]]:
    return [(g.label(e.src), g.label(e.dst)) for e in edges]


def _negatives_for(
    emb: EmbeddingMatrix,
    forbidden: Set[Tuple[str, str]],
    count: int,
    rng: np.random.Generator,
) -> List[LabeledPair]:
    return sample_negative_pairs(sorted(emb.labels), forbidden, count, rng)


@log_execution_time(slow_threshold_ms=300_000)
def run_pipeline(
    g: Twmdg,
    method: EvalMethod,
    walk_cfg: WalkConfig = WalkConfig(),
    sgns: SgnsParams = SgnsParams(),
    split: SplitSpec = SplitSpec(),
    seed: int = 42,
    p: float = 1.0,
    q: float = 1.0,
    classifier: ClassifierParams = ClassifierParams(),
    shuffle_labels: bool = False,
    workers: Optional[int] = 1,
) -> EvalReport:
    """
    Evaluate one method on temporal link prediction

    1. Split edges by time; only the earlier part builds the training graph.
    2. Walk the training graph the method's way and train embeddings.
    3. Positives are distinct ordered pairs of train and of test edges;
       test pairs with an unembedded endpoint are skipped and counted.
    4. Negatives match positives in number, never touch any pair linked
       anywhere in g, and test negatives avoid the train negatives.
    5. Fit the hinge classifier on train pairs and score test pairs.

    `seed` overrides the seeds in walk_cfg and sgns.
    """
    method = EvalMethod(method)
    walk_cfg = walk_cfg.model_copy(update={"seed": seed})
    sgns = sgns.model_copy(update={"seed": seed})

    stage = prepare_training(g, method, walk_cfg, split, p, q, workers)
    train_edges, test_edges = stage.train_edges, stage.test_edges
    emb = train_embeddings(stage.corpus, sgns)

    train_pos, train_dropped = build_labeled_pairs(_label_pairs(g, train_edges), emb)
    test_pos, n_skipped = build_labeled_pairs(_label_pairs(g, test_edges), emb)
    if train_dropped:
        logger.warning(f"{train_dropped} training pairs lack embeddings (min_count filter)")
    if n_skipped:
        logger.info(f"Skipped {n_skipped} test pairs with unembedded endpoints")

    forbidden = set(_label_pairs(g, g.iter_edges()))
    rng = stage_rng(seed, STREAM_NEGATIVES)
    train_neg = _negatives_for(emb, forbidden, len(train_pos), rng)
    forbidden_test = forbidden | {(n.src, n.dst) for n in train_neg}
    test_neg = _negatives_for(emb, forbidden_test, len(test_pos), rng)

    x_train, y_train = feature_matrix(emb, train_pos + train_neg)
    if shuffle_labels:
        y_train = rng.permutation(y_train)
    model = train_linear_classifier(
        x_train, y_train, l2=classifier.l2, epochs=classifier.epochs, seed=seed, lr=classifier.lr
    )

    x_test, y_test = feature_matrix(emb, test_pos + test_neg)
    scores = model.decision_function(x_test)
    auc = score_auc(scores, y_test)
    ap = score_ap(scores, y_test)
    logger.metrics(f"{method.value}: AUC={auc:.4f} AP={ap:.4f}",
                   extra={"method": method.value, "auc": auc, "ap": ap})

    config = {
        **walk_cfg.model_dump(mode="json"),
        **sgns.model_dump(mode="json"),
        **split.model_dump(mode="json"),
        "clf_l2": classifier.l2,
        "clf_epochs": classifier.epochs,
        "clf_lr": classifier.lr,
        "p": p,
        "q": q,
        "shuffle_labels": shuffle_labels,
    }
    return EvalReport(
        auc=auc,
        ap=ap,
        n_train_pos=len(train_pos),
        n_train_neg=len(train_neg),
        n_test_pos=len(test_pos),
        n_test_neg=len(test_neg),
        n_skipped=n_skipped,
        method=method.value,
        config=config,
    )
