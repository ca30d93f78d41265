"""
Temporal link-prediction evaluation
"""

from .classifier import ClassifierParams, LinearClassifier, train_linear_classifier
from .metrics import score_ap, score_auc
from .negatives import (
    LabeledPair,
    build_labeled_pairs,
    edge_features,
    feature_matrix,
    sample_negative_pairs,
)
from .pipeline import EvalMethod, EvalReport, TrainingStage, prepare_training, run_pipeline
from .split import SplitSpec, temporal_split

__all__ = [
    'ClassifierParams',
    'LinearClassifier',
    'train_linear_classifier',
    'score_ap',
    'score_auc',
    'LabeledPair',
    'build_labeled_pairs',
    'edge_features',
    'feature_matrix',
    'sample_negative_pairs',
    'EvalMethod',
    'EvalReport',
    'TrainingStage',
    'prepare_training',
    'run_pipeline',
    'SplitSpec',
    'temporal_split',
]
