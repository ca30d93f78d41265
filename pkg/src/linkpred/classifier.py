"""
Linear SVM trained by minibatch subgradient descent on the hinge loss
"""

import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.utils.errors import DimensionError, SingleClassError
from src.walks.rng import STREAM_CLASSIFIER, stage_rng

BATCH_SIZE = 64


class ClassifierParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    l2: float = Field(1e-4, ge=0.0)
    epochs: int = Field(50, ge=1)
    lr: float = Field(0.05, gt=0.0)


@dataclass
class LinearClassifier:
    weights: np.ndarray
    bias: float
    l2: float

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        """Signed margin w.x + b, used as the ranking score."""
        features = np.atleast_2d(features)
        if features.shape[1] != len(self.weights):
            raise DimensionError(f"expected {len(self.weights)} features, got {features.shape[1]}")
        return features @ self.weights + self.bias

    def predict(self, features: np.ndarray) -> np.ndarray:
        return (self.decision_function(features) > 0).astype(np.int64)


def train_linear_classifier(
    features: np.ndarray,
    labels: np.ndarray,
    l2: float = 1e-4,
    epochs: int = 50,
    seed: int = 42,
    lr: float = 0.05,
) -> LinearClassifier:
    """
    Minimise mean hinge loss + l2 * ||w||^2

    Samples are reshuffled every epoch from a seeded stream. The penalty is
    applied as a proximal shrink after each hinge step, so l2 = inf drives
    w to exactly zero.

    Args:
        features: (n, m) sample matrix
        labels: n labels in {0, 1}

    Raises:
        SingleClassError: labels contain one class only
        DimensionError: features and labels disagree in length
    """
    x = np.asarray(features, dtype=np.float64)
    y01 = np.asarray(labels).astype(np.int64)
    if x.ndim != 2 or x.shape[0] != len(y01):
        raise DimensionError(f"{x.shape} features for {len(y01)} labels")
    if len(np.unique(y01)) < 2:
        raise SingleClassError("classifier needs both positive and negative samples")
    y = np.where(y01 > 0, 1.0, -1.0)

    rng = stage_rng(seed, STREAM_CLASSIFIER)
    w = np.zeros(x.shape[1], dtype=np.float64)
    b = 0.0
    shrink = math.inf if math.isinf(l2) else 1.0 + 2.0 * lr * l2

    for _ in range(epochs):
        order = rng.permutation(len(y))
        for start in range(0, len(order), BATCH_SIZE):
            batch = order[start:start + BATCH_SIZE]
            xb, yb = x[batch], y[batch]
            active = yb * (xb @ w + b) < 1.0
            if active.any():
                w += lr * (yb[active] @ xb[active]) / len(batch)
                b += lr * float(yb[active].sum()) / len(batch)
            if math.isinf(shrink):
                w[:] = 0.0
            else:
                w /= shrink

    return LinearClassifier(weights=w, bias=b, l2=l2)
