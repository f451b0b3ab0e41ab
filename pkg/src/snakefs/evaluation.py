"""Wrapper fitness evaluation: masked k-NN error plus a feature-count penalty.

The classifier is a deliberately plain Euclidean k-NN with pinned tie rules
so results are reproducible to the bit: neighbor ties in distance go to the
lower training-row index (stable sort), and a tied majority vote falls back
to the label of the single nearest neighbor. Fitness blends the test error
rate with the fraction of selected features:

    fitness = alpha * error_rate + beta * selected / total

Sensitivity and specificity are computed from the positive class (id 1) on
binary data and macro-averaged one-vs-rest on multiclass data; a 0/0 ratio
is undefined and reported as NaN, and undefined classes drop out of the
macro average.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset, SplitDataset


@dataclass(frozen=True)
class FitnessWeights:
    alpha: float = 0.99
    beta: float = 0.01

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("weights must be non-negative")
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise ValueError("alpha + beta must equal 1")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int


@dataclass(frozen=True)
class EvalResult:
    fitness: float
    error_rate: float
    selected_count: int
    confusion: tuple[ConfusionCounts, ...]  # one entry per class id
    accuracy: float
    sensitivity: float
    specificity: float


def _selected_indices(mask, feature_count: int) -> np.ndarray:
    mask = np.asarray(mask)
    if mask.shape != (feature_count,):
        raise ValueError(f"mask length {mask.shape} does not match feature count {feature_count}")
    if not np.isin(mask, (0, 1)).all():
        raise ValueError("mask must contain only 0/1 entries")
    selected = np.flatnonzero(mask)
    if selected.size == 0:
        raise ValueError("mask selects no features")
    return selected


def _squared_distances(train_x: np.ndarray, queries: np.ndarray) -> np.ndarray:
    # (q, n) matrix; the per-pair reduction runs over the trailing feature
    # axis in a fixed order, so single-query and batched calls agree exactly
    diff = queries[:, None, :] - train_x[None, :, :]
    return np.einsum("qnd,qnd->qn", diff, diff)


def _predict(train_x, train_y, queries, k: int, class_count: int) -> np.ndarray:
    d2 = _squared_distances(train_x, queries)
    order = np.argsort(d2, axis=1, kind="stable")[:, :k]
    votes = train_y[order]
    q = queries.shape[0]
    counts = np.zeros((q, class_count), dtype=np.int64)
    np.add.at(counts, (np.arange(q)[:, None], votes), 1)
    top = counts.max(axis=1)
    tied = (counts == top[:, None]).sum(axis=1) > 1
    return np.where(tied, votes[:, 0], counts.argmax(axis=1))


def knn_predict(train: Dataset, query, mask, k: int = 5) -> int:
    """Classify one query row by masked Euclidean k-NN over the train set."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > train.instance_count:
        raise ValueError(f"k={k} exceeds the {train.instance_count} training rows")
    selected = _selected_indices(mask, train.feature_count)
    query = np.asarray(query, dtype=float)
    if query.shape != (train.feature_count,):
        raise ValueError("query length does not match the feature count")
    class_count = int(train.labels.max()) + 1
    pred = _predict(
        train.features[:, selected],
        train.labels,
        query[selected][None, :],
        k,
        class_count,
    )
    return int(pred[0])


def confusion_metrics(tp: int, tn: int, fp: int, fn: int) -> tuple[float, float, float]:
    """(accuracy, sensitivity, specificity) from one confusion table.

    0/0 ratios come back as NaN rather than raising or pretending to be 0.
    """
    total = tp + tn + fp + fn
    if total <= 0:
        raise ValueError("confusion counts are all zero")
    if min(tp, tn, fp, fn) < 0:
        raise ValueError("confusion counts must be non-negative")
    accuracy = (tp + tn) / total
    sensitivity = tp / (tp + fn) if tp + fn > 0 else float("nan")
    specificity = tn / (tn + fp) if tn + fp > 0 else float("nan")
    return accuracy, sensitivity, specificity


def evaluate(mask, split: SplitDataset, weights: FitnessWeights | None = None, k: int = 5) -> EvalResult:
    """Score a feature mask on a (normalized) train/test split."""
    if weights is None:
        weights = FitnessWeights()
    train, test = split.train, split.test
    if test.instance_count == 0:
        raise ValueError("empty test split")
    if k < 1 or k > train.instance_count:
        raise ValueError(f"k={k} invalid for {train.instance_count} training rows")
    selected = _selected_indices(mask, train.feature_count)
    class_count = max(int(train.labels.max()), int(test.labels.max())) + 1
    preds = _predict(
        train.features[:, selected],
        train.labels,
        test.features[:, selected],
        k,
        class_count,
    )
    y = test.labels
    error_rate = float((preds != y).mean())
    accuracy = 1.0 - error_rate
    fitness = weights.alpha * error_rate + weights.beta * (selected.size / train.feature_count)

    per_class = []
    for c in range(class_count):
        tp = int(((preds == c) & (y == c)).sum())
        tn = int(((preds != c) & (y != c)).sum())
        fp = int(((preds == c) & (y != c)).sum())
        fn = int(((preds != c) & (y == c)).sum())
        per_class.append(ConfusionCounts(tp, tn, fp, fn))

    if class_count == 2:
        _, sensitivity, specificity = confusion_metrics(
            per_class[1].tp, per_class[1].tn, per_class[1].fp, per_class[1].fn
        )
    else:
        sens_parts = []
        spec_parts = []
        for counts in per_class:
            _, sens, spec = confusion_metrics(counts.tp, counts.tn, counts.fp, counts.fn)
            if not math.isnan(sens):
                sens_parts.append(sens)
            if not math.isnan(spec):
                spec_parts.append(spec)
        sensitivity = float(np.mean(sens_parts)) if sens_parts else float("nan")
        specificity = float(np.mean(spec_parts)) if spec_parts else float("nan")

    return EvalResult(
        fitness=float(fitness),
        error_rate=error_rate,
        selected_count=int(selected.size),
        confusion=tuple(per_class),
        accuracy=float(accuracy),
        sensitivity=float(sensitivity),
        specificity=float(specificity),
    )


def mask_evaluator(split: SplitDataset, weights: FitnessWeights | None = None, k: int = 5):
    """Callable mask -> EvalResult with per-mask memoization.

    Evaluation is deterministic in the mask, so caching changes nothing
    numerically; it only skips repeat work when the swarm revisits a mask.
    """
    if weights is None:
        weights = FitnessWeights()
    cache: dict[bytes, EvalResult] = {}

    def evaluator(mask) -> EvalResult:
        key = np.asarray(mask, dtype=np.int8).tobytes()
        hit = cache.get(key)
        if hit is None:
            hit = evaluate(mask, split, weights, k)
            cache[key] = hit
        return hit

    return evaluator
