"""Threshold-agnostic anomaly scoring metrics.

Both metrics compare a real-valued score vector against boolean labels
without picking an operating threshold. ``auc_roc`` is the rank-based
Mann-Whitney statistic (ties get half credit). ``range_pr_auc`` is a
range-aware precision/recall area: 250 thresholds at evenly spaced
score quantiles, recall as the mean covered fraction of each real
anomaly range, precision as the mean fraction of each predicted range
that overlaps a real one, trapezoid integration over recall. Those
range parameters (flat positional bias, existence weight 0, no
cardinality penalty) are fixed so results reproduce bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DataError, DegenerateLabels, NoAnomalyRange

N_THRESHOLDS = 250


@dataclass(frozen=True)
class EvalResult:
    """Both metric values plus the threshold-grid size used for the range AUC."""

    auc_roc: float
    auc_ptrt: float
    n_thresholds: int = N_THRESHOLDS


def as_labels(labels) -> np.ndarray:
    """Coerce labels to a 1-D boolean array (nonzero means anomalous)."""
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise DataError(f"labels must be 1-D, got shape {arr.shape}")
    return arr.astype(bool)


def _check_pair(scores, labels):
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = as_labels(labels)
    if scores.shape[0] != labels.shape[0]:
        raise DataError(f"{scores.shape[0]} scores for {labels.shape[0]} labels")
    if not np.isfinite(scores).all():
        raise DataError("scores contain non-finite values")
    return scores, labels


def auc_roc(scores, labels) -> float:
    """Probability a random positive outranks a random negative, ties half.

    Computed from average ranks in O(n log n); invariant under any
    strictly increasing transform of the scores.
    """
    scores, labels = _check_pair(scores, labels)
    n_pos = int(labels.sum())
    n_neg = labels.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabels(f"need positives and negatives, got {n_pos} and {n_neg}")
    ordered = np.sort(scores)
    lo = np.searchsorted(ordered, scores, side="left")
    hi = np.searchsorted(ordered, scores, side="right")
    ranks = (lo + hi + 1) / 2.0  # average 1-based rank within tie groups
    pos_rank_sum = ranks[labels].sum()
    return float((pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def labels_to_ranges(labels) -> list[tuple[int, int]]:
    """Maximal runs of true labels as half-open ``(start, end)`` ranges."""
    labels = as_labels(labels)
    padded = np.concatenate([[False], labels, [False]]).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return [(int(s), int(e)) for s, e in zip(starts, ends)]


def _curve_point(scores, thr, real_ranges, label_csum):
    mask = scores > thr
    pred_ranges = labels_to_ranges(mask)
    if not pred_ranges:
        return 0.0, 1.0
    pred_csum = np.concatenate([[0], np.cumsum(mask)])
    recall = np.mean(
        [(pred_csum[e] - pred_csum[s]) / (e - s) for s, e in real_ranges]
    )
    precision = np.mean(
        [(label_csum[e] - label_csum[s]) / (e - s) for s, e in pred_ranges]
    )
    return float(recall), float(precision)


def range_pr_auc(scores, labels, n_thresholds: int = N_THRESHOLDS) -> float:
    """Area under the range-based precision/recall curve.

    Thresholds sit at ``n_thresholds`` evenly spaced quantiles of the
    scores; predictions are the maximal runs of ``score > threshold``,
    strict so the top quantile (the score maximum) predicts nothing and
    contributes the conventional curve anchor (recall 0, precision 1).
    """
    scores, labels = _check_pair(scores, labels)
    real_ranges = labels_to_ranges(labels)
    if not real_ranges:
        raise NoAnomalyRange("labels contain no anomaly range")
    thresholds = np.quantile(scores, np.linspace(0.0, 1.0, n_thresholds))
    label_csum = np.concatenate([[0], np.cumsum(labels)])
    points = [_curve_point(scores, thr, real_ranges, label_csum) for thr in thresholds]
    recalls = np.array([p[0] for p in points])
    precisions = np.array([p[1] for p in points])
    order = np.argsort(recalls, kind="stable")
    return float(np.trapezoid(precisions[order], recalls[order]))


def evaluate(scores, labels) -> EvalResult:
    """Convenience wrapper computing both metrics at the fixed settings."""
    return EvalResult(
        auc_roc=auc_roc(scores, labels),
        auc_ptrt=range_pr_auc(scores, labels),
    )
