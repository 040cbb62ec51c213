"""Slow reference implementations the fast paths are checked against.

Everything here is written for obvious correctness: direct formulas,
materialized tensors, greedy loops. No dot-product identities, no
recurrences, no partial selection, so a shared bug with the production
code would have to be a shared misreading of the contract itself.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

FLAT_TOL = 1e-8


def exclusion_radius(m: int) -> int:
    return (m + 1) // 2


def znorm_distance(a, b) -> float:
    """Direct two-sided z-normalized Euclidean distance."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    mu_a, sd_a = a.mean(), a.std()
    mu_b, sd_b = b.mean(), b.std()
    flat_a = sd_a < FLAT_TOL * max(1.0, abs(mu_a))
    flat_b = sd_b < FLAT_TOL * max(1.0, abs(mu_b))
    if flat_a and flat_b:
        return 0.0
    if flat_a or flat_b:
        return float(np.sqrt(a.shape[0]))
    za = (a - mu_a) / sd_a
    zb = (b - mu_b) / sd_b
    return float(np.sqrt(((za - zb) ** 2).sum()))


def _znormed_windows(values, m):
    """All length-m windows of every column, z-normalized, plus flat mask."""
    windows = sliding_window_view(values, m, axis=0)
    mu = windows.mean(axis=2, keepdims=True)
    sd = windows.std(axis=2, keepdims=True)
    flat = sd[..., 0] < FLAT_TOL * np.maximum(1.0, np.abs(mu[..., 0]))
    normed = (windows - mu) / np.where(flat[..., None], 1.0, sd)
    return normed, flat


def distance_row(query_values, i, target_values, m):
    """Distances from query window i to every target window, per dimension.

    Normalizes both windows explicitly and takes the plain Euclidean
    difference, so it shares no algebra with the streaming kernel.
    """
    target_z, target_flat = _znormed_windows(target_values, m)
    query_z, query_flat = _znormed_windows(query_values[i : i + m], m)
    dists = np.sqrt(((target_z - query_z) ** 2).sum(axis=2))
    both = target_flat & query_flat
    either = target_flat ^ query_flat
    dists[both] = 0.0
    dists[either] = np.sqrt(m)
    return dists


def distance_tensor(query_values, target_values, m):
    """The full (n1-m+1, n2-m+1, d) pairwise distance tensor."""
    n1w = query_values.shape[0] - m + 1
    return np.stack([distance_row(query_values, i, target_values, m) for i in range(n1w)])


def knn_accepted(dists, k, m):
    """Greedy nearest-first acceptance under exclusion; None if infeasible."""
    work = np.array(dists, dtype=np.float64)
    radius = exclusion_radius(m)
    accepted = []
    for _ in range(k):
        j = int(np.argmin(work))
        if not np.isfinite(work[j]):
            return None
        accepted.append(j)
        work[max(0, j - radius + 1) : j + radius] = np.inf
    return accepted


def profile(query_values, target_values, m, k, placement, reduction,
            self_join, tensor=None):
    """Reference profile from a materialized tensor.

    placement is "pre" or "post", reduction is "sort", "max" or "sum".
    Returns (values, indices) shaped (n1-m+1, width).
    """
    if tensor is None:
        tensor = distance_tensor(query_values, target_values, m)
    tensor = tensor.copy()
    n1w, n2w, d = tensor.shape
    radius = exclusion_radius(m)
    if self_join:
        for i in range(n1w):
            tensor[i, max(0, i - radius + 1) : i + radius, :] = np.inf
    width = d if reduction == "sort" else 1
    values = np.empty((n1w, width))
    indices = np.empty((n1w, width), dtype=np.int64)
    for i in range(n1w):
        row = tensor[i]
        if placement == "pre":
            if reduction == "sort":
                reduced = np.sort(row, axis=1)[:, ::-1]
            elif reduction == "max":
                reduced = row.max(axis=1, keepdims=True)
            else:
                reduced = np.sqrt((row**2).sum(axis=1, keepdims=True))
            for rank in range(width):
                accepted = knn_accepted(reduced[:, rank], k, m)
                assert accepted is not None, "oracle query infeasible"
                indices[i, rank] = accepted[-1]
                values[i, rank] = reduced[accepted[-1], rank]
        else:
            dim_vals = np.empty(d)
            dim_idx = np.empty(d, dtype=np.int64)
            for dim in range(d):
                accepted = knn_accepted(row[:, dim], k, m)
                assert accepted is not None, "oracle query infeasible"
                dim_idx[dim] = accepted[-1]
                dim_vals[dim] = row[accepted[-1], dim]
            order = np.argsort(-dim_vals, kind="stable")
            if reduction == "max":
                order = order[:1]
            values[i] = dim_vals[order]
            indices[i] = dim_idx[order]
    return values, indices


def auc_roc_paircount(scores, labels):
    """O(n^2) Mann-Whitney pair counting with half credit for ties."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    pos = scores[labels]
    neg = scores[~labels]
    wins = 0.0
    for p in pos:
        wins += np.count_nonzero(p > neg) + 0.5 * np.count_nonzero(p == neg)
    return wins / (pos.shape[0] * neg.shape[0])


def label_ranges(labels):
    """Maximal runs of true values as (start, end) pairs, end exclusive."""
    out = []
    start = None
    for t, flag in enumerate(labels):
        if flag and start is None:
            start = t
        if not flag and start is not None:
            out.append((start, t))
            start = None
    if start is not None:
        out.append((start, len(labels)))
    return out


def range_pr_point(scores, threshold, labels):
    """(recall, precision) for predictions strictly above threshold."""
    labels = np.asarray(labels, dtype=bool)
    predicted_mask = np.asarray(scores) > threshold
    predicted = label_ranges(predicted_mask)
    if not predicted:
        return 0.0, 1.0
    real = label_ranges(labels)
    recall = float(np.mean([predicted_mask[s:e].mean() for s, e in real]))
    precision = float(np.mean([labels[s:e].mean() for s, e in predicted]))
    return recall, precision


def range_pr_auc_exhaustive(scores, labels):
    """Range PR AUC sweeping every distinct score as a threshold."""
    points = [range_pr_point(scores, t, labels) for t in np.unique(scores)]
    recalls = np.array([p[0] for p in points])
    precisions = np.array([p[1] for p in points])
    order = np.argsort(recalls, kind="stable")
    return float(np.trapezoid(precisions[order], recalls[order]))


def smooth(v, window):
    """Centered moving average with edge truncation, even windows lean right."""
    v = np.asarray(v, dtype=np.float64)
    if window <= 1:
        return v.copy()
    out = np.empty_like(v)
    for t in range(v.shape[0]):
        lo = max(0, t - (window - 1) // 2)
        hi = min(v.shape[0], t + window // 2 + 1)
        out[t] = v[lo:hi].mean()
    return out


def reverse_window(profile_scores, n, m):
    """Mean of every window score covering each time step."""
    total = np.zeros(n)
    count = np.zeros(n)
    for i, value in enumerate(np.asarray(profile_scores, dtype=np.float64)):
        total[i : i + m] += value
        count[i : i + m] += 1
    return total / count
