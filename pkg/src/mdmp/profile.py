"""Multidimensional matrix profiles from streamed distance rows.

For every query window the pairwise distances form an
``(n2 - m + 1, d)`` row of the (never materialized) distance tensor.
A profile summarizes those rows into per-rank nearest-neighbor
distances. Variants differ in where the dimension reduction happens
relative to the neighbor search:

pre-sort
    Sort each pair's dimension distances descending, then take the k-th
    nearest neighbor within each rank column. Rank ``l`` reads "the best
    match once the ``l + 1`` worst dimensions are accounted for", which
    is what exposes anomalies confined to a dimension subset, including
    broken cross-dimension correlation. O(n1 * n2 * d log d).
pre-max / naive-sum
    Collapse each pair to a single value first (max over dimensions, or
    root of the summed squares for the all-dimensions baseline), then
    find neighbors in that one column. O(n1 * n2 * d).
post-sort / post-max
    Find the k-th neighbor per dimension first, then sort each profile
    row descending (or keep only its max). Per-dimension views cannot
    see relationships between dimensions. O(n1 * n2 * d).

Self-joins exclude the trivial diagonal ``|i - j| < ceil(m / 2)`` before
any neighbor search; ``k > 1`` additionally applies inter-neighbor
exclusion. Peak memory per join is O(max(n1, n2) * d).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import knn as _knn
from .distance import RENORM_PERIOD, stream_distance_rows
from .exceptions import InfeasibleError, RankOutOfRange, SeriesTooShort
from .series import as_series, check_same_dims


class Placement(Enum):
    """When the dimension reduction runs relative to the neighbor search."""

    PRE_NEIGHBOR = "pre"
    POST_NEIGHBOR = "post"


class Reduction(Enum):
    """How a vector of per-dimension distances collapses."""

    SORT_DESC = "sort"
    MAX_ONLY = "max"
    SUM_ALL = "sum"


@dataclass(frozen=True)
class ProfileVariant:
    """A (placement, reduction) pair naming one profile flavor."""

    placement: Placement
    reduction: Reduction

    def __post_init__(self):
        if self.placement is Placement.POST_NEIGHBOR and self.reduction is Reduction.SUM_ALL:
            raise InfeasibleError("the all-dimensions baseline only exists pre-neighbor")

    @property
    def name(self) -> str:
        if self.reduction is Reduction.SUM_ALL:
            return "naive-sum"
        kind = "sort" if self.reduction is Reduction.SORT_DESC else "max"
        side = "pre" if self.placement is Placement.PRE_NEIGHBOR else "post"
        return f"{side}-{kind}"

    @classmethod
    def from_name(cls, name: str) -> "ProfileVariant":
        try:
            return VARIANTS[name]
        except KeyError:
            raise InfeasibleError(
                f"unknown variant {name!r}, expected one of {sorted(VARIANTS)}"
            ) from None


PRE_SORT = ProfileVariant(Placement.PRE_NEIGHBOR, Reduction.SORT_DESC)
PRE_MAX = ProfileVariant(Placement.PRE_NEIGHBOR, Reduction.MAX_ONLY)
POST_SORT = ProfileVariant(Placement.POST_NEIGHBOR, Reduction.SORT_DESC)
POST_MAX = ProfileVariant(Placement.POST_NEIGHBOR, Reduction.MAX_ONLY)
NAIVE_SUM = ProfileVariant(Placement.PRE_NEIGHBOR, Reduction.SUM_ALL)

VARIANTS = {v.name: v for v in (PRE_SORT, PRE_MAX, POST_SORT, POST_MAX, NAIVE_SUM)}


@dataclass(frozen=True)
class MultidimProfile:
    """Nearest-neighbor distances per query window and dimension rank.

    ``values[i, l]`` is the k-th nearest-neighbor distance of query
    window ``i`` in rank column ``l``; ``indices[i, l]`` is the target
    offset realizing it. Sorted variants carry ``d`` rank columns,
    max-only and the all-dimensions baseline carry one.
    """

    values: np.ndarray
    indices: np.ndarray
    m: int
    k: int
    variant: ProfileVariant
    self_join: bool
    d: int

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def column(self, l: int) -> np.ndarray:
        """Rank column ``l`` of the profile values."""
        if not 0 <= l < self.width:
            raise RankOutOfRange(
                f"rank {l} out of range: {self.variant.name} profile over "
                f"{self.d} dimensions has columns [0, {self.width})"
            )
        return self.values[:, l]


def reduce_pair_vector(vec, reduction: Reduction) -> np.ndarray:
    """Collapse one pair's per-dimension distances per the reduction rule."""
    vec = np.asarray(vec, dtype=np.float64).ravel()
    if reduction is Reduction.SORT_DESC:
        return np.sort(vec)[::-1].copy()
    if reduction is Reduction.MAX_ONLY:
        return vec.max(keepdims=True)
    return np.sqrt((vec * vec).sum(keepdims=True))


def _reduce_rows(row: np.ndarray, reduction: Reduction) -> np.ndarray:
    if reduction is Reduction.SORT_DESC:
        return np.sort(row, axis=1)[:, ::-1]
    if reduction is Reduction.MAX_ONLY:
        return row.max(axis=1, keepdims=True)
    return np.sqrt((row * row).sum(axis=1, keepdims=True))


def _neighbors_per_column(cols: np.ndarray, k: int, m: int):
    """k-th accepted neighbor per column of one reduced row, with zones."""
    if k == 1:
        idx = cols.argmin(axis=0)
        vals = cols[idx, np.arange(cols.shape[1])]
        if not np.isfinite(vals).all():
            raise _knn._infeasible(1, 0)
        return idx.astype(np.int64), vals
    idx = np.empty(cols.shape[1], dtype=np.int64)
    vals = np.empty(cols.shape[1])
    for c in range(cols.shape[1]):
        idx[c], vals[c] = _knn._kth_neighbor(cols[:, c].copy(), k, m)
    return idx, vals


def _join_block(query, target, m, k, variant, self_join, start, stop):
    d = query.shape[1] if query.ndim == 2 else 1
    width = d if variant.reduction is Reduction.SORT_DESC else 1
    values = np.empty((stop - start, width))
    indices = np.empty((stop - start, width), dtype=np.int64)
    pre = variant.placement is Placement.PRE_NEIGHBOR
    for i, row in stream_distance_rows(
        query, target, m, rows=(start, stop), exclude_trivial=self_join
    ):
        if pre:
            reduced = _reduce_rows(row, variant.reduction)
            idx, vals = _neighbors_per_column(reduced, k, m)
        else:
            idx, vals = _neighbors_per_column(row, k, m)
            order = np.argsort(-vals, kind="stable")
            if variant.reduction is Reduction.MAX_ONLY:
                order = order[:1]
            idx, vals = idx[order], vals[order]
        values[i - start] = vals
        indices[i - start] = idx
    return start, values, indices


def _run_join(query, target, m, k, variant, self_join, n_jobs):
    query = as_series(query)
    target = as_series(target)
    check_same_dims(query, target)
    if not isinstance(variant, ProfileVariant):
        variant = ProfileVariant.from_name(variant)
    if k < 1:
        raise _knn._infeasible(k, 0)
    if query.n < m or target.n < m:
        raise SeriesTooShort(
            f"window length m={m} exceeds series length n={min(query.n, target.n)}"
        )
    n1w = query.n - m + 1
    n2w = target.n - m + 1
    if self_join and n2w <= _knn.exclusion_radius(m):
        raise SeriesTooShort(
            f"self-join needs n - m + 1 > ceil(m / 2) selectable offsets, "
            f"got n={target.n}, m={m}"
        )

    blocks = [(s, min(s + RENORM_PERIOD, n1w)) for s in range(0, n1w, RENORM_PERIOD)]
    if n_jobs in (None, 0):
        n_jobs = 1
    if n_jobs < 0:
        n_jobs = os.cpu_count() or 1
    n_jobs = min(n_jobs, len(blocks))

    if n_jobs == 1:
        parts = [
            _join_block(query.values, target.values, m, k, variant, self_join, s, e)
            for s, e in blocks
        ]
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            futures = [
                pool.submit(
                    _join_block, query.values, target.values, m, k, variant, self_join, s, e
                )
                for s, e in blocks
            ]
            parts = [f.result() for f in futures]
    parts.sort(key=lambda p: p[0])
    values = np.concatenate([p[1] for p in parts])
    indices = np.concatenate([p[2] for p in parts])
    return MultidimProfile(
        values=values,
        indices=indices,
        m=m,
        k=k,
        variant=variant,
        self_join=self_join,
        d=query.d,
    )


def mp_self_join(series, m: int, k: int = 1, variant=PRE_MAX, n_jobs: int = 1) -> MultidimProfile:
    """Matrix profile of a series against itself.

    Parameters
    ----------
    series : array-like or MultivariateSeries
        Input of shape ``(n, d)``.
    m : int
        Window length, at least 2.
    k : int
        Neighbor rank to report (1 = nearest non-trivial match).
    variant : ProfileVariant or str
        One of ``pre-sort``, ``pre-max``, ``post-sort``, ``post-max``,
        ``naive-sum``.
    n_jobs : int
        Worker processes for row blocks; any value yields identical output.

    Returns
    -------
    MultidimProfile

    Raises
    ------
    SeriesTooShort
        If no non-trivial neighbor can exist for some window.
    InfeasibleK
        If fewer than ``k`` neighbors are selectable for some window.
    """
    return _run_join(series, series, m, k, variant, True, n_jobs)


def mp_ab_join(query, target, m: int, k: int = 1, variant=PRE_MAX, n_jobs: int = 1) -> MultidimProfile:
    """Matrix profile of ``query`` windows against ``target`` windows.

    No diagonal exclusion applies across distinct series; for ``k > 1``
    the inter-neighbor exclusion still holds. With ``query is target``
    and ``k = 1`` every window matches itself at distance 0.
    """
    return _run_join(query, target, m, k, variant, False, n_jobs)
