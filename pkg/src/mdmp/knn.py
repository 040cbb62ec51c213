"""Exclusion-aware k-nearest-neighbor selection over distance vectors.

Selecting the k-th nearest neighbor of a subsequence must skip trivial
matches: once an offset is accepted, every offset within
``ceil(m / 2)`` of it is off limits. Three algorithms implement the
same greedy rule (repeatedly accept the smallest remaining distance,
ties broken toward the lower index) and are interchangeable:

``find_knn_brute``
    k linear scans with zone masking, O(k * n). Cheapest for tiny k.
``find_knn_naive_sort``
    one stable argsort then a skip scan, O(n log n).
``find_knn_select``
    partial selection of the ``k * m`` smallest entries, sort of that
    candidate set, then the same skip scan, O(n + k*m*log(k*m)).
    Each acceptance invalidates at most ``m - 1`` other candidates, so
    ``k * m`` candidates always suffice; boundary ties are included
    outright and the candidate budget doubles in the (theoretical)
    exhaustion case.

``+inf`` entries mark offsets that are never selectable. When fewer
than ``k`` offsets can be accepted, all three raise the same
:class:`InfeasibleK`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InfeasibleK, InvalidWindow


def exclusion_radius(m: int) -> int:
    """Half-width of an exclusion zone for window length ``m``: ceil(m / 2)."""
    return (m + 1) // 2


def trivial_zone_bounds(center: int, m: int, n: int) -> tuple[int, int]:
    """Clipped bounds ``[lo, hi)`` of the zone ``|j - center| < ceil(m / 2)``."""
    radius = exclusion_radius(m)
    return max(0, center - radius + 1), min(n, center + radius)


def apply_exclusion_zone(dists: np.ndarray, center: int, m: int) -> np.ndarray:
    """Set the zone around ``center`` to ``+inf``, in place, and return it."""
    lo, hi = trivial_zone_bounds(center, m, dists.shape[0])
    dists[lo:hi] = np.inf
    return dists


@dataclass(frozen=True)
class KnnQuery:
    """A neighbor-selection request over one distance vector.

    ``dists`` may contain ``+inf`` sentinels for excluded offsets but no
    NaN. ``m`` sets the exclusion radius between accepted neighbors.
    """

    dists: np.ndarray
    k: int
    m: int

    def __post_init__(self):
        dists = np.asarray(self.dists, dtype=np.float64)
        if dists.ndim != 1 or dists.shape[0] < 1:
            raise InvalidWindow(f"distance vector must be non-empty 1-D, got shape {dists.shape}")
        if np.isnan(dists).any():
            raise InvalidWindow("distance vector contains NaN")
        if self.m < 1:
            raise InvalidWindow(f"window length m={self.m} invalid: need m >= 1")
        if self.k < 1:
            raise InfeasibleK(f"k={self.k} invalid: need k >= 1")
        object.__setattr__(self, "dists", dists)


@dataclass(frozen=True)
class KnnResult:
    """Accepted neighbors in selection order; the k-th is the answer."""

    neighbor_index: int
    neighbor_dist: float
    accepted: np.ndarray = field(repr=False)


def _infeasible(k: int, got: int) -> InfeasibleK:
    return InfeasibleK(f"cannot accept {k} neighbors under exclusion: only {got} selectable")


def _result(dists: np.ndarray, accepted: list[int]) -> KnnResult:
    accepted = np.asarray(accepted, dtype=np.int64)
    last = int(accepted[-1])
    return KnnResult(neighbor_index=last, neighbor_dist=float(dists[last]), accepted=accepted)


def _scan_accept(order, dists, k: int, radius: int) -> list[int]:
    """Greedy skip scan over candidate indices already sorted by (value, index)."""
    accepted: list[int] = []
    for idx in order:
        if not np.isfinite(dists[idx]):
            break
        idx = int(idx)
        if all(abs(idx - a) >= radius for a in accepted):
            accepted.append(idx)
            if len(accepted) == k:
                break
    return accepted


def find_knn_brute(query: KnnQuery) -> KnnResult:
    """k passes of argmin, masking each winner's exclusion zone."""
    dists, k, m = query.dists, query.k, query.m
    work = dists.copy()
    accepted: list[int] = []
    for _ in range(k):
        idx = int(np.argmin(work))
        if not np.isfinite(work[idx]):
            raise _infeasible(k, len(accepted))
        accepted.append(idx)
        apply_exclusion_zone(work, idx, m)
    return _result(dists, accepted)


def find_knn_naive_sort(query: KnnQuery) -> KnnResult:
    """Full stable argsort followed by a skip scan."""
    dists, k, m = query.dists, query.k, query.m
    order = np.argsort(dists, kind="stable")
    accepted = _scan_accept(order, dists, k, exclusion_radius(m))
    if len(accepted) < k:
        raise _infeasible(k, len(accepted))
    return _result(dists, accepted)


def find_knn_select(query: KnnQuery) -> KnnResult:
    """Partial-select the ``k * m`` smallest entries, then skip-scan them.

    The candidate set is every index whose distance does not exceed the
    ``k * m``-th smallest value, so ties at the selection boundary are
    all present and the scan sees the exact (value, index) order the
    other algorithms use. If the scan exhausts the candidates while
    selectable offsets remain outside, the budget doubles.
    """
    dists, k, m = query.dists, query.k, query.m
    n = dists.shape[0]
    radius = exclusion_radius(m)
    budget = min(k * m, n)
    while True:
        if budget >= n:
            order = np.argsort(dists, kind="stable")
            boundary = np.inf
        else:
            part = np.argpartition(dists, budget - 1)[:budget]
            boundary = dists[part].max()
            cand = np.flatnonzero(dists <= boundary)
            order = cand[np.lexsort((cand, dists[cand]))]
        accepted = _scan_accept(order, dists, k, radius)
        if len(accepted) == k:
            return _result(dists, accepted)
        uncovered = np.count_nonzero(np.isfinite(dists) & (dists > boundary))
        if uncovered == 0:
            raise _infeasible(k, len(accepted))
        budget = min(budget * 2, n)


def _kth_neighbor(work: np.ndarray, k: int, m: int) -> tuple[int, float]:
    """Fast path for profile assembly: k-th accepted (index, value).

    Mutates ``work`` by masking zones; the caller owns the buffer.
    """
    idx = -1
    val = np.inf
    for t in range(k):
        idx = int(np.argmin(work))
        val = float(work[idx])
        if not np.isfinite(val):
            raise _infeasible(k, t)
        if t + 1 < k:
            apply_exclusion_zone(work, idx, m)
    return idx, val
