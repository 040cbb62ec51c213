"""Exact z-normalized distance kernels over sliding windows.

Distances use the population standard deviation and the closed form

    dist(a, b)^2 = 2 * m * (1 - (dot(a, b) - m*mu_a*mu_b) / (m*sigma_a*sigma_b))

so a full row of the pairwise distance tensor (one query window against
every target window, every dimension) costs one sliding-dot-product
update instead of an explicit z-normalization per pair. Rows stream one
at a time; the tensor is never materialized.

Flat windows (standard deviation below ``FLAT_TOL * max(1, |mean|)``)
have no z-normalized shape. By convention the distance between two flat
windows is 0 and between a flat and a non-flat window is ``sqrt(m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import InvalidWindow, StatsMismatch
from .knn import trivial_zone_bounds
from .series import MultivariateSeries, as_series

FLAT_TOL = 1e-8

# Rebuild the dot product from scratch this often: bounds float drift and
# lets parallel workers own aligned row blocks with bit-identical output.
RENORM_PERIOD = 1024


@dataclass(frozen=True)
class WindowStats:
    """Per-window means and population stds for one series.

    Arrays have shape ``(n - m + 1, d)``; row ``i`` describes the window
    starting at time step ``i``. ``is_flat`` marks windows whose std is
    negligible relative to their mean.
    """

    m: int
    means: np.ndarray
    stds: np.ndarray
    is_flat: np.ndarray


@dataclass(frozen=True)
class DistanceProfileRow:
    """Distances from one query window to every target window.

    ``dists`` has shape ``(n2 - m + 1, d)``. Entries inside an exclusion
    zone are ``+inf``.
    """

    query_index: int
    dists: np.ndarray


def compute_window_stats(series, m: int) -> WindowStats:
    """Compute sliding-window means and population stds for every dimension.

    Parameters
    ----------
    series : array-like or MultivariateSeries
        Input of shape ``(n, d)`` (1-D input is treated as one dimension).
    m : int
        Window length, ``1 <= m <= n``.

    Returns
    -------
    WindowStats

    Notes
    -----
    Each window gets a genuine two-pass computation (mean, then mean
    squared deviation). Cheaper cumulative-sum tricks leave residuals
    around 1e-13 on constant stretches embedded in noise, which is
    enough to defeat the flatness cutoff; two-pass makes them exact
    zeros. Cost is O(n*m*d) once per join, dwarfed by the join itself.
    """
    series = as_series(series)
    x = series.values
    n, d = x.shape
    if not 1 <= m <= n:
        raise InvalidWindow(f"window length m={m} invalid for series of length n={n}")
    windows = sliding_window_view(x, m, axis=0)  # (n-m+1, d, m) view
    n_w = n - m + 1
    means = np.empty((n_w, d))
    stds = np.empty((n_w, d))
    # Slabs cap the deviation temporary at ~16 MB regardless of n, d, m.
    slab = max(1, (1 << 21) // (d * m))
    for s in range(0, n_w, slab):
        w = windows[s : s + slab]
        mu = w.mean(axis=2)
        means[s : s + slab] = mu
        stds[s : s + slab] = np.sqrt(((w - mu[..., None]) ** 2).mean(axis=2))
    is_flat = stds < FLAT_TOL * np.maximum(1.0, np.abs(means))
    return WindowStats(m=m, means=means, stds=stds, is_flat=is_flat)


def znorm_distance(a, b) -> float:
    """Z-normalized Euclidean distance between two equal-length 1-D windows.

    Both windows are centered and scaled by their population std before
    taking the Euclidean norm, so offset and amplitude do not matter:
    identical shapes give 0 and exactly anti-phase shapes give the maximum
    ``2 * sqrt(m)``. Flat windows follow the module convention.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape[0] != b.shape[0]:
        raise InvalidWindow(f"windows differ in length: {a.shape[0]} vs {b.shape[0]}")
    m = a.shape[0]
    if m < 2:
        raise InvalidWindow(f"window length m={m} invalid: z-normalization needs m >= 2")
    mu_a, mu_b = a.mean(), b.mean()
    sd_a, sd_b = a.std(), b.std()
    flat_a = sd_a < FLAT_TOL * max(1.0, abs(mu_a))
    flat_b = sd_b < FLAT_TOL * max(1.0, abs(mu_b))
    if flat_a and flat_b:
        return 0.0
    if flat_a or flat_b:
        return float(np.sqrt(m))
    diff = (a - mu_a) / sd_a - (b - mu_b) / sd_b
    return float(np.sqrt(diff @ diff))


def _check_stats(stats: WindowStats, series: MultivariateSeries, m: int, name: str):
    expected = (series.n - m + 1, series.d)
    if stats.m != m:
        raise StatsMismatch(f"{name} stats were computed for m={stats.m}, join uses m={m}")
    if stats.means.shape != expected:
        raise StatsMismatch(
            f"{name} stats shape {stats.means.shape} does not match windows {expected}"
        )


def _dot_row(query_values: np.ndarray, i: int, target_values: np.ndarray, m: int):
    """Dot products of query window ``i`` with every target window, per dim."""
    windows = sliding_window_view(target_values, m, axis=0)  # (n2w, d, m)
    return np.einsum("jdm,md->jd", windows, query_values[i : i + m])


def _row_distances(qt, m, mu_q, sig_q, flat_q, mu_t, sig_t_safe, flat_t):
    """Turn one row of dot products into z-normalized distances."""
    rho = (qt - m * mu_q * mu_t) / (m * sig_q * sig_t_safe)
    np.clip(rho, -1.0, 1.0, out=rho)
    rho -= 1.0
    rho *= -2.0 * m
    dist = np.sqrt(rho, out=rho)
    one_flat = flat_q ^ flat_t
    if one_flat.any():
        dist[one_flat] = np.sqrt(m)
    both_flat = flat_q & flat_t
    if both_flat.any():
        dist[both_flat] = 0.0
    return dist


def distance_profile_row(
    query,
    i: int,
    target,
    stats_q: WindowStats | None = None,
    stats_t: WindowStats | None = None,
    m: int | None = None,
    exclusion_center: int | None = None,
) -> DistanceProfileRow:
    """One exact row of the pairwise distance tensor, computed directly.

    Parameters
    ----------
    query, target : array-like or MultivariateSeries
        Series with the same dimension count.
    i : int
        Query window start, ``0 <= i <= n1 - m``.
    stats_q, stats_t : WindowStats, optional
        Precomputed stats; derived from the inputs when omitted. Must
        match the series and ``m`` or :class:`StatsMismatch` is raised.
    m : int, optional
        Window length; defaults to ``stats_q.m``.
    exclusion_center : int, optional
        When given (self-joins), target offsets ``j`` with
        ``|j - exclusion_center| < ceil(m / 2)`` are set to ``+inf`` in
        every dimension so trivial matches cannot win.

    Returns
    -------
    DistanceProfileRow
    """
    query = as_series(query)
    target = as_series(target)
    if query.d != target.d:
        raise StatsMismatch(f"query has {query.d} dimensions, target has {target.d}")
    if m is None:
        if stats_q is None:
            raise InvalidWindow("either m or stats_q must be given")
        m = stats_q.m
    if m < 2:
        raise InvalidWindow(f"window length m={m} invalid: z-normalization needs m >= 2")
    if m > query.n or m > target.n:
        raise InvalidWindow(
            f"window length m={m} invalid for series of length "
            f"n={min(query.n, target.n)}"
        )
    if stats_q is None:
        stats_q = compute_window_stats(query, m)
    if stats_t is None:
        stats_t = compute_window_stats(target, m)
    _check_stats(stats_q, query, m, "query")
    _check_stats(stats_t, target, m, "target")
    if not 0 <= i < query.n - m + 1:
        raise InvalidWindow(f"query index {i} outside [0, {query.n - m + 1})")

    qt = _dot_row(query.values, i, target.values, m)
    dists = _row_distances(
        qt,
        m,
        stats_q.means[i],
        np.where(stats_q.is_flat[i], 1.0, stats_q.stds[i]),
        stats_q.is_flat[i],
        stats_t.means,
        np.where(stats_t.is_flat, 1.0, stats_t.stds),
        stats_t.is_flat,
    )
    if exclusion_center is not None:
        lo, hi = trivial_zone_bounds(exclusion_center, m, dists.shape[0])
        dists[lo:hi, :] = np.inf
    return DistanceProfileRow(query_index=i, dists=dists)


def stream_distance_rows(query, target, m, rows=None, exclude_trivial=False):
    """Yield ``(i, dists)`` for consecutive query rows of a join.

    Row ``i`` reuses the dot products of row ``i - 1`` through the usual
    O(1)-per-entry sliding update; rows at multiples of
    :data:`RENORM_PERIOD` (and the first row of ``rows``) are rebuilt
    from scratch. Peak memory is a handful of ``(n2 - m + 1, d)``
    buffers. Each yielded distance array is freshly allocated.

    ``rows`` restricts iteration to ``range(*rows)``; partitioning the
    full range at multiples of :data:`RENORM_PERIOD` yields bit-identical
    results to a single pass, which is what makes worker parallelism safe.
    """
    query = as_series(query)
    target = as_series(target)
    if query.d != target.d:
        raise StatsMismatch(f"query has {query.d} dimensions, target has {target.d}")
    stats_q = compute_window_stats(query, m)
    stats_t = compute_window_stats(target, m)
    n1w = query.n - m + 1
    n2w = target.n - m + 1
    start, stop = (0, n1w) if rows is None else rows
    if not 0 <= start <= stop <= n1w:
        raise InvalidWindow(f"row range [{start}, {stop}) outside [0, {n1w})")

    t1 = query.values
    t2 = target.values
    mu_t = stats_t.means
    flat_t = stats_t.is_flat
    sig_t_safe = np.where(flat_t, 1.0, stats_t.stds)
    sig_q_safe = np.where(stats_q.is_flat, 1.0, stats_q.stds)

    qt = np.empty((n2w, query.d))
    qt_prev = np.empty_like(qt)
    for i in range(start, stop):
        if i == start or i % RENORM_PERIOD == 0:
            qt[:] = _dot_row(t1, i, t2, m)
        else:
            qt[0] = np.einsum("md,md->d", t1[i : i + m], t2[:m])
            qt[1:] = qt_prev[:-1] - t2[: n2w - 1] * t1[i - 1] + t2[m:] * t1[i + m - 1]
        qt, qt_prev = qt_prev, qt
        dist = _row_distances(
            qt_prev,
            m,
            stats_q.means[i],
            sig_q_safe[i],
            stats_q.is_flat[i],
            mu_t,
            sig_t_safe,
            flat_t,
        )
        if exclude_trivial:
            lo, hi = trivial_zone_bounds(i, m, n2w)
            dist[lo:hi, :] = np.inf
        yield i, dist
