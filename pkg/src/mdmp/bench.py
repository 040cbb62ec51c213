"""Wall-clock benchmark harness for joins and neighbor selection.

Two experiments, each emitting a flat table of mean runtimes:

``variants``
    Self-joins on random series across an ``n`` grid and a ``d`` grid,
    one row per (variant, n, d). The expected shape is quadratic growth
    in ``n`` for every variant and an extra ``log d`` factor for
    pre-sort relative to pre-max.
``knn``
    The three neighbor-selection algorithms over random distance
    vectors (``n1 * d`` query vectors per trial, as in a small join),
    one row per (algorithm, k, n2). Brute force grows linearly in
    ``k``, full sorting dominates at large ``n2``, partial selection
    stays near-linear.

Desk-scale default grids finish in well under ten minutes; ``full``
grids are an order of magnitude larger (n = 2^12 for the dimension
sweep, d = 64 for the length sweep, 16 trials; selection at
k = 64, n1 = 16, d = 4).
"""

from __future__ import annotations

import csv
import time
from pathlib import Path

import numpy as np

from .knn import KnnQuery, find_knn_brute, find_knn_naive_sort, find_knn_select
from .profile import NAIVE_SUM, VARIANTS, mp_self_join

JOIN_VARIANTS = tuple(name for name in VARIANTS if name != NAIVE_SUM.name)

KNN_ALGORITHMS = {
    "brute": find_knn_brute,
    "naive-sort": find_knn_naive_sort,
    "select": find_knn_select,
}

VARIANTS_DESK = {
    "n": dict(n_grid=(512, 1024, 2048, 4096), d_grid=(16,), trials=3),
    "d": dict(n_grid=(1024,), d_grid=(4, 16, 64), trials=3),
}
VARIANTS_FULL = {
    "n": dict(n_grid=(1024, 2048, 4096, 8192), d_grid=(64,), trials=16),
    "d": dict(n_grid=(4096,), d_grid=(4, 16, 64, 256), trials=16),
}
KNN_DESK = dict(k_grid=(4, 64), n2_grid=(2**14, 2**18), trials=3)
KNN_FULL = dict(k_grid=(4, 16, 64), n2_grid=(2**14, 2**16, 2**18, 2**20), trials=100)

KNN_N1 = 16
KNN_D = 4
KNN_M = 16


def bench_variants(n_grid, d_grid, trials, m: int = 64, seed: int = 0) -> list[dict]:
    """Mean self-join wall time per (variant, n, d) over ``trials`` runs."""
    rng = np.random.default_rng(seed)
    rows = []
    for n in n_grid:
        for d in d_grid:
            series = [rng.standard_normal((n, d)) for _ in range(trials)]
            for name in JOIN_VARIANTS:
                elapsed = []
                for x in series:
                    t0 = time.perf_counter()
                    mp_self_join(x, m, k=1, variant=name)
                    elapsed.append(time.perf_counter() - t0)
                rows.append(
                    dict(
                        experiment="variants",
                        variant=name,
                        n=int(n),
                        d=int(d),
                        trials=int(trials),
                        mean_seconds=float(np.mean(elapsed)),
                    )
                )
    return rows


def bench_knn(k_grid, n2_grid, trials, n1: int = KNN_N1, d: int = KNN_D,
              m: int = KNN_M, seed: int = 0) -> list[dict]:
    """Mean selection wall time per (algorithm, k, n2) over ``trials`` runs.

    Each trial draws ``n1 * d`` random distance vectors of length
    ``n2 - m + 1`` and times every algorithm on the same vectors.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for k in k_grid:
        for n2 in n2_grid:
            totals = {name: [] for name in KNN_ALGORITHMS}
            for _ in range(trials):
                vectors = rng.random((n1 * d, n2 - m + 1))
                queries = [KnnQuery(vec, k=int(k), m=m) for vec in vectors]
                for name, algo in KNN_ALGORITHMS.items():
                    t0 = time.perf_counter()
                    for query in queries:
                        algo(query)
                    totals[name].append(time.perf_counter() - t0)
            for name in KNN_ALGORITHMS:
                rows.append(
                    dict(
                        experiment="knn",
                        algorithm=name,
                        k=int(k),
                        n2=int(n2),
                        trials=int(trials),
                        mean_seconds=float(np.mean(totals[name])),
                    )
                )
    return rows


def variants_experiment(full: bool = False, seed: int = 0) -> list[dict]:
    """Both sweeps of the variants experiment, tagged with a ``sweep`` key."""
    grids = VARIANTS_FULL if full else VARIANTS_DESK
    rows = []
    for sweep, grid in grids.items():
        for row in bench_variants(seed=seed, **grid):
            rows.append(dict(sweep=sweep, **row))
    return rows


def knn_experiment(full: bool = False, seed: int = 0) -> list[dict]:
    """The selection experiment at desk or full scale."""
    grid = KNN_FULL if full else KNN_DESK
    return bench_knn(seed=seed, **grid)


def fit_loglog_slope(sizes, times) -> float:
    """Least-squares slope of log(time) against log(size)."""
    sizes = np.asarray(sizes, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    return float(np.polyfit(np.log(sizes), np.log(times), 1)[0])


def write_table_csv(path, rows: list[dict]) -> None:
    """Write benchmark rows as CSV, one column per key of the first row."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
