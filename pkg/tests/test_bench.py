"""Benchmark harness shape and regression helpers (no timing asserts here)."""

import csv

import numpy as np

from mdmp import bench_knn, bench_variants, fit_loglog_slope
from mdmp.bench import JOIN_VARIANTS, KNN_ALGORITHMS, write_table_csv


def test_variants_table_shape():
    rows = bench_variants(n_grid=(256, 512), d_grid=(4,), trials=2, m=16)
    assert len(rows) == 2 * 1 * len(JOIN_VARIANTS)
    for row in rows:
        assert row["mean_seconds"] > 0.0
        assert row["variant"] in JOIN_VARIANTS
        assert row["trials"] == 2
    assert {(r["n"], r["d"]) for r in rows} == {(256, 4), (512, 4)}


def test_knn_table_shape():
    rows = bench_knn(k_grid=(2, 4), n2_grid=(4096,), trials=2)
    assert len(rows) == 2 * 1 * 3
    assert {row["algorithm"] for row in rows} == set(KNN_ALGORITHMS)
    assert all(row["mean_seconds"] > 0.0 for row in rows)


def test_fit_loglog_slope_recovers_exponent():
    sizes = np.array([512, 1024, 2048, 4096])
    assert abs(fit_loglog_slope(sizes, 3e-9 * sizes**2) - 2.0) < 1e-9
    assert abs(fit_loglog_slope(sizes, 5e-7 * sizes) - 1.0) < 1e-9


def test_write_table_csv_round_trips(tmp_path):
    rows = bench_knn(k_grid=(2,), n2_grid=(4096,), trials=1)
    path = tmp_path / "bench.csv"
    write_table_csv(path, rows)
    with path.open() as fh:
        loaded = list(csv.DictReader(fh))
    assert len(loaded) == len(rows)
    assert loaded[0]["experiment"] == "knn"
    assert float(loaded[0]["mean_seconds"]) > 0.0
