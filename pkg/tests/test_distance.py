"""Distance kernels against direct-formula oracles."""

import tracemalloc

import numpy as np
import pytest

import _oracles
from mdmp import (
    as_series,
    compute_window_stats,
    distance_profile_row,
    mp_self_join,
    stream_distance_rows,
    znorm_distance,
)
from mdmp.distance import RENORM_PERIOD
from mdmp.exceptions import InvalidWindow, StatsMismatch


def test_stats_constant_series_is_flat():
    stats = compute_window_stats(np.full((10, 1), 5.0), m=4)
    np.testing.assert_array_equal(stats.means, 5.0)
    np.testing.assert_array_equal(stats.stds, 0.0)
    assert stats.is_flat.all()


def test_stats_hand_example_population_std():
    stats = compute_window_stats(np.array([1.0, 2.0, 3.0, 4.0]), m=2)
    np.testing.assert_allclose(stats.means[:, 0], [1.5, 2.5, 3.5])
    np.testing.assert_allclose(stats.stds[:, 0], [0.5, 0.5, 0.5])
    assert not stats.is_flat.any()


def test_stats_match_direct_summation():
    rng = np.random.default_rng(7)
    values = rng.standard_normal((512, 3)) * 40.0 + 100.0
    stats = compute_window_stats(values, m=64)
    for i in (0, 17, 250, 448):
        window = values[i : i + 64]
        np.testing.assert_allclose(stats.means[i], window.mean(axis=0), rtol=1e-9)
        np.testing.assert_allclose(stats.stds[i], window.std(axis=0), rtol=1e-9)


@pytest.mark.parametrize("m", [0, 11])
def test_stats_invalid_window_names_m_and_n(m):
    with pytest.raises(InvalidWindow, match=rf"m={m}.*n=10"):
        compute_window_stats(np.zeros((10, 1)), m=m)


def test_znorm_distance_scale_and_offset_invariant():
    assert znorm_distance([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == pytest.approx(0.0, abs=1e-12)
    assert znorm_distance([3.0, 1.0, 4.0, 1.0], [3.0, 1.0, 4.0, 1.0]) == 0.0


def test_znorm_distance_antiphase_hits_maximum():
    assert znorm_distance([0, 1, 0, 1], [1, 0, 1, 0]) == pytest.approx(4.0, abs=1e-12)


def test_znorm_distance_flat_conventions():
    assert znorm_distance([2.0, 2.0, 2.0], [9.0, 9.0, 9.0]) == 0.0
    assert znorm_distance([2.0, 2.0, 2.0, 2.0], [0.0, 1.0, 2.0, 4.0]) == pytest.approx(2.0)


def test_znorm_distance_rejects_short_windows():
    with pytest.raises(InvalidWindow):
        znorm_distance([1.0], [2.0])


def test_znorm_distance_matches_oracle_on_random_pairs():
    rng = np.random.default_rng(21)
    for _ in range(50):
        m = int(rng.integers(2, 40))
        a = rng.standard_normal(m) * rng.uniform(0.5, 20)
        b = rng.standard_normal(m) + rng.uniform(-5, 5)
        assert znorm_distance(a, b) == pytest.approx(
            _oracles.znorm_distance(a, b), abs=1e-9
        )


def test_row_self_join_excludes_the_diagonal():
    rng = np.random.default_rng(0)
    series = rng.standard_normal((64, 2))
    m = 8
    for i in (0, 30, 56):
        row = distance_profile_row(series, i, series, m=m, exclusion_center=i)
        radius = _oracles.exclusion_radius(m)
        zone = slice(max(0, i - radius + 1), min(57, i + radius))
        assert np.isinf(row.dists[zone]).all()
        finite = np.isfinite(row.dists)
        assert (row.dists[finite] >= 0).all()


def test_row_finds_verbatim_copy_at_zero_distance():
    rng = np.random.default_rng(1)
    target = rng.standard_normal((100, 3))
    query = np.vstack([rng.standard_normal((20, 3)), target[40:56], rng.standard_normal((10, 3))])
    row = distance_profile_row(query, 20, target, m=16)
    np.testing.assert_allclose(row.dists[40], 0.0, atol=1e-6)


def test_row_matches_bruteforce_oracle():
    rng = np.random.default_rng(5)
    query = rng.standard_normal((256, 4))
    target = rng.standard_normal((256, 4)) * 3.0 + 1.0
    m = 16
    for i in (0, 100, 240):
        row = distance_profile_row(query, i, target, m=m)
        expected = _oracles.distance_row(query, i, target, m)
        np.testing.assert_allclose(row.dists, expected, atol=1e-6)


def test_row_symmetry_between_series():
    rng = np.random.default_rng(9)
    t1 = rng.standard_normal((80, 2))
    t2 = rng.standard_normal((120, 2))
    m = 12
    forward = distance_profile_row(t1, 33, t2, m=m)
    for j in (0, 50, 108):
        backward = distance_profile_row(t2, j, t1, m=m)
        np.testing.assert_allclose(forward.dists[j], backward.dists[33], atol=1e-6)


def test_row_rejects_mismatched_stats():
    series = np.arange(40.0).reshape(-1, 2)
    stats8 = compute_window_stats(series, m=8)
    with pytest.raises(StatsMismatch):
        distance_profile_row(series, 0, series, stats_q=stats8, stats_t=stats8, m=4)


def test_streaming_rows_match_oracle_with_flat_patches():
    rng = np.random.default_rng(13)
    query = rng.standard_normal((180, 3))
    target = rng.standard_normal((140, 3))
    query[60:90, 1] = 7.0
    target[10:45, 0] = -2.5
    m = 10
    tensor = _oracles.distance_tensor(query, target, m)
    for i, dists in stream_distance_rows(query, target, m):
        np.testing.assert_allclose(dists, tensor[i], atol=1e-6)


@pytest.mark.parametrize("walk,atol", [(False, 1e-6), (True, 1e-5)])
def test_streaming_recurrence_survives_renormalization_boundary(walk, atol):
    rng = np.random.default_rng(17)
    m = 16
    series = rng.standard_normal((RENORM_PERIOD + m + 50, 2))
    if walk:
        # Walks put near-zero distances off the diagonal, where the dot
        # product identity amplifies rho noise by 1/dist; hence the
        # looser tolerance on this fixture.
        series = series.cumsum(axis=0)
    checked = 0
    for i, dists in stream_distance_rows(series, series, m):
        if i < RENORM_PERIOD - 3 or i > RENORM_PERIOD + 3:
            continue
        fresh = distance_profile_row(series, i, series, m=m)
        np.testing.assert_allclose(dists, fresh.dists, atol=atol)
        checked += 1
    assert checked == 7


def test_streaming_partition_at_renorm_multiples_is_bit_identical():
    rng = np.random.default_rng(23)
    m = 8
    series = rng.standard_normal((RENORM_PERIOD + 136, 2))
    n1w = series.shape[0] - m + 1
    full = {i: d for i, d in stream_distance_rows(series, series, m, exclude_trivial=True)}
    for rows in ((0, RENORM_PERIOD), (RENORM_PERIOD, n1w)):
        for i, dists in stream_distance_rows(series, series, m, rows=rows, exclude_trivial=True):
            np.testing.assert_array_equal(dists, full[i])


def test_join_memory_stays_linear_in_n():
    rng = np.random.default_rng(3)
    series = as_series(rng.standard_normal((2048, 4)))
    tensor_bytes = 2017 * 2017 * 4 * 8
    tracemalloc.start()
    mp_self_join(series, m=32, k=1)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    assert peak < tensor_bytes / 8
