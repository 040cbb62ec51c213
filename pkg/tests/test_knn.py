"""Neighbor finding: hand cases, three-way equivalence, zone rules."""

import numpy as np
import pytest

import _oracles
from mdmp import (
    KnnQuery,
    apply_exclusion_zone,
    exclusion_radius,
    find_knn_brute,
    find_knn_naive_sort,
    find_knn_select,
)
from mdmp.exceptions import InfeasibleK, InvalidWindow

ALGORITHMS = (find_knn_brute, find_knn_naive_sort, find_knn_select)


def test_exclusion_zone_single_point():
    out = apply_exclusion_zone(np.array([1.0, 2, 3, 4, 5]), center=2, m=1)
    np.testing.assert_array_equal(out, [1, 2, np.inf, 4, 5])


def test_exclusion_zone_clipped_at_left_edge():
    out = apply_exclusion_zone(np.array([1.0, 2, 3, 4, 5]), center=0, m=4)
    np.testing.assert_array_equal(out, [np.inf, np.inf, 3, 4, 5])


def test_exclusion_zone_width_bound():
    rng = np.random.default_rng(2)
    for m in (1, 2, 7, 16):
        dists = rng.uniform(1, 2, size=200)
        out = apply_exclusion_zone(dists.copy(), center=int(rng.integers(200)), m=m)
        assert np.isinf(out).sum() <= 2 * exclusion_radius(m) - 1


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_hand_case_point_zones(algorithm):
    result = algorithm(KnnQuery(dists=np.array([5.0, 1, 3, 2, 9]), k=2, m=1))
    assert result.neighbor_index == 3
    assert result.neighbor_dist == 2.0
    np.testing.assert_array_equal(result.accepted, [1, 3])


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_hand_case_zone_kills_runner_up(algorithm):
    # Accepting index 0 excludes [-1, 1], so 1 is gone and 2 survives.
    result = algorithm(KnnQuery(dists=np.array([0.0, 0.1, 0.2, 5, 6, 7]), k=2, m=4))
    assert result.neighbor_index == 2
    np.testing.assert_array_equal(result.accepted, [0, 2])


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_all_infinite_is_infeasible(algorithm):
    query = KnnQuery(dists=np.full(6, np.inf), k=1, m=2)
    with pytest.raises(InfeasibleK, match="cannot accept 1 neighbors"):
        algorithm(query)


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_duplicate_minimum_breaks_to_lowest_index(algorithm):
    dists = np.full(10, 5.0)
    dists[7] = 1.0
    dists[3] = 1.0
    assert algorithm(KnnQuery(dists=dists, k=1, m=1)).neighbor_index == 3


def test_naive_sort_equals_brute_on_long_vector():
    rng = np.random.default_rng(11)
    query = KnnQuery(dists=rng.uniform(size=4096), k=5, m=16)
    a = find_knn_brute(query)
    b = find_knn_naive_sort(query)
    np.testing.assert_array_equal(a.accepted, b.accepted)


def test_three_way_equivalence_with_ties_and_oracle():
    rng = np.random.default_rng(31)
    for case in range(60):
        n = int(rng.integers(16, 2000))
        m = int(rng.integers(1, 33))
        k = int(rng.integers(1, 9))
        dists = rng.uniform(size=n)
        if case % 3 == 0:
            dists = np.round(dists, 2)  # force plenty of exact ties
        if case % 4 == 0:
            dists[rng.integers(n, size=n // 5)] = np.inf
        query = KnnQuery(dists=dists, k=k, m=m)
        expected = _oracles.knn_accepted(dists, k, m)
        results = []
        for algorithm in ALGORITHMS:
            if expected is None:
                with pytest.raises(InfeasibleK):
                    algorithm(query)
                continue
            results.append(algorithm(query))
        if expected is None:
            continue
        for result in results:
            np.testing.assert_array_equal(result.accepted, expected)
            assert result.neighbor_index == expected[-1]
            assert result.neighbor_dist == dists[expected[-1]]


def test_infeasible_message_identical_across_algorithms():
    # Radius 4 zones on a length-5 vector: the first acceptance wipes
    # out every other candidate.
    query = KnnQuery(dists=np.array([4.0, 3, 2, 3, 4]), k=2, m=8)
    messages = []
    for algorithm in ALGORITHMS:
        with pytest.raises(InfeasibleK) as info:
            algorithm(query)
        messages.append(str(info.value))
    assert messages[0] == messages[1] == messages[2]
    assert "only 1 selectable" in messages[0]


def test_accepted_lists_honor_zone_soundness():
    rng = np.random.default_rng(41)
    for _ in range(20):
        m = int(rng.integers(2, 20))
        dists = rng.uniform(size=500)
        result = find_knn_select(KnnQuery(dists=dists, k=6, m=m))
        accepted = np.sort(result.accepted)
        assert (np.diff(accepted) >= exclusion_radius(m)).all()
        assert (np.diff(dists[result.accepted]) >= 0).all()


def test_neighbor_dist_monotone_in_k():
    rng = np.random.default_rng(43)
    dists = rng.uniform(size=800)
    previous = -np.inf
    for k in range(1, 12):
        result = find_knn_brute(KnnQuery(dists=dists, k=k, m=6))
        assert result.neighbor_dist >= previous
        previous = result.neighbor_dist


def test_query_validation():
    with pytest.raises(InfeasibleK):
        KnnQuery(dists=np.ones(4), k=0, m=2)
    with pytest.raises(InvalidWindow):
        KnnQuery(dists=np.ones(4), k=1, m=0)
    with pytest.raises(ValueError):
        KnnQuery(dists=np.array([1.0, np.nan]), k=1, m=1)


def test_brute_does_not_mutate_caller_vector():
    dists = np.array([5.0, 1, 3, 2, 9])
    backup = dists.copy()
    find_knn_brute(KnnQuery(dists=dists, k=2, m=2))
    np.testing.assert_array_equal(dists, backup)
