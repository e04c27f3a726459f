"""Per-(a, c) counts, region partitions, golden fixtures, and exact
agreement between the direct and hyperbola-based region sums."""

import pytest

from matcount.casework import (
    RegionG,
    RegionJ,
    count_G,
    count_G_with_b0,
    count_J,
    region_sum_G,
    region_sum_G_via_hyperbola,
    region_sum_J,
    region_sum_J_via_hyperbola,
)
from matcount.exact import SignClass, sign_class_count
from matcount.tau_tables import build_tau_table, shifted_sum


def naive_G(a, c, H, delta, allow_b0=False):
    total = 0
    for d in range(1, H + 1):
        for b in range(-H, H + 1):
            if b == 0 and not allow_b0:
                continue
            if a * d == delta + b * c:
                total += 1
    return total


def naive_J(a, c, H, delta):
    return sum(
        1
        for d in range(1, H + 1)
        for b in range(1, H + 1)
        if a * d == delta + b * c
    )


def test_count_G_hand_examples():
    assert count_G(1, 1, 3, 1) == 2
    assert count_G(1, 1, 1, 1) == 0  # only solution has b = 0
    assert count_G_with_b0(1, 1, 1, 1) == 1


def test_count_J_hand_examples():
    assert count_J(1, 1, 2, 1) == 1


@pytest.mark.parametrize("H,delta", [(4, 1), (5, 7), (6, 20), (7, 49), (8, 3)])
def test_counts_match_enumeration(H, delta):
    for a in range(1, H + 1):
        for c in range(1, H + 1):
            assert count_G(a, c, H, delta) == naive_G(a, c, H, delta)
            assert count_G_with_b0(a, c, H, delta) == naive_G(a, c, H, delta, True)
            diff = count_G_with_b0(a, c, H, delta) - count_G(a, c, H, delta)
            assert diff in (0, 1)
            assert count_J(a, c, H, delta) == naive_J(a, c, H, delta)


def test_count_G_upper_bound():
    H, delta = 9, 11
    for a in range(1, H + 1):
        for c in range(1, H + 1):
            assert count_G(a, c, H, delta) <= 2 * H * c // a + 1


def test_validation():
    with pytest.raises(ValueError):
        count_G(0, 1, 3, 1)
    with pytest.raises(ValueError):
        count_G(1, 1, 3, 0)
    with pytest.raises(ValueError):
        count_J(1, 4, 3, 1)


def test_regions_partition_and_cross_module_totals():
    for H in (10, 20):
        for delta in (1, 3, 7, 25, H, 2 * H, H * H // 2):
            g_total = sum(region_sum_G(H, delta, r) for r in RegionG)
            assert g_total == sign_class_count(H, delta, SignClass(1, 1, 1))
            j_total = sum(region_sum_J(H, delta, r) for r in RegionJ)
            assert j_total == sign_class_count(H, delta, SignClass(1, 1, -1))
            assert j_total == shifted_sum(build_tau_table(H), delta)


def test_small_delta_empties_small_c_regions():
    # delta < H leaves no positive integer c <= delta/H
    for region in (RegionG.SS, RegionG.LS):
        assert region_sum_G(9, 5, region) == 0


def test_golden_fixtures():
    # frozen from the direct double loop
    assert {r.name: region_sum_G(20, 60, r) for r in RegionG} == {
        "SS": 118,
        "SL": 647,
        "LS": 200,
        "LL": 295,
    }
    assert {r.name: region_sum_J(20, 7, r) for r in RegionJ} == {
        "SMALL_A": 225,
        "LARGE_A": 236,
    }


def test_delta_H_squared_kills_J():
    H = 7
    assert sum(region_sum_J(H, H * H, r) for r in RegionJ) == 0


@pytest.mark.parametrize("H", [10, 20])
def test_hyperbola_equals_direct(H):
    for delta in (1, 3, 7, 25, H, 2 * H, H * H // 2):
        for region in RegionG:
            assert region_sum_G_via_hyperbola(H, delta, region, check=True) == \
                region_sum_G(H, delta, region), (H, delta, region)
        for region in RegionJ:
            assert region_sum_J_via_hyperbola(H, delta, region, check=True) == \
                region_sum_J(H, delta, region), (H, delta, region)
