"""Modular hyperbola point counts: hand-enumerated examples, additivity,
band subtraction, and the estimator diagnostics."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from matcount.hyperbola import (
    CurveQuery,
    Hyperbolic,
    HyperbolaQuery,
    Tabulated,
    box_report,
    count_box,
    count_under_curve,
    curve_report,
    curvature_scale,
    error_bound_box,
    error_bound_curve,
    main_term_box,
    main_term_curve,
)


def naive_box(K, q, U, V, X, Y):
    total = 0
    for u in range(math.floor(U) + 1, math.floor(U + X) + 1):
        for v in range(math.floor(V) + 1, math.floor(V + Y) + 1):
            if (u * v - K) % q == 0:
                total += 1
    return total


def test_box_hand_examples():
    assert count_box(HyperbolaQuery(K=0, q=1, U=0, V=0, X=3, Y=3)) == 9
    assert count_box(HyperbolaQuery(K=1, q=2, U=0, V=0, X=4, Y=4)) == 4
    assert count_box(HyperbolaQuery(K=2, q=4, U=0, V=0, X=4, Y=4)) == 4


@given(
    st.integers(-20, 20),
    st.integers(1, 12),
    st.integers(-5, 5),
    st.integers(-5, 5),
    st.integers(0, 15),
    st.integers(0, 15),
)
@settings(max_examples=150, deadline=None)
def test_box_matches_enumeration(K, q, U, V, X, Y):
    q2 = count_box(HyperbolaQuery(K=K, q=q, U=U, V=V, X=X, Y=Y))
    assert q2 == naive_box(K, q, U, V, X, Y)


def test_box_real_endpoints():
    # (1/2, 7/2] x (0, 5/2] holds u in {1,2,3}, v in {1,2}
    got = count_box(HyperbolaQuery(K=0, q=1, U=0.5, V=0, X=3.0, Y=2.5))
    assert got == 6


def test_box_additive_in_u_and_v():
    base = HyperbolaQuery(K=5, q=7, U=0, V=0, X=20, Y=20)
    left = HyperbolaQuery(K=5, q=7, U=0, V=0, X=8, Y=20)
    right = HyperbolaQuery(K=5, q=7, U=8, V=0, X=12, Y=20)
    low = HyperbolaQuery(K=5, q=7, U=0, V=0, X=20, Y=11)
    high = HyperbolaQuery(K=5, q=7, U=0, V=11, X=20, Y=9)
    assert count_box(base) == count_box(left) + count_box(right)
    assert count_box(base) == count_box(low) + count_box(high)


def test_main_term_box_hand_examples():
    assert main_term_box(HyperbolaQuery(K=1, q=1, U=0, V=0, X=5, Y=7)) == 35
    assert main_term_box(HyperbolaQuery(K=6, q=4, U=0, V=0, X=4, Y=4)) == 4.0


def test_error_bound_box():
    got = error_bound_box(HyperbolaQuery(K=1, q=100, U=0, V=0, X=1000, Y=1))
    assert got == pytest.approx(10 + 10 + 1)
    small = error_bound_box(HyperbolaQuery(K=1, q=9, U=0, V=0, X=10, Y=1))
    large = error_bound_box(HyperbolaQuery(K=1, q=9, U=0, V=0, X=100, Y=1))
    assert small < large  # monotone in X


def naive_curve(K, q, U, X, f):
    total = 0
    for u in range(math.floor(U) + 1, math.floor(U + X) + 1):
        v = 1
        while v <= f(u):
            if (u * v - K) % q == 0:
                total += 1
            v += 1
    return total


def test_curve_hand_examples():
    assert count_under_curve(
        CurveQuery(K=0, q=1, U=0, X=3, bound=Hyperbolic(3))
    ) == 5
    assert count_under_curve(
        CurveQuery(K=1, q=2, U=0, X=3, bound=Hyperbolic(3))
    ) == 3
    assert count_under_curve(
        CurveQuery(K=3, q=5, U=0, X=10, bound=Hyperbolic(0))
    ) == 0


@given(st.integers(-15, 15), st.integers(1, 9), st.integers(0, 8), st.integers(0, 40))
@settings(max_examples=120, deadline=None)
def test_curve_matches_enumeration(K, q, X, A):
    query = CurveQuery(K=K, q=q, U=0, X=X, bound=Hyperbolic(A))
    assert count_under_curve(query) == naive_curve(K, q, 0, X, lambda u: A / u)


def test_band_subtraction():
    # (f_-, f_+] band equals the difference of the two under-curve counts
    for K, q in ((3, 4), (6, 5)):
        hi = CurveQuery(K=K, q=q, U=0, X=12, bound=Hyperbolic(60))
        lo = CurveQuery(K=K, q=q, U=0, X=12, bound=Hyperbolic(25))
        band = naive_curve(K, q, 0, 12, lambda u: 60 / u) - naive_curve(
            K, q, 0, 12, lambda u: 25 / u
        )
        assert count_under_curve(hi) - count_under_curve(lo) == band


def test_main_term_curve_hand_example():
    got = main_term_curve(CurveQuery(K=1, q=1, U=0, X=3, bound=Hyperbolic(3)))
    assert got == pytest.approx(4.0)
    flat = main_term_curve(CurveQuery(K=1, q=2, U=0, X=3, bound=Hyperbolic(0)))
    assert flat == 0.0


def test_error_bound_curve_formula():
    # q^0 * (X L^(-1/3) + sqrt(D) sqrt(L) / q + sqrt(q) + D) at q=D=1
    query = CurveQuery(K=1, q=1, U=10, X=10, bound=Hyperbolic(1))
    L = curvature_scale(query)
    assert L == pytest.approx(1000.0)
    got = error_bound_curve(query)
    assert got == pytest.approx(10 / 10 + math.sqrt(1000) + 1 + 1)


def test_curvature_scale_edges():
    assert curvature_scale(CurveQuery(K=1, q=1, U=0, X=5, bound=Hyperbolic(0))) == math.inf
    # left endpoint clamped to u >= 1
    assert curvature_scale(
        CurveQuery(K=1, q=1, U=0, X=5, bound=Hyperbolic(2))
    ) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        curvature_scale(CurveQuery(K=1, q=1, U=0, X=2, bound=Tabulated({1: 1, 2: 1})))


def test_tabulated_bound():
    query = CurveQuery(K=0, q=1, U=0, X=3, bound=Tabulated({1: 2, 2: 0, 3: 1}))
    assert count_under_curve(query) == 3


def test_reports():
    rep = box_report(HyperbolaQuery(K=6, q=4, U=0, V=0, X=4, Y=4))
    assert rep.exact - rep.main == rep.error
    assert not rep.convention
    conv = box_report(HyperbolaQuery(K=0, q=4, U=0, V=0, X=4, Y=4))
    assert conv.convention
    crep = curve_report(CurveQuery(K=1, q=3, U=0, X=9, bound=Hyperbolic(20)))
    assert crep.normalized == pytest.approx(abs(crep.error) / crep.bound)


def test_query_validation():
    with pytest.raises(ValueError):
        HyperbolaQuery(K=1, q=0, X=1, Y=1)
    with pytest.raises(ValueError):
        HyperbolaQuery(K=1, q=2, X=-1, Y=1)
    with pytest.raises(ValueError):
        CurveQuery(K=1, q=2, U=0, X=3, bound=Hyperbolic(-1))
