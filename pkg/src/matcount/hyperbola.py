"""Exact point counts on the modular hyperbola u*v = K (mod q), in boxes
and under curves, with the matching main-term estimators and nominal
error bounds.

Interval convention: every range is half-open on the left and closed on
the right, (U, U+X] x (V, V+Y]; endpoints may be real (ints, floats or
Fractions), and the integer points inside are extracted with floor.
This single convention is shared with the casework module.

Main terms with K = 0 are undefined (the divisor sum over r | K has no
meaning); the estimators then substitute D = q and flag the result as a
convention value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

Number = int | float | Fraction


@dataclass(frozen=True)
class Hyperbolic:
    """Curve bound u -> A / u (A >= 0); the only variant with a usable
    second-derivative scale."""

    A: Number

    def __call__(self, u: int) -> Number:
        if isinstance(self.A, int):
            return Fraction(self.A, u)
        return self.A / u


@dataclass(frozen=True)
class Tabulated:
    """Curve bound given pointwise on integer u."""

    values: dict[int, Number]

    def __call__(self, u: int) -> Number:
        return self.values[u]


CurveBound = Hyperbolic | Tabulated


@dataclass(frozen=True)
class HyperbolaQuery:
    K: int
    q: int
    U: Number = 0
    V: Number = 0
    X: Number = 0
    Y: Number = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"modulus must be >= 1, got {self.q}")
        if self.X < 0 or self.Y < 0:
            raise ValueError("box side lengths must be non-negative")


@dataclass(frozen=True)
class CurveQuery:
    K: int
    q: int
    U: Number
    X: Number
    bound: CurveBound

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"modulus must be >= 1, got {self.q}")
        if self.X < 0:
            raise ValueError("interval length must be non-negative")
        if isinstance(self.bound, Hyperbolic):
            if self.bound.A < 0:
                raise ValueError("hyperbolic bound needs A >= 0")
            if self.U < 0:
                raise ValueError("hyperbolic bound needs U >= 0")


@dataclass
class AsymptoticReport:
    """Exact count vs. estimator for one query."""

    exact: int
    main: float
    error: float
    bound: float
    normalized: float
    convention: bool = False


def _int_range(lo: Number, length: Number) -> range:
    """Integers in the half-open interval (lo, lo + length]."""
    return range(math.floor(lo) + 1, math.floor(lo + length) + 1)


def _residue_class(u: int, q: int, K: int) -> tuple[int, int] | None:
    """Solutions v of u*v = K (mod q) as (v0, modulus), or None if none."""
    g = math.gcd(u, q)
    if K % g:
        return None
    m = q // g
    if m == 1:
        return 0, 1
    v0 = ((K // g) * pow((u // g) % m, -1, m)) % m
    return v0, m


def _count_ap(v0: int, m: int, lo: Number, length: Number) -> int:
    """Integers v = v0 (mod m) in (lo, lo + length]."""
    return math.floor((lo + length - v0) / m) - math.floor((lo - v0) / m)


def count_box(query: HyperbolaQuery) -> int:
    """Exact number of lattice points of the hyperbola in the box
    (U, U+X] x (V, V+Y]; O(X) residue-class strides."""
    total = 0
    for u in _int_range(query.U, query.X):
        rc = _residue_class(u, query.q, query.K)
        if rc is None:
            continue
        v0, m = rc
        total += _count_ap(v0, m, query.V, query.Y)
    return total


def _gcd_weight(u: int, q: int, K: int) -> int:
    """gcd(u, q) if it divides K (always, for K = 0), else 0."""
    g = math.gcd(u, q)
    return g if K % g == 0 else 0


def main_term_box(query: HyperbolaQuery) -> float:
    """Main term (Y/q) * sum over r | K of r * #{u in range: gcd(u, q) = r},
    evaluated exactly over the integer u; K = 0 uses the convention value."""
    s = sum(_gcd_weight(u, query.q, query.K) for u in _int_range(query.U, query.X))
    return float(query.Y) * s / query.q


def error_bound_box(query: HyperbolaQuery, epsilon: float = 0.0) -> float:
    """Nominal bound q^eps * (sqrt(q) + X*D/q + D) with D = gcd(K, q)."""
    q = query.q
    D = math.gcd(query.K, q) if query.K != 0 else q
    return q**epsilon * (math.sqrt(q) + float(query.X) * D / q + D)


def _bound_at(query: CurveQuery, u: int) -> Number:
    f = query.bound(u)
    if f < 0:
        raise ValueError(f"curve bound is negative at u={u}")
    return f


def count_under_curve(query: CurveQuery) -> int:
    """Exact number of lattice points with U < u <= U+X, 0 < v <= f(u) on
    the hyperbola; O(sum 1 + f(u)/q)."""
    total = 0
    for u in _int_range(query.U, query.X):
        limit = _bound_at(query, u)
        if limit < 1:
            continue
        rc = _residue_class(u, query.q, query.K)
        if rc is None:
            continue
        v0, m = rc
        total += _count_ap(v0, m, 0, limit)
    return total


def main_term_curve(query: CurveQuery) -> float:
    """Main term (1/q) * sum r * f(u) over u with gcd(u, q) = r | K, minus
    the boundary correction X * delta_q(K) / 2."""
    s = 0.0
    for u in _int_range(query.U, query.X):
        w = _gcd_weight(u, query.q, query.K)
        if w:
            s += w * float(_bound_at(query, u))
    correction = float(query.X) / 2 if query.K % query.q == 0 else 0.0
    return s / query.q - correction


def curvature_scale(query: CurveQuery) -> float:
    """Second-derivative scale L for a hyperbolic bound A/u: |f''| = 2A/u^3,
    so L is of order U^3/A, taken at the left endpoint (clamped to u >= 1).

    Only the order matters for the nominal bound; A = 0 gives a flat curve
    and is reported as infinite L.
    """
    if not isinstance(query.bound, Hyperbolic):
        raise ValueError("curvature scale requires a hyperbolic bound")
    A = float(query.bound.A)
    if A == 0.0:
        return math.inf
    u0 = max(float(query.U), 1.0)
    return u0**3 / A


def error_bound_curve(query: CurveQuery, epsilon: float = 0.0) -> float:
    """Nominal bound q^eps * (X*L^(-1/3) + D^(1/2)*L^(1/2)/q + sqrt(q) + D)."""
    q = query.q
    D = math.gcd(query.K, q) if query.K != 0 else q
    L = curvature_scale(query)
    X = float(query.X)
    if math.isinf(L):
        # flat bound: no curvature terms survive
        return q**epsilon * (math.sqrt(q) + D)
    return q**epsilon * (X * L ** (-1 / 3) + math.sqrt(D) * math.sqrt(L) / q + math.sqrt(q) + D)


def box_report(query: HyperbolaQuery, epsilon: float = 0.0) -> AsymptoticReport:
    exact = count_box(query)
    main = main_term_box(query)
    bound = error_bound_box(query, epsilon)
    err = exact - main
    return AsymptoticReport(
        exact=exact,
        main=main,
        error=err,
        bound=bound,
        normalized=abs(err) / bound if bound > 0 else math.inf,
        convention=query.K == 0,
    )


def curve_report(query: CurveQuery, epsilon: float = 0.0) -> AsymptoticReport:
    exact = count_under_curve(query)
    main = main_term_curve(query)
    bound = error_bound_curve(query, epsilon)
    err = exact - main
    return AsymptoticReport(
        exact=exact,
        main=main,
        error=err,
        bound=bound,
        normalized=abs(err) / bound if bound > 0 else math.inf,
        convention=query.K == 0,
    )
