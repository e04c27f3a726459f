"""Exact evaluators for the summation identities behind the 6/pi^2
constants, with their main terms and error envelopes.

Covered: the gcd-power partial sum upper bound, the totient ratio sums
sum phi(n)/n and sum phi(n)/n^2, the coprime counting function, four
pair sums over gcd(x, y) = r, and the truncated divisor sum
sum_{r | delta, r <= H} 1/r against sigma(delta)/delta.

Every evaluator is exact up to floating-point rounding; sums are
accumulated with math.fsum, and the tests compare against independent
naive double loops at 1e-9 relative.  Envelopes are the stated O-terms
scaled by a configurable constant, so the ratio |error| / envelope is a
direct regression statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, mobius, sieve, sigma, tau

SIX_OVER_PI2 = 6.0 / math.pi**2


@dataclass
class LemmaReport:
    """Exact value vs. main term for one identity instance."""

    exact: float
    main: float
    error: float
    envelope: float
    ratio: float


def _make_report(exact: float, main: float, envelope: float) -> LemmaReport:
    err = exact - main
    if envelope > 0:
        ratio = abs(err) / envelope
    else:
        ratio = 0.0 if err == 0 else math.inf
    return LemmaReport(exact=exact, main=main, error=err, envelope=envelope, ratio=ratio)


def gcd_power_sum(K: int, L: int, A: float, B: float) -> float:
    """Exact sum of c^A * gcd(c, L)^B over 1 <= c <= K; requires B <= 1."""
    if K < 1 or L < 1:
        raise ValueError("gcd_power_sum() requires K, L >= 1")
    if B > 1:
        raise ValueError(f"gcd_power_sum() requires B <= 1, got {B}")
    return math.fsum(c**A * math.gcd(c, L) ** B for c in range(1, K + 1))


def gcd_power_report(
    K: int, L: int, A: float, B: float, eps: float = 0.05, constant: float = 1.0
) -> LemmaReport:
    """Upper-bound report: main = 0, envelope = constant * K^(A+1+eps) * L^eps.

    This identity is a bound, not an asymptotic, so the whole sum is the
    'error' and the report checks it stays under the envelope.
    """
    exact = gcd_power_sum(K, L, A, B)
    envelope = constant * K ** (A + 1 + eps) * L**eps
    return _make_report(exact, 0.0, envelope)


def phi_ratio_sum(X: int) -> float:
    """Exact sum of phi(n)/n over 1 <= n <= X."""
    if X < 1:
        raise ValueError(f"phi_ratio_sum() requires X >= 1, got {X}")
    phi = sieve(X).phi
    return math.fsum(int(phi[n]) / n for n in range(1, X + 1))


def phi_over_square_sum(X: int) -> float:
    """Exact sum of phi(n)/n^2 over 1 <= n <= X."""
    if X < 1:
        raise ValueError(f"phi_over_square_sum() requires X >= 1, got {X}")
    phi = sieve(X).phi
    return math.fsum(int(phi[n]) / (n * n) for n in range(1, X + 1))


def phi_ratio_report(X: int, constant: float = 1.0) -> LemmaReport:
    """sum phi(n)/n = (6/pi^2) X + O(log X)."""
    envelope = constant * max(math.log(X), 1.0)
    return _make_report(phi_ratio_sum(X), SIX_OVER_PI2 * X, envelope)


def phi_over_square_report(X: int, constant: float = 1.0) -> LemmaReport:
    """sum phi(n)/n^2 = (6/pi^2) log X + O(1)."""
    envelope = constant
    return _make_report(phi_over_square_sum(X), SIX_OVER_PI2 * math.log(X), envelope)


def coprime_count(X, Y: int) -> int:
    """Exact #{0 < x <= X integer: gcd(x, Y) = 1} via Moebius over d | Y.

    X may be any real (int, float or Fraction); the floor is exact for
    int and Fraction arguments.
    """
    if Y < 1:
        raise ValueError(f"coprime_count() requires Y >= 1, got {Y}")
    if X <= 0:
        return 0
    return sum(mobius(d) * math.floor(X / d) for d in divisors(Y))


def coprime_count_report(X, Y: int) -> LemmaReport:
    """Exact count vs. X * phi(Y) / Y with envelope tau(Y); the Moebius
    proof gives the error constant 1."""
    from .arith import phi

    exact = float(coprime_count(X, Y))
    main = float(X) * phi(Y) / Y
    return _make_report(exact, main, float(tau(Y)))


def _strict_bound(t: Fraction) -> int:
    """Largest integer strictly below t."""
    return -((-t.numerator) // t.denominator) - 1


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def _xy_sum_exact(variant: int, X, Y, r: int) -> float:
    """Exact value of the variant's pair sum, O(X/r * tau) via coprime counts."""
    Xf, Yf = _as_fraction(X), _as_fraction(Y)
    Xp = math.floor(Xf / r)  # x = r x', x' <= X/r

    if variant == 1:
        # sum r/(x y) over 0 < x, y <= X with gcd(x, y) = r
        terms = []
        for d in range(1, Xp + 1):
            mu = mobius(d)
            if mu == 0:
                continue
            h = math.fsum(1.0 / (d * m) for m in range(1, Xp // d + 1))
            terms.append(mu * h * h)
        return math.fsum(terms) / r

    if variant == 2:
        # sum r/x over 0 < x <= X, 0 < y < x + Y, gcd(x, y) = r
        terms = []
        for xp in range(1, Xp + 1):
            bound = _strict_bound(xp + Yf / r)
            terms.append(coprime_count(bound, xp) / xp)
        return math.fsum(terms)

    if variant == 3:
        # sum r/y over x + Y < y <= X, 0 < x, gcd(x, y) = r
        terms = []
        for yp in range(1, Xp + 1):
            bound = _strict_bound(yp - Yf / r)
            if bound < 1:
                continue
            terms.append(coprime_count(bound, yp) / yp)
        return math.fsum(terms)

    if variant == 4:
        # sum r/y over 0 < x <= X, 0 < y <= Y, gcd(x, y) = r
        Yp = math.floor(Yf / r)
        terms = []
        for yp in range(1, Yp + 1):
            terms.append(coprime_count(Xp, yp) / yp)
        return math.fsum(terms)

    raise ValueError(f"xy_sum() variant must be 1..4, got {variant}")


def xy_sum(variant: int, X, Y, r: int, constant: float = 1.0) -> LemmaReport:
    """Pair sums over gcd(x, y) = r with their main terms.

    variant 1: sum r/(xy), 0 < x, y <= X;
               main (6/pi^2)(1/r) log^2(X/r), envelope ~ (1/r) log(X/r).
    variant 2: sum r/x, 0 < x <= X, 0 < y < x + Y;
               main (6/pi^2)(X/r + (Y/r) log(X/r)), envelope ~ Y/r + log^2(X/r).
    variant 3: sum r/y, x + Y < y <= X (upper bound taken weakly, matching
               the telescoped proof), 0 < x; requires Y <= X;
               main (6/pi^2)((X-Y)/r + (Y/r) log(X/Y)), envelope as variant 2.
    variant 4: sum r/y over the box 0 < x <= X, 0 < y <= Y; requires Y >= r;
               main (6/pi^2)(X/r) log(Y/r), envelope ~ X/r.
    """
    if r < 1:
        raise ValueError(f"xy_sum() requires r >= 1, got {r}")
    if variant in (1, 2, 3) and not r <= X:
        raise ValueError(f"xy_sum() variant {variant} requires r <= X")
    if variant in (2, 3, 4) and Y < 0:
        raise ValueError("xy_sum() requires Y >= 0")
    if variant == 3 and not Y <= X:
        raise ValueError("xy_sum() variant 3 requires Y <= X")
    if variant == 4 and not (X > 0 and Y >= r):
        raise ValueError("xy_sum() variant 4 requires X > 0 and Y >= r")

    exact = _xy_sum_exact(variant, X, Y, r)
    Xr = float(X) / r
    logXr = math.log(Xr) if Xr > 0 else 0.0

    if variant == 1:
        main = SIX_OVER_PI2 * logXr**2 / r
        envelope = constant * logXr / r
    elif variant == 2:
        main = SIX_OVER_PI2 * (Xr + (float(Y) / r) * logXr)
        envelope = constant * (float(Y) / r + logXr**2)
    elif variant == 3:
        ylog = (float(Y) / r) * math.log(float(X) / float(Y)) if Y > 0 else 0.0
        main = SIX_OVER_PI2 * ((float(X) - float(Y)) / r + ylog)
        envelope = constant * (float(Y) / r + logXr**2)
    else:
        main = SIX_OVER_PI2 * Xr * math.log(float(Y) / r)
        envelope = constant * Xr
    return _make_report(exact, main, envelope)


def divisor_tail(delta: int, H: int) -> tuple[Fraction, Fraction]:
    """(partial, full) with partial = sum 1/r over r | delta, r <= H, and
    full = sigma(delta)/delta; exact rationals, 0 <= full - partial <= tau/H."""
    if delta < 1 or H < 1:
        raise ValueError("divisor_tail() requires delta, H >= 1")
    partial = sum(
        (Fraction(1, r) for r in divisors(delta) if r <= H), start=Fraction(0)
    )
    full = Fraction(sigma(delta), delta)
    return partial, full
