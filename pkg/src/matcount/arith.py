"""Elementary multiplicative number theory.

Provides gcd, divisor enumeration, the classical arithmetic functions
tau (divisor count), sigma (divisor sum), phi (Euler totient) and mu
(Moebius), a divisibility indicator, and sieved tables of all four
functions up to a configurable limit.

All scalar arithmetic is plain Python integers, so intermediate products
never wrap; sieve tables are int64 numpy arrays whose entries are far
below the int64 range for any admissible limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError

# Total sieve cells allowed across the four tables (not bytes).
DEFAULT_CELL_BUDGET = 200_000_000


def gcd(x: int, y: int) -> int:
    """Greatest common divisor, always non-negative; gcd(0, 0) == 0."""
    return math.gcd(x, y)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted ascending.

    Trial division up to sqrt(n); rejects n <= 0.
    """
    if n <= 0:
        raise ValueError(f"divisors() requires n >= 1, got {n}")
    small: list[int] = []
    large: list[int] = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    large.reverse()
    return small + large


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (prime, exponent) pairs, ascending."""
    if n <= 0:
        raise ValueError(f"factorize() requires n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2 if p % 6 == 5 else 4
    if n > 1:
        out.append((n, 1))
    return out


def tau(n: int) -> int:
    """Number of positive divisors of n."""
    return math.prod(e + 1 for _, e in factorize(n))


def sigma(n: int) -> int:
    """Sum of positive divisors of n."""
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in factorize(n))


def phi(n: int) -> int:
    """Euler totient of n."""
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    """Moebius function: 0 if n has a square factor, else (-1)^(#prime factors)."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def delta_div(q: int, K: int) -> int:
    """Divisibility indicator: 1 iff q divides K (K == 0 counts as divisible)."""
    if q < 1:
        raise ValueError(f"delta_div() requires q >= 1, got {q}")
    return 1 if K % q == 0 else 0


@dataclass(frozen=True)
class MultiplicativeTables:
    """Sieved values of tau, sigma, phi, mu for 1 <= n <= limit.

    Arrays are 1-indexed (index 0 unused) and read-only after construction,
    so a table is safely shareable across concurrent readers.
    """

    limit: int
    tau: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray
    mu: np.ndarray


def _primes_up_to(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.nonzero(is_prime)[0]


def sieve(limit: int, cell_budget: int = DEFAULT_CELL_BUDGET) -> MultiplicativeTables:
    """Build MultiplicativeTables up to ``limit``.

    Tables agree with the pointwise functions for every n <= limit.
    Rejects limits whose four tables would exceed ``cell_budget`` cells.
    """
    if limit < 1:
        raise ValueError(f"sieve() requires limit >= 1, got {limit}")
    if 4 * (limit + 1) > cell_budget:
        raise BudgetError(
            f"sieve(limit={limit}) needs {4 * (limit + 1)} cells, budget is {cell_budget}"
        )

    tau_t = np.zeros(limit + 1, dtype=np.int64)
    sigma_t = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        tau_t[d::d] += 1
        sigma_t[d::d] += d

    phi_t = np.arange(limit + 1, dtype=np.int64)
    mu_t = np.ones(limit + 1, dtype=np.int64)
    for p in _primes_up_to(limit):
        phi_t[p::p] -= phi_t[p::p] // p
        mu_t[p::p] *= -1
        sq = int(p) * int(p)
        if sq <= limit:
            mu_t[sq::sq] = 0
    if limit >= 0:
        mu_t[0] = 0

    for arr in (tau_t, sigma_t, phi_t, mu_t):
        arr.flags.writeable = False
    return MultiplicativeTables(limit=limit, tau=tau_t, sigma=sigma_t, phi=phi_t, mu=mu_t)
