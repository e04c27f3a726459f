"""The restricted divisor function tau_N and its tables.

tau_N(n) counts ordered factorizations n = a*b with 1 <= a, b <= N;
equivalently, divisors d of n with n/N <= d <= N.  The module provides
the O(N^2) sieve, exact moments and shifted convolutions (both in-memory
and streaming variants, which agree exactly), the signed product counter
used by the fast matrix counter, and a binary dump/load format.

The signed counter c2(m) = #{(x, y): |x|, |y| <= H, x*y = m} obeys the
brute-force-derived law

    c2(0) = 4H + 1,    c2(m) = 2 * tau_H(|m|)   for m != 0,

(each positive factorization (a, b) of |m| lifts to exactly two signed
pairs: (a, b)/(-a, -b) for m > 0 and (a, -b)/(-a, b) for m < 0).  The
law is pinned against exhaustive enumeration for H <= 12 in the tests.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BudgetError

DEFAULT_CELL_BUDGET = 200_000_000

_MAGIC = b"TAUT"
_VERSION = 1


@dataclass(frozen=True)
class TauTable:
    """counts[n] = tau_N(n) for 1 <= n <= N^2 (index 0 unused), uint32 cells."""

    N: int
    counts: np.ndarray

    @property
    def limit(self) -> int:
        return self.N * self.N


def build_tau_table(N: int, cell_budget: int = DEFAULT_CELL_BUDGET) -> TauTable:
    """Sieve tau_N over [1, N^2] by looping a and striding over multiples."""
    if N < 1:
        raise ValueError(f"build_tau_table() requires N >= 1, got {N}")
    if N * N + 1 > cell_budget:
        raise BudgetError(
            f"build_tau_table(N={N}) needs {N * N + 1} cells, budget is {cell_budget}"
        )
    counts = np.zeros(N * N + 1, dtype=np.uint32)
    for a in range(1, N + 1):
        counts[a : a * N + 1 : a] += 1
    counts.flags.writeable = False
    return TauTable(N=N, counts=counts)


def tau_restricted(table: TauTable, n: int) -> int:
    """tau_N(n); zero beyond the support n > N^2.  Rejects n <= 0."""
    if n <= 0:
        raise ValueError(f"tau_restricted() requires n >= 1, got {n}")
    if n > table.limit:
        return 0
    return int(table.counts[n])


def _block_counts(N: int, lo: int, hi: int) -> np.ndarray:
    """tau_N(n) for n in [lo, hi] without materializing the full table."""
    out = np.zeros(hi - lo + 1, dtype=np.uint32)
    for a in range(1, N + 1):
        first = a * max(1, -(-lo // a))
        last = min(a * N, hi)
        if first > last:
            continue
        out[first - lo : last - lo + 1 : a] += 1
    return out


def tau_moment(table: TauTable, k: int) -> int:
    """Exact sum of tau_N(n)^k over 1 <= n <= N^2.

    Goes through a value histogram so the k-th powers are taken with
    Python integers; exact for any k, no overflow.
    """
    if k < 1:
        raise ValueError(f"tau_moment() requires k >= 1, got {k}")
    freq = np.bincount(table.counts[1:])
    return sum(int(f) * v**k for v, f in enumerate(freq) if f)


def tau_moment_streaming(N: int, k: int, block_size: int = 1 << 20) -> int:
    """Streaming variant of tau_moment; agrees exactly with the table path."""
    if N < 1:
        raise ValueError(f"tau_moment_streaming() requires N >= 1, got {N}")
    if k < 1:
        raise ValueError(f"tau_moment_streaming() requires k >= 1, got {k}")
    total = 0
    limit = N * N
    lo = 1
    while lo <= limit:
        hi = min(lo + block_size - 1, limit)
        freq = np.bincount(_block_counts(N, lo, hi))
        total += sum(int(f) * v**k for v, f in enumerate(freq) if f)
        lo = hi + 1
    return total


def shifted_sum(table: TauTable, delta: int) -> int:
    """Exact sum of tau_N(n) * tau_N(n + delta) over 1 <= n <= N^2."""
    if delta < 1:
        raise ValueError(f"shifted_sum() requires delta >= 1, got {delta}")
    limit = table.limit
    if delta >= limit:
        return 0
    c = table.counts.astype(np.int64)
    # terms with n + delta > N^2 vanish; products fit int64 comfortably
    return int(np.dot(c[1 : limit - delta + 1], c[1 + delta : limit + 1]))


def shifted_sum_streaming(N: int, delta: int, block_size: int = 1 << 20) -> int:
    """Streaming variant of shifted_sum; agrees exactly with the table path."""
    if N < 1:
        raise ValueError(f"shifted_sum_streaming() requires N >= 1, got {N}")
    if delta < 1:
        raise ValueError(f"shifted_sum_streaming() requires delta >= 1, got {delta}")
    limit = N * N
    total = 0
    lo = 1
    while lo + delta <= limit:
        hi = min(lo + block_size - 1, limit - delta)
        a = _block_counts(N, lo, hi).astype(np.int64)
        b = _block_counts(N, lo + delta, hi + delta).astype(np.int64)
        total += int(np.dot(a, b))
        lo = hi + 1
    return total


@dataclass(frozen=True)
class ProductCount:
    """Signed-box product counter c2 for a fixed height H, backed by a TauTable."""

    H: int
    table: TauTable

    def count(self, m: int) -> int:
        """c2(m) = #{(x, y): |x|, |y| <= H, x*y = m}."""
        if m == 0:
            return 4 * self.H + 1
        a = abs(m)
        if a > self.H * self.H:
            return 0
        return 2 * int(self.table.counts[a])


def product_count(H: int, cell_budget: int = DEFAULT_CELL_BUDGET) -> ProductCount:
    """Build the c2 counter for height H (tau table of size H^2)."""
    return ProductCount(H=H, table=build_tau_table(H, cell_budget))


def save_tau_table(table: TauTable, path: str | Path) -> None:
    """Binary dump: header {magic 'TAUT', u32 version, u64 N}, then the
    counts for n = 1..N^2 as little-endian u32."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", _VERSION))
        fh.write(struct.pack("<Q", table.N))
        fh.write(table.counts[1:].astype("<u4").tobytes())


def load_tau_table(path: str | Path) -> TauTable:
    """Load a table written by save_tau_table, validating the header."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r} in {path}")
        (version,) = struct.unpack("<I", fh.read(4))
        if version != _VERSION:
            raise ValueError(f"unsupported tau table version {version}")
        (N,) = struct.unpack("<Q", fh.read(8))
        data = np.frombuffer(fh.read(), dtype="<u4")
    if data.size != N * N:
        raise ValueError(f"truncated tau table: expected {N * N} cells, got {data.size}")
    counts = np.zeros(N * N + 1, dtype=np.uint32)
    counts[1:] = data
    counts.flags.writeable = False
    return TauTable(N=int(N), counts=counts)
