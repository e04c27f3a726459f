"""Ground-truth counting of bounded-height integer matrices with fixed
determinant.

Two independent routes are kept side by side: ``naive_count`` enumerates
every matrix in the box, while ``fast_count`` evaluates the product
convolution sum(m) c2(m) * c2(m - delta) from a tau_H table.  The two
must agree exactly; the tests enforce this exhaustively at small heights.

Also provides sign-class counts (prescribed signs of a, c, d with all
four entries nonzero), the zero-entry count via inclusion-exclusion, and
the decomposition report asserting

    total = 4 * (c_{1,1,1} + c_{1,1,-1}) + zero_entry

together with the eight sign-class equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetError
from .tau_tables import (
    DEFAULT_CELL_BUDGET,
    ProductCount,
    TauTable,
    build_tau_table,
    product_count,
)

# Hard cap on full enumeration: (2H+1)^(n^2) matrices.
NAIVE_ENUM_LIMIT = 10**10


@dataclass(frozen=True)
class SignClass:
    """Signs of entries a, c, d; membership additionally requires b != 0."""

    alpha: int
    gamma: int
    delta_prime: int

    def __post_init__(self):
        for s in (self.alpha, self.gamma, self.delta_prime):
            if s not in (-1, 1):
                raise ValueError(f"sign components must be +-1, got {s}")


ALL_SIGN_CLASSES = tuple(
    SignClass(a, g, d) for a in (1, -1) for g in (1, -1) for d in (1, -1)
)


@dataclass
class DecompositionReport:
    total: int
    per_class: dict[tuple[int, int, int], int]
    zero_entry: int
    assembly_ok: bool
    failures: list[str]


@lru_cache(maxsize=8)
def _det_histogram_2x2(H: int) -> np.ndarray:
    """Histogram of ad - bc over all (2H+1)^4 matrices; index m + 2H^2.

    Full enumeration: every (a, d) row is crossed with every (b, c) pair,
    chunked by a to bound memory.
    """
    v = np.arange(-H, H + 1, dtype=np.int64)
    bc = np.multiply.outer(v, v).ravel()
    off = 2 * H * H
    hist = np.zeros(4 * H * H + 1, dtype=np.int64)
    for a in v:
        dets = (a * v)[:, None] - bc[None, :]
        hist += np.bincount((dets + off).ravel(), minlength=hist.size)
    return hist


def naive_count(H: int, delta: int, n: int = 2) -> int:
    """Exact #D_n(H, delta) by full enumeration of the box.

    n = 3 exists only as a toy-scale exhibit; the enforced budget
    (2H+1)^(n^2) <= 1e10 restricts it to H <= 2.
    """
    if H < 1:
        raise ValueError(f"naive_count() requires H >= 1, got {H}")
    if n not in (2, 3):
        raise ValueError(f"naive_count() supports n in {{2, 3}}, got {n}")
    if (2 * H + 1) ** (n * n) > NAIVE_ENUM_LIMIT:
        raise BudgetError(
            f"naive_count(H={H}, n={n}) would enumerate (2H+1)^{n * n} matrices"
        )
    if n == 2:
        hist = _det_histogram_2x2(H)
        idx = delta + 2 * H * H
        if idx < 0 or idx >= hist.size:
            return 0
        return int(hist[idx])
    return _naive_count_3x3(H, delta)


def _naive_count_3x3(H: int, delta: int) -> int:
    v = np.arange(-H, H + 1, dtype=np.int64)
    grids = np.meshgrid(*([v] * 6), indexing="ij", sparse=False)
    d, e, f, g, h, i = (x.ravel() for x in grids)
    # 2x2 minors of the lower two rows; the top row is looped
    m1 = e * i - f * h
    m2 = d * i - f * g
    m3 = d * h - e * g
    total = 0
    for a in v:
        for b in v:
            for c in v:
                total += int(np.count_nonzero(a * m1 - b * m2 + c * m3 == delta))
    return total


def fast_count(
    H: int,
    delta: int,
    table: TauTable | None = None,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> int:
    """Exact #D_2(H, delta) as sum(m) c2(m) * c2(m - delta).

    With t = tau_H and D = |delta| > 0 the signed sum collapses to

        4*(4H+1)*t(D) + 8*sum_{k>=1} t(k)t(k+D) + 4*sum_{0<m<D} t(m)t(D-m),

    and for delta = 0 to (4H+1)^2 + 8*sum t(k)^2.  All sums run over the
    support k <= H^2 of the supplied tau_H table.
    """
    if H < 1:
        raise ValueError(f"fast_count() requires H >= 1, got {H}")
    D = abs(delta)
    if D > 2 * H * H:
        return 0
    if table is None:
        table = build_tau_table(H, cell_budget)
    elif table.N != H:
        raise ValueError(f"tau table is for N={table.N}, expected H={H}")
    limit = H * H
    t = table.counts.astype(np.int64)
    if D == 0:
        return (4 * H + 1) ** 2 + 8 * int(np.dot(t[1:], t[1:]))
    total = 0
    if D <= limit:
        total += 4 * (4 * H + 1) * int(t[D])
    if D < limit:
        total += 8 * int(np.dot(t[1 : limit - D + 1], t[1 + D : limit + 1]))
    if D >= 2:
        hi = min(D - 1, limit)
        lo = D - hi  # mirror index >= 1; both factors need support <= limit
        if lo <= hi:
            total += 4 * int(np.dot(t[lo : hi + 1], t[hi : lo - 1 : -1]))
    return total


def sign_class_count(H: int, delta: int, sign_class: SignClass) -> int:
    """Exact count of matrices in D_2(H, delta) with sgn a = alpha,
    sgn c = gamma, sgn d = delta' and b != 0.

    Direct enumeration of (a, c, d) in the prescribed orthant; b is read
    off from b = (a*d - delta) / c and checked for integrality and range.
    """
    if H < 1:
        raise ValueError(f"sign_class_count() requires H >= 1, got {H}")
    al, ga, dp = sign_class.alpha, sign_class.gamma, sign_class.delta_prime
    d_vals = dp * np.arange(1, H + 1, dtype=np.int64)
    total = 0
    for a1 in range(1, H + 1):
        a = al * a1
        ad = a * d_vals
        for c1 in range(1, H + 1):
            c = ga * c1
            k = ad - delta
            mask = (k % c == 0) & (k != 0)
            if not mask.any():
                continue
            b = k[mask] // c
            total += int(np.count_nonzero((b >= -H) & (b <= H)))
    return total


def zero_entry_count(
    H: int, delta: int, products: ProductCount | None = None
) -> int:
    """Exact count of matrices in D_2(H, delta) with at least one zero entry.

    Inclusion-exclusion over the four events {entry == 0}; each term
    reduces to the signed product counter c2.
    """
    if H < 1:
        raise ValueError(f"zero_entry_count() requires H >= 1, got {H}")
    if products is None:
        products = product_count(H)
    c2d = products.count(delta)  # c2 is even in m
    side = 2 * H + 1
    z = 4 * side * c2d - 2 * c2d
    if delta == 0:
        z += -4 * side * side + 4 * side - 1
    return z


def decompose(
    H: int,
    delta: int,
    table: TauTable | None = None,
) -> DecompositionReport:
    """Full sign decomposition of #D_2(H, delta) with exact identity checks."""
    if table is None:
        table = build_tau_table(H)
    total = fast_count(H, delta, table=table)
    per_class = {
        (sc.alpha, sc.gamma, sc.delta_prime): sign_class_count(H, delta, sc)
        for sc in ALL_SIGN_CLASSES
    }
    zero = zero_entry_count(H, delta, products=ProductCount(H=H, table=table))

    failures: list[str] = []
    c111 = per_class[(1, 1, 1)]
    c11m1 = per_class[(1, 1, -1)]
    if total != sum(per_class.values()) + zero:
        failures.append("total != sum(per_class) + zero_entry")
    if total != 4 * (c111 + c11m1) + zero:
        failures.append("total != 4*(c111 + c11-1) + zero_entry")
    for (al, ga, dp), cnt in per_class.items():
        expect = c111 if dp == al else c11m1
        if cnt != expect:
            failures.append(f"class ({al},{ga},{dp}) = {cnt}, expected {expect}")
    return DecompositionReport(
        total=total,
        per_class=per_class,
        zero_entry=zero,
        assembly_ok=not failures,
        failures=failures,
    )
