"""Main-term formulas for the counting asymptotics, exact-vs-main
reports, and log-log regression of error exponents over sweeps.

Main terms ("log" is always the natural logarithm):

  THEOREM_MAIN            (96/pi^2) (sigma(|delta|)/|delta|) H^2
  DELTA0_MAIN             (96/pi^2) H^2 ln H
  SIGN_LEMMA_MAIN         (12/pi^2) H^2 sum_{r | delta, r <= H} 1/r
  TAU_SQ_MAIN             (12/pi^2) N^2 ln N
  SHIFTED_LOG_CANDIDATE   (12/pi^2) (sigma(|delta|)/|delta|) N^2 ln N
  SHIFTED_NOLOG_CANDIDATE (12/pi^2) (sigma(|delta|)/|delta|) N^2

The two SHIFTED kinds are rival main terms for the shifted convolution
sum tau_N(n) tau_N(n + delta): the literature-style statement carries a
log factor while the sign-class identity forces a log-free leading
order.  Neither is hard-coded as truth; ``discriminate_shifted`` fits
the data and reports which candidate survives.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .arith import sigma
from .hyperbola import AsymptoticReport
from .lemmas import divisor_tail
from .tau_tables import TauTable, build_tau_table, shifted_sum
from .exact import fast_count

COEFF_96 = 96.0 / math.pi**2
COEFF_12 = 12.0 / math.pi**2


class MainTermKind(enum.Enum):
    THEOREM_MAIN = "theorem_main"
    DELTA0_MAIN = "delta0_main"
    SIGN_LEMMA_MAIN = "sign_lemma_main"
    TAU_SQ_MAIN = "tau_sq_main"
    SHIFTED_LOG_CANDIDATE = "shifted_log_candidate"
    SHIFTED_NOLOG_CANDIDATE = "shifted_nolog_candidate"


_DELTA_FREE = {MainTermKind.DELTA0_MAIN, MainTermKind.TAU_SQ_MAIN}


def main_term(kind: MainTermKind, n: int, delta: int = 0) -> float:
    """Value of the named main term at height (or table size) n."""
    if n < 1:
        raise ValueError(f"main_term() requires n >= 1, got {n}")
    if kind not in _DELTA_FREE and delta == 0:
        raise ValueError(f"main_term() kind {kind.name} requires delta != 0")
    D = abs(delta)
    if kind is MainTermKind.THEOREM_MAIN:
        return COEFF_96 * (sigma(D) / D) * n * n
    if kind is MainTermKind.DELTA0_MAIN:
        return COEFF_96 * n * n * math.log(n)
    if kind is MainTermKind.SIGN_LEMMA_MAIN:
        partial, _ = divisor_tail(D, n)
        return COEFF_12 * n * n * float(partial)
    if kind is MainTermKind.TAU_SQ_MAIN:
        return COEFF_12 * n * n * math.log(n)
    if kind is MainTermKind.SHIFTED_LOG_CANDIDATE:
        return COEFF_12 * (sigma(D) / D) * n * n * math.log(n)
    return COEFF_12 * (sigma(D) / D) * n * n


def error_envelope(H: int, delta: int, epsilon: float = 0.1) -> float:
    """Nominal bound H^eps * max(H^(5/3), |delta|)."""
    return H**epsilon * max(H ** (5 / 3), abs(delta))


def report(
    H: int,
    delta: int,
    epsilon: float = 0.1,
    table: TauTable | None = None,
) -> AsymptoticReport:
    """Exact count vs. the determinant-count main term.

    delta = 0 uses the H^2 log H law, delta != 0 the divisor-ratio law;
    bound is the nominal H^eps * max(H^(5/3), |delta|) envelope.
    """
    if H < 1:
        raise ValueError(f"report() requires H >= 1, got {H}")
    exact = fast_count(H, delta, table=table)
    kind = MainTermKind.DELTA0_MAIN if delta == 0 else MainTermKind.THEOREM_MAIN
    main = main_term(kind, H, delta)
    bound = error_envelope(H, delta, epsilon)
    err = exact - main
    return AsymptoticReport(
        exact=exact,
        main=main,
        error=err,
        bound=bound,
        normalized=abs(err) / bound,
    )


@dataclass
class ErrorFit:
    """OLS fit of ln|exact - main| against ln H."""

    exponent: float
    log_constant: float
    r_squared: float
    points: list[tuple[int, float]]
    degenerate: bool = False


def fit_error_exponent(rows: list[tuple[int, float, float]]) -> ErrorFit:
    """Least-squares slope of ln|exact - main| vs ln H over (H, exact, main)
    rows; zero-error rows are dropped, all-zero input is flagged degenerate."""
    points = [(H, abs(exact - main)) for H, exact, main in rows if exact != main]
    if not points:
        return ErrorFit(0.0, -math.inf, 1.0, [], degenerate=True)
    if len({H for H, _ in points}) < 3:
        raise ValueError("fit_error_exponent() needs >= 3 distinct H with nonzero error")
    x = np.log([H for H, _ in points])
    y = np.log([e for _, e in points])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    tss = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if tss == 0 else max(0.0, 1.0 - float(np.sum(resid**2)) / tss)
    return ErrorFit(float(slope), float(intercept), r2, points)


def fit_linear_in_logN(rows: list[tuple[int, float]]) -> tuple[float, float]:
    """Least-squares (a, b) for value/N^2 = a ln N + b over (N, value) rows."""
    if len({N for N, _ in rows}) < 2:
        raise ValueError("fit_linear_in_logN() needs >= 2 distinct N")
    x = np.log([N for N, _ in rows])
    y = np.array([v / (N * N) for N, v in rows], dtype=float)
    a, b = np.polyfit(x, y, 1)
    return float(a), float(b)


@dataclass
class ShiftedDiscrimination:
    """Empirical verdict between the two shifted-convolution main terms."""

    delta: int
    slope: float
    intercept: float
    predicted_log_slope: float
    selected: MainTermKind

    @property
    def consistent_with_nolog(self) -> bool:
        return self.selected is MainTermKind.SHIFTED_NOLOG_CANDIDATE


def discriminate_shifted(
    N_list: list[int],
    delta: int,
    tables: dict[int, TauTable] | None = None,
) -> ShiftedDiscrimination:
    """Fit shifted_sum(N, delta)/N^2 against ln N and compare the slope with
    the log-candidate's prediction (12/pi^2) sigma(delta)/delta.

    The no-log candidate predicts slope 0; whichever prediction the
    fitted slope is closer to is selected.
    """
    if delta < 1:
        raise ValueError(f"discriminate_shifted() requires delta >= 1, got {delta}")
    rows = []
    for N in sorted(set(N_list)):
        table = tables[N] if tables and N in tables else build_tau_table(N)
        rows.append((N, float(shifted_sum(table, delta))))
    a, b = fit_linear_in_logN(rows)
    predicted = COEFF_12 * sigma(delta) / delta
    selected = (
        MainTermKind.SHIFTED_NOLOG_CANDIDATE
        if abs(a) < abs(a - predicted)
        else MainTermKind.SHIFTED_LOG_CANDIDATE
    )
    return ShiftedDiscrimination(
        delta=delta,
        slope=a,
        intercept=b,
        predicted_log_slope=predicted,
        selected=selected,
    )
