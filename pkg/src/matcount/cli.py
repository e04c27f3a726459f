"""Command-line surface: single-point counts, parameter sweeps, moment
and lemma regressions, hyperbola diagnostics, and fixture generation.

Subcommands: count, sweep, tau, hyperbola, lemmas, casework, fit,
fixtures.  All randomness flows from --seed through a splitmix-style
64-bit generator, so identical (config, seed) pairs produce
byte-identical output (suppress the timing column with --no-timing).
Exit codes: 0 success, 1 usage error, 2 resource budget exceeded,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .asymptotics import (
    discriminate_shifted,
    fit_error_exponent,
    fit_linear_in_logN,
    report,
)
from .casework import (
    RegionG,
    RegionJ,
    region_sum_G,
    region_sum_G_via_hyperbola,
    region_sum_J,
    region_sum_J_via_hyperbola,
)
from .errors import BudgetError, InvariantError, UsageError
from .exact import naive_count, sign_class_count, SignClass
from .hyperbola import (
    CurveQuery,
    Hyperbolic,
    HyperbolaQuery,
    box_report,
    curve_report,
)
from .lemmas import (
    coprime_count_report,
    divisor_tail,
    gcd_power_report,
    phi_over_square_report,
    phi_ratio_report,
    xy_sum,
)
from .rng import SplitMix64
from .tau_tables import build_tau_table, shifted_sum, tau_moment


def _fmt(x) -> str:
    """Deterministic cell format: integers verbatim, reals at 12 digits."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return "%.12g" % x
    return str(x)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    """argparse variant that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _emit(
    rows: list[dict],
    columns: list[str],
    args,
    extra: dict | None = None,
) -> None:
    """Write rows as CSV or JSON to --output (or stdout)."""
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        text = buf.getvalue()
    else:
        payload = {
            "version": __version__,
            "config": {
                k: v
                for k, v in sorted(vars(args).items())
                if k not in ("func", "config") and v is not None
            },
            "rows": [
                {c: (row[c] if isinstance(row[c], (int, bool)) else float(_fmt(row[c])))
                 if isinstance(row[c], (int, float, bool)) else row[c]
                 for c in columns}
                for row in rows
            ],
        }
        if extra:
            payload.update(extra)
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map_jobs(fn, items, jobs: int):
    """Ordered map, optionally threaded; output order never depends on
    completion order."""
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _cmd_count(args) -> int:
    if args.H is None or args.delta is None:
        raise UsageError("count requires --H and --delta")
    (H,), (delta,) = args.H, args.delta
    rep = report(H, delta, epsilon=args.epsilon)
    for name, value in (
        ("exact", rep.exact),
        ("main", rep.main),
        ("error", rep.error),
        ("normalized_error", rep.normalized),
        ("bound", rep.bound),
    ):
        print(f"{name} = {_fmt(value)}")
    return 0


def _sweep_row(point, epsilon: float, timing: bool) -> dict:
    H, delta = point
    t0 = time.perf_counter()
    rep = report(H, delta, epsilon=epsilon)
    row = {
        "H": H,
        "delta": delta,
        "exact": rep.exact,
        "main": rep.main,
        "error": rep.error,
        "normalized_error": rep.normalized,
        "bound": rep.bound,
    }
    if timing:
        row["wall_time_ms"] = (time.perf_counter() - t0) * 1e3
    return row


def _cmd_sweep(args) -> int:
    if not args.H or args.delta is None:
        raise UsageError("sweep requires --H and --delta lists")
    points = sorted((H, d) for d in args.delta for H in args.H)
    points.sort(key=lambda p: (p[1], p[0]))
    timing = not args.no_timing
    rows = _map_jobs(lambda p: _sweep_row(p, args.epsilon, timing), points, args.jobs)
    columns = ["H", "delta", "exact", "main", "error", "normalized_error", "bound"]
    if timing:
        columns.append("wall_time_ms")
    extra = None
    if args.fit:
        fits = {}
        for delta in sorted(set(args.delta)):
            sub = [
                (r["H"], float(r["exact"]), r["main"])
                for r in rows
                if r["delta"] == delta
            ]
            try:
                fit = fit_error_exponent(sub)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            fits[str(delta)] = {
                "exponent": fit.exponent,
                "r_squared": fit.r_squared,
                "degenerate": fit.degenerate,
            }
            print(
                f"fit delta={delta}: exponent={_fmt(fit.exponent)} "
                f"r2={_fmt(fit.r_squared)}",
                file=sys.stderr,
            )
        extra = {"fits": fits}
    _emit(rows, columns, args, extra)
    return 0


def _cmd_tau(args) -> int:
    if not args.N:
        raise UsageError("tau requires --N")
    k = args.k
    tables = {N: build_tau_table(N) for N in sorted(set(args.N))}
    extra: dict = {}
    if args.delta:
        # shifted-convolution mode: sums tau_N(n) tau_N(n+delta) and the
        # log vs no-log main-term discrimination
        rows = []
        extra["discrimination"] = {}
        for delta in args.delta:
            verdict = discriminate_shifted(list(tables), delta, tables=tables)
            for N, table in tables.items():
                rows.append(
                    {"N": N, "delta": delta, "value": shifted_sum(table, delta)}
                )
            extra["discrimination"][str(delta)] = {
                "slope": verdict.slope,
                "predicted_log_slope": verdict.predicted_log_slope,
                "selected": verdict.selected.value,
            }
            print(
                f"delta={delta}: slope={_fmt(verdict.slope)} vs log-candidate "
                f"{_fmt(verdict.predicted_log_slope)} -> {verdict.selected.value}",
                file=sys.stderr,
            )
        rows.sort(key=lambda r: (r["delta"], r["N"]))
        _emit(rows, columns=["N", "delta", "value"], args=args, extra=extra)
        return 0
    rows = [
        {"N": N, "k": k, "moment": tau_moment(table, k)}
        for N, table in tables.items()
    ]
    if len(rows) >= 2 and k >= 2:
        a, b = fit_linear_in_logN([(r["N"], float(r["moment"])) for r in rows])
        extra["fit"] = {"a": a, "b": b}
        print(f"fit: moment/N^2 = {_fmt(a)}*ln N + {_fmt(b)}", file=sys.stderr)
    elif k == 1:
        # sum tau_N = N^2 identically, coefficient 1 with no log term
        extra["fit"] = {"a": 0.0, "b": 1.0}
    _emit(rows, columns=["N", "k", "moment"], args=args, extra=extra or None)
    return 0


def random_hyperbola_queries(
    seed: int, n: int
) -> list[tuple[HyperbolaQuery, CurveQuery]]:
    """Seeded query set: q <= 500, box sides X, Y <= 2000, 1 <= |K| <= 10^4,
    and a hyperbolic curve bound with f(left endpoint) <= 2000."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(n):
        q = rng.randint(1, 500)
        X = rng.randint(1, 2000)
        Y = rng.randint(1, 2000)
        K = rng.randint(1, 10**4) * (1 if rng.below(2) == 0 else -1)
        U = rng.below(1000)
        V = rng.below(1000)
        box = HyperbolaQuery(K=K, q=q, U=U, V=V, X=X, Y=Y)
        Uc = rng.below(1000)
        A = rng.randint(1, (Uc + 1) * 2000)
        curve = CurveQuery(K=K, q=q, U=Uc, X=X, bound=Hyperbolic(A))
        out.append((box, curve))
    return out


def _hyperbola_rows(pair, epsilon: float) -> list[dict]:
    box, curve = pair
    rows = []
    b = box_report(box, epsilon)
    rows.append(
        {
            "kind": "box",
            "K": box.K, "q": box.q, "U": box.U, "V": box.V, "X": box.X, "Y": box.Y,
            "A": 0,
            "exact": b.exact, "main": b.main, "error": b.error,
            "bound": b.bound, "normalized": b.normalized,
        }
    )
    c = curve_report(curve, epsilon)
    rows.append(
        {
            "kind": "curve",
            "K": curve.K, "q": curve.q, "U": curve.U, "V": 0, "X": curve.X, "Y": 0,
            "A": curve.bound.A,
            "exact": c.exact, "main": c.main, "error": c.error,
            "bound": c.bound, "normalized": c.normalized,
        }
    )
    return rows


def _cmd_hyperbola(args) -> int:
    n = args.N[0] if args.N else 500
    queries = random_hyperbola_queries(args.seed, n)
    nested = _map_jobs(lambda p: _hyperbola_rows(p, args.epsilon), queries, args.jobs)
    rows = [row for pair in nested for row in pair]
    worst = {
        kind: max((r["normalized"] for r in rows if r["kind"] == kind), default=0.0)
        for kind in ("box", "curve")
    }
    for kind in ("box", "curve"):
        print(f"max normalized ({kind}) = {_fmt(worst[kind])}", file=sys.stderr)
    columns = ["kind", "K", "q", "U", "V", "X", "Y", "A",
               "exact", "main", "error", "bound", "normalized"]
    _emit(rows, columns, args, extra={"max_normalized": worst})
    return 0


def lemma_grid_rows(constant: float = 1.0) -> list[dict]:
    """The logarithmic regression grid for every lemma evaluator."""
    rows = []

    def add(lemma, variant, X, Y, r, rep):
        rows.append(
            {
                "lemma": lemma, "variant": variant, "X": X, "Y": Y, "r": r,
                "exact": rep.exact, "main": rep.main, "error": rep.error,
                "envelope": rep.envelope, "ratio": rep.ratio,
            }
        )

    for X in (100, 1000, 10000):
        add("gcd_power", 0, X, 720, 1, gcd_power_report(X, 720, 0.5, 1.0))
        add("phi_ratio", 0, X, 0, 1, phi_ratio_report(X, constant))
        add("phi_over_square", 0, X, 0, 1, phi_over_square_report(X, constant))
        add("coprime", 0, X, 360, 1, coprime_count_report(X, 360))
        for r in (1, 2, 5, 10):
            add("xy_sum", 1, X, 0, r, xy_sum(1, X, 0, r, constant))
            add("xy_sum", 2, X, X // 2, r, xy_sum(2, X, X // 2, r, constant))
            add("xy_sum", 3, X, X // 2, r, xy_sum(3, X, X // 2, r, constant))
            add("xy_sum", 4, X, X, r, xy_sum(4, X, X, r, constant))
    return rows


def _cmd_lemmas(args) -> int:
    rows = lemma_grid_rows()
    worst = max(r["ratio"] for r in rows)
    print(f"max envelope ratio = {_fmt(worst)}", file=sys.stderr)
    columns = ["lemma", "variant", "X", "Y", "r",
               "exact", "main", "error", "envelope", "ratio"]
    _emit(rows, columns, args, extra={"max_ratio": worst})
    return 0


def _cmd_casework(args) -> int:
    if args.H is None or args.delta is None:
        raise UsageError("casework requires --H and --delta")
    (H,), (delta,) = args.H, args.delta
    if delta < 1:
        raise UsageError("casework requires delta >= 1")
    rows = []
    g_total = 0
    for region in RegionG:
        direct = region_sum_G(H, delta, region)
        hyper = region_sum_G_via_hyperbola(H, delta, region, check=True)
        if direct != hyper:
            raise InvariantError(
                f"G region {region.name}: direct {direct} != hyperbola {hyper}"
            )
        g_total += direct
        rows.append({"problem": "G", "region": region.name, "count": direct})
    j_total = 0
    for region in RegionJ:
        direct = region_sum_J(H, delta, region)
        hyper = region_sum_J_via_hyperbola(H, delta, region, check=True)
        if direct != hyper:
            raise InvariantError(
                f"J region {region.name}: direct {direct} != hyperbola {hyper}"
            )
        j_total += direct
        rows.append({"problem": "J", "region": region.name, "count": direct})
    c111 = sign_class_count(H, delta, SignClass(1, 1, 1))
    c11m1 = sign_class_count(H, delta, SignClass(1, 1, -1))
    if g_total != c111:
        raise InvariantError(f"G total {g_total} != sign class (1,1,1) {c111}")
    if j_total != c11m1:
        raise InvariantError(f"J total {j_total} != sign class (1,1,-1) {c11m1}")
    rows.append({"problem": "G", "region": "TOTAL", "count": g_total})
    rows.append({"problem": "J", "region": "TOTAL", "count": j_total})
    _emit(rows, columns=["problem", "region", "count"], args=args)
    return 0


def _cmd_fit(args) -> int:
    if not args.input:
        raise UsageError("fit requires an input CSV path")
    with open(args.input, newline="") as fh:
        reader = csv.DictReader(fh)
        data = [
            (int(row["H"]), float(row["exact"]), float(row["main"]))
            for row in reader
        ]
    try:
        fit = fit_error_exponent(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"exponent = {_fmt(fit.exponent)}")
    print(f"log_constant = {_fmt(fit.log_constant)}")
    print(f"r_squared = {_fmt(fit.r_squared)}")
    print(f"degenerate = {fit.degenerate}")
    return 0


def _cmd_fixtures(args) -> int:
    rows = []
    for H in (1, 2, 3):
        for delta in range(-2 * H * H, 2 * H * H + 1):
            rows.append({"H": H, "delta": delta, "count": naive_count(H, delta)})
    rows.sort(key=lambda r: (r["H"], r["delta"]))
    _emit(rows, columns=["H", "delta", "count"], args=args)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="matcount", description=__doc__)
    parser.add_argument("--config", help="JSON file of flag defaults")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--H", type=_int_list, default=None)
        p.add_argument("--delta", type=_int_list, default=None)
        p.add_argument("--N", type=_int_list, default=None)
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--epsilon", type=float, default=0.1)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--no-timing", action="store_true")
        p.add_argument("--config", help="JSON file of flag defaults")

    for name, fn in (
        ("count", _cmd_count),
        ("sweep", _cmd_sweep),
        ("tau", _cmd_tau),
        ("hyperbola", _cmd_hyperbola),
        ("lemmas", _cmd_lemmas),
        ("casework", _cmd_casework),
        ("fit", _cmd_fit),
        ("fixtures", _cmd_fixtures),
    ):
        p = sub.add_parser(name)
        common(p)
        if name == "sweep":
            p.add_argument("--fit", action="store_true")
        if name == "fit":
            p.add_argument("input", nargs="?")
        p.set_defaults(func=fn)
    return parser


def _apply_config(args, argv: list[str]) -> None:
    """Fill flags not given on the command line from a JSON config file."""
    if not args.config:
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    given = {tok.split("=", 1)[0].lstrip("-").replace("-", "_")
             for tok in argv if tok.startswith("--")}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest in given or not hasattr(args, dest):
            continue
        if dest in ("H", "delta", "N") and value is not None:
            value = [int(v) for v in value] if isinstance(value, list) else _int_list(str(value))
        setattr(args, dest, value)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required (see --help)")
        _apply_config(args, argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except (UsageError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
