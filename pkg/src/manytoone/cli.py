"""Command-line front-end.

    manytoone test DATA.csv --group G --response Y [--method ...] [--alternative ...]
    manytoone simulate SCENARIOS [--runs N] [--seed S] [--workers W]
    manytoone tables TABLE_ID [--runs N | --quick] [--seed S] [--out DIR] [--compare]

Exit codes: 0 success, 1 numeric failure, 2 invalid input or flags.
The seed falls back to the MCT_SEED environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from .data import DataError, load_example, parse_dataset
from .mvt import MvtError
from .procedures import ALTERNATIVES, HC_TYPES, METHODS, ProcedureError, TestSpec, run_test
from .sim import (QUICK_RUNS, SimulationError, parse_scenarios, reproduce_table,
                  run_scenario)
from .tables import RATE_COLUMNS, TABLES

JSON_SCHEMA = 1
EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

TEST_COLUMNS = ("comparison", "estimate", "stderr", "df", "statistic", "p_adjusted",
                "ci_low", "ci_high", "critical_value")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Shared number rendering for every output format."""
    if isinstance(x, str):
        return x
    if x is None:
        return ""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".10g")


def jnum(x):
    """JSON value with the same rounding as :func:`fmt`; infinite bounds become null."""
    if x is None or isinstance(x, (str, bool)):
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(fmt(x))


def render_table(header, rows) -> str:
    cells = [[fmt(c) for c in header]] + [[fmt(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for j, r in enumerate(cells):
        lines.append("  ".join(c.rjust(w) if j and i else c.ljust(w)
                               for i, (c, w) in enumerate(zip(r, widths))).rstrip())
        if j == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(c) for c in r])
    return buf.getvalue()


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get("MCT_SEED")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MCT_SEED must be an integer, got {env!r}") from None


# -- test ---------------------------------------------------------------------

def cmd_test(args) -> int:
    if args.example:
        ds = load_example()
        if args.control is not None:
            ds = type(ds)(ds.records, args.control)
    else:
        if args.data is None:
            raise UsageError("give a CSV path (or '-' for stdin) or --example")
        if not args.group or not args.response:
            raise UsageError("--group and --response are required with a data file")
        try:
            text = sys.stdin.read() if args.data == "-" else Path(args.data).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.data}: {exc.strerror}") from None
        ds = parse_dataset(text, args.group, args.response, args.control)
    seed = _seed(args.seed)
    spec = TestSpec(alternative=args.alternative, alpha=args.alpha, method=args.method,
                    hc_type=args.hc, abs_tol=args.abs_tol, seed=0 if seed is None else seed)
    report = run_test(ds, spec)

    rows = [[c.label, c.estimate, c.stderr, c.df, c.statistic, c.p_adjusted,
             c.ci_low, c.ci_high, c.critical_value] for c in report.comparisons]
    meta = [("method", report.method), ("alternative", report.alternative),
            ("alpha", report.alpha), ("control", ds.control),
            ("critical_value", report.critical_value), ("global_df", report.global_df),
            ("pooled_var", report.pooled_var), ("seed", spec.seed)]
    if args.format == "json":
        doc = {"schema": JSON_SCHEMA, "kind": "test"}
        doc.update({k: jnum(v) for k, v in meta})
        doc["comparisons"] = [dict(zip(TEST_COLUMNS, [r[0]] + [jnum(v) for v in r[1:]]))
                              for r in rows]
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        header = ["method", "alternative", "alpha", "control"] + list(TEST_COLUMNS)
        sys.stdout.write(render_csv(header, [[report.method, report.alternative,
                                              report.alpha, ds.control] + r for r in rows]))
    else:
        out = [f"# {k}: {fmt(v)}" for k, v in meta]
        sys.stdout.write("\n".join(out) + "\n" + render_table(TEST_COLUMNS, rows))
    return EXIT_OK


# -- simulate -----------------------------------------------------------------

def _sim_rows(name, rep):
    rows = []
    for method, r in rep.rates.items():
        rows.append([name, method, r.runs, r.anypairs, r.anypairs_se, *r.elementary])
    return rows


def cmd_simulate(args) -> int:
    try:
        text = sys.stdin.read() if args.scenarios == "-" else Path(args.scenarios).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.scenarios}: {exc.strerror}") from None
    parsed = parse_scenarios(text, runs=args.runs, seed=_seed(args.seed))
    if not parsed:
        raise UsageError("scenario file contains no scenarios")
    failed = False
    rows = []
    kmax = 0
    for name, sc in parsed:
        if isinstance(sc, Exception):
            print(f"error: scenario {name}: {sc}", file=sys.stderr)
            failed = True
            continue
        try:
            rep = run_scenario(sc, workers=args.workers)
        except (SimulationError, ProcedureError, MvtError) as exc:
            print(f"error: scenario {name}: {exc}", file=sys.stderr)
            failed = True
            continue
        kmax = max(kmax, sc.k)
        rows.extend(_sim_rows(name, rep))
    header = ["scenario", "method", "runs", "anypairs", "anypairs_se"] + \
        [f"elementary_{i}" for i in range(1, kmax + 1)]
    rows = [r + [None] * (len(header) - len(r)) for r in rows]
    if args.format == "json":
        doc = {"schema": JSON_SCHEMA, "kind": "simulate",
               "results": [{h: jnum(v) for h, v in zip(header, r) if v is not None}
                           for r in rows]}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "table":
        sys.stdout.write(render_table(header, rows))
    else:
        sys.stdout.write(render_csv(header, rows))
    return EXIT_NUMERIC if failed else EXIT_OK


# -- tables -------------------------------------------------------------------

def cmd_tables(args) -> int:
    ids = list(TABLES) if args.table_id == "all" else [args.table_id]
    if any(t not in TABLES for t in ids):
        raise UsageError(f"unknown table {args.table_id!r}; choose from "
                         f"{', '.join(TABLES)} or all")
    runs = QUICK_RUNS if args.quick else args.runs
    seed = _seed(args.seed)
    seed = 1 if seed is None else seed
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for tid in ids:
        rows = reproduce_table(tid, runs=runs, seed=seed, workers=args.workers,
                               alternative=args.alternative)
        header = list(rows[0].as_dict())
        body = [list(r.as_dict().values()) for r in rows]
        path = out_dir / f"{tid}.csv"
        path.write_text(render_csv(header, body))
        print(f"# {tid}: {len(rows)} rows, {rows[0].runs} runs each, seed {seed} -> {path}")
        sys.stdout.write(render_table(header, body))
        if args.compare:
            design = header[:len(header) - len(RATE_COLUMNS)]
            diff = [[*(r.as_dict()[h] for h in design),
                     *(r.rates[c] - r.published[c] for c in RATE_COLUMNS)] for r in rows]
            print(f"# {tid}: simulated minus published")
            sys.stdout.write(render_table(design + list(RATE_COLUMNS), diff))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="manytoone",
                                description="Many-to-one comparisons robust to variance heterogeneity.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="analyze a long-format CSV dataset")
    t.add_argument("data", nargs="?", help="CSV path, or '-' for stdin")
    t.add_argument("--example", action="store_true",
                   help="use the bundled creatine kinase dataset")
    t.add_argument("--group", help="grouping column")
    t.add_argument("--response", help="response column")
    t.add_argument("--control", help="control group label (default: first seen)")
    t.add_argument("--method", choices=METHODS, default="welch_pi")
    t.add_argument("--alternative", choices=ALTERNATIVES, default="two-sided")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--hc", choices=HC_TYPES, default="HC3", help="sandwich flavour")
    t.add_argument("--abs-tol", type=float, default=1e-4, dest="abs_tol")
    t.add_argument("--seed", type=int)
    t.add_argument("--format", choices=("table", "csv", "json"), default="table")
    t.set_defaults(func=cmd_test)

    s = sub.add_parser("simulate", help="run Monte Carlo scenarios from a file")
    s.add_argument("scenarios", help="scenario file, or '-' for stdin")
    s.add_argument("--runs", type=int, help="default runs for lines without 'runs'")
    s.add_argument("--seed", type=int, help="default seed for lines without 'seed'")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--format", choices=("table", "csv", "json"), default="csv")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("tables", help="reproduce a published simulation table")
    b.add_argument("table_id", help=f"one of {', '.join(TABLES)}, or all")
    b.add_argument("--runs", type=int, help="runs per row (default 5000 for H0, 2000 for H1)")
    b.add_argument("--quick", action="store_true", help=f"{QUICK_RUNS} runs per row")
    b.add_argument("--seed", type=int)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--alternative", choices=ALTERNATIVES, default="less")
    b.add_argument("--out", default=".", help="output directory for <table_id>.csv")
    b.add_argument("--compare", action="store_true",
                   help="also print simulated minus published rates")
    b.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        alpha = getattr(args, "alpha", None)
        if alpha is not None and not 0 < alpha < 1:
            raise UsageError("--alpha must lie in (0, 1)")
        for flag in ("runs", "workers"):
            v = getattr(args, flag, None)
            if v is not None and v < 1:
                raise UsageError(f"--{flag} must be at least 1")
        return args.func(args)
    except (UsageError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ProcedureError, MvtError, SimulationError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
