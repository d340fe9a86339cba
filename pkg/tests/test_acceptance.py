"""Acceptance gate. Each test prints one [PASS]/[FAIL] line and the run ends
with a summary section listing all of them.

Tolerances:
  AC1  +/-0.003 on each adjusted p (+/-0.0005 for the two smallest Welch values), < 5 s
  AC2  5000 runs, seed 1: +/-0.012 (balanced rows), +/-0.015 (unbalanced row)
  AC3  2000 runs, seed 1: +/-0.03
  AC4  >= 95% of 200 problems within 3 combined standard errors of a 1e6-draw
       brute-force oracle; q = 1 within 1e-6; identity factorization within 2*abs_tol
  AC5  property suites pass when run on their own
  AC6  repeated CLI invocations are byte-identical for any worker count
"""

import csv
import math
import os
import subprocess
import sys
import time
from pathlib import Path
from statistics import NormalDist

import numpy as np
import pytest

from manytoone.data import load_example, summarize
from manytoone.mvt import rectangle_prob, t_cdf
from manytoone.procedures import TestSpec, dunnett_original, welch_pi
from manytoone.sim import run_scenario, table_scenarios
from manytoone.tables import TABLES

from oracles import mc_rectangle, random_correlation

pytestmark = pytest.mark.slow

TESTS = Path(__file__).parent
CLI = [sys.executable, "-m", "manytoone"]


def cli(*argv, **kw):
    env = {k: v for k, v in os.environ.items() if k != "MCT_SEED"}
    return subprocess.run([*CLI, *argv], capture_output=True, check=False, env=env, **kw)


def within(got, want, tol):
    return all(abs(g - w) <= t for g, w, t in zip(got, want, tol))


def fmt(values):
    return "(" + ", ".join(f"{v:.4f}" for v in values) + ")"


def test_ac1_creatine_kinase_pvalues(acceptance_log):
    start = time.perf_counter()
    s = summarize(load_example())
    spec = TestSpec(alternative="greater")
    orig = dunnett_original(s, spec).p_values
    welch = welch_pi(s, spec).p_values
    elapsed = time.perf_counter() - start
    want_o = (0.154, 0.407, 0.221, 0.036, 0.002)
    want_w = (0.406, 0.108, 0.019, 0.0002, 0.0017)
    ok = (within(orig, want_o, [0.003] * 5)
          and within(welch, want_w, [0.003, 0.003, 0.003, 5e-4, 5e-4])
          and elapsed < 5)
    acceptance_log("AC1 creatine kinase adjusted p-values", ok,
                   f"original={fmt(orig)} welch_pi={fmt(welch)} time={elapsed:.2f}s")
    assert ok


def test_ac2_h0_small_table(acceptance_log, tmp_path):
    start = time.perf_counter()
    proc = cli("tables", "h0_small", "--runs", "5000", "--seed", "1", "--out", str(tmp_path))
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stderr
    rows = list(csv.DictReader((tmp_path / "h0_small.csv").open()))
    shape_ok = len(rows) == 4 and len(rows[0]) == 10 + 16
    layout = [(tuple(float(r[f"s{i}"]) for i in range(1, 5)), int(r["n1"])) for r in rows]
    assert layout == [((1, 1, 1, 1), 6), ((1, 1, 1, 4), 6), ((1, 1, 1, 1), 9), ((1, 1, 1, 4), 9)]
    homo, hetero, _, unbal = rows

    checks = [(f"homo {m}", float(homo[m]), w, 0.012)
              for m, w in (("Du0", 0.049), ("DuS", 0.051), ("DuH", 0.049), ("W0", 0.043))]
    checks += [("hetero Du0", float(hetero["Du0"]), 0.080, 0.012),
               ("hetero DuH", float(hetero["DuH"]), 0.052, 0.012),
               ("unbalanced Du0", float(unbal["Du0"]), 0.102, 0.015)]
    for name, got, want, tol in checks:
        acceptance_log(f"AC2 H0 small {name}", abs(got - want) <= tol,
                       f"got={got:.4f} want={want}+/-{tol}")
    acceptance_log("AC2 H0 small table shape and runtime", shape_ok and elapsed < 600,
                   f"rows={len(rows)} time={elapsed:.1f}s")
    assert shape_ok and elapsed < 600
    assert all(abs(got - want) <= tol for _, got, want, tol in checks)


def _table_row(table_id, means, sds):
    for i, (mu, sd, *_rest) in enumerate(TABLES[table_id]):
        if tuple(mu) == means and tuple(sd) == sds:
            return table_scenarios(table_id, runs=2000, seed=1)[i]
    raise LookupError((table_id, means, sds))


def test_ac3_h1_distortion(acceptance_log):
    bal = run_scenario(_table_row("h1_balanced", (5, 5, 5, 3), (1, 1, 4, 1)))
    mod = run_scenario(_table_row("h1_moderate", (5, 5, 4, 4), (1, 4, 1, 1)))
    checks = [("balanced Du0 d3", bal.rates["original"].elementary[2], 0.228),
              ("balanced DuH h3", bal.rates["welch_pi"].elementary[2], 0.833),
              ("moderate Du0 d2", mod.rates["original"].elementary[1], 0.122),
              ("moderate DuS S2", mod.rates["sandwich"].elementary[1], 0.841)]
    for name, got, want in checks:
        acceptance_log(f"AC3 H1 {name}", abs(got - want) <= 0.03,
                       f"got={got:.4f} want={want}+/-0.03")
    assert all(abs(got - want) <= 0.03 for _, got, want in checks)


def _random_bounds(q, rng):
    lower = rng.uniform(-2.5, 1.0, q)
    upper = lower + rng.uniform(0.3, 4.0, q)
    lower[rng.random(q) < 0.3] = -np.inf
    upper[rng.random(q) < 0.3] = np.inf
    return lower, upper


def test_ac4_mvt_oracle_suite(acceptance_log):
    rng = np.random.default_rng(20261016)
    dfs = (3.0, 7.5, 20.0, math.inf)
    hits, worst = 0, 0.0
    for i in range(200):
        q = int(rng.integers(1, 7))
        corr = random_correlation(q, rng) if q > 1 else np.eye(1)
        df = dfs[i % 4]
        lower, upper = _random_bounds(q, rng)
        res = rectangle_prob(corr, df, lower, upper, seed=i)
        p_mc, se_mc = mc_rectangle(corr, df, lower, upper, n=10**6, rng=rng)
        z = abs(res.prob - p_mc) / math.hypot(se_mc, res.err_est)
        hits += z <= 3
        worst = max(worst, z)
    frac = hits / 200
    acceptance_log("AC4 mvt vs brute-force Monte Carlo", frac >= 0.95,
                   f"{hits}/200 within 3 SE (worst z={worst:.2f})")

    q1_err = 0.0
    for df in dfs:
        for lo, hi in ((-1.3, 0.4), (-np.inf, 1.7), (0.25, np.inf), (-4.0, 4.0)):
            p = rectangle_prob(np.eye(1), df, lo, hi).prob
            q1_err = max(q1_err, abs(p - (t_cdf(hi, df) - t_cdf(lo, df))))
    acceptance_log("AC4 q=1 univariate agreement", q1_err <= 1e-6, f"max err={q1_err:.2e}")

    nd = NormalDist()
    fac_err = 0.0
    abs_tol = 1e-4
    for q in (2, 3, 5):
        lower, upper = _random_bounds(q, rng)
        want = math.prod((nd.cdf(h) if np.isfinite(h) else 1.0)
                         - (nd.cdf(l) if np.isfinite(l) else 0.0)
                         for l, h in zip(lower, upper))
        got = rectangle_prob(np.eye(q), math.inf, lower, upper, abs_tol=abs_tol).prob
        fac_err = max(fac_err, abs(got - want))
    acceptance_log("AC4 identity factorization", fac_err <= 2 * abs_tol,
                   f"max err={fac_err:.2e} bound={2 * abs_tol:g}")
    assert frac >= 0.95 and q1_err <= 1e-6 and fac_err <= 2 * abs_tol


PROPERTY_SUITES = {
    "contrast validity": ("test_contrasts.py", "validate or zero_sum or dunnett_k"),
    "correlation closed form": ("test_contrasts.py", "closed_form_equivalence"),
    "Welch df bounds and closed forms": ("test_procedures.py", "welch_df"),
    "p/CI compatibility band": ("test_procedures.py", "compatibility"),
    "scale equivariance": ("test_procedures.py", "scale_equivariance"),
    "k=1 reductions": ("test_procedures.py", "k1_"),
    "Bonferroni dominates plug-in": ("test_procedures.py", "bonferroni_dominates"),
}


@pytest.mark.parametrize("suite", list(PROPERTY_SUITES))
def test_ac5_property_suites(acceptance_log, suite):
    path, expr = PROPERTY_SUITES[suite]
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(TESTS / path), "-k", expr],
                          capture_output=True, text=True, check=False, cwd=TESTS.parent)
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    ok = proc.returncode == 0 and "passed" in summary
    acceptance_log(f"AC5 {suite}", ok, summary)
    assert ok, proc.stdout


def test_ac6_cli_determinism(acceptance_log, tmp_path):
    scen = tmp_path / "scen.txt"
    scen.write_text("mu=5,5,5,3 sd=1,1,4,1 n=6,6,6,6 runs=400 seed=7\n"
                    "mu=5,5,5,5 sd=1,1,1,4 n=9,5,5,5 runs=400\n")
    outputs = {}
    for workers in ("1", "1", "3"):
        proc = cli("simulate", str(scen), "--seed", "11", "--workers", workers)
        assert proc.returncode == 0, proc.stderr
        outputs.setdefault("simulate", []).append(proc.stdout)
    for i in range(2):
        proc = cli("test", "--example", "--method", "welch_pi", "--format", "json",
                   "--seed", "4")
        outputs.setdefault("test", []).append(proc.stdout)
    files = []
    for i, workers in enumerate(("1", "2")):
        out = tmp_path / f"t{i}"
        proc = cli("tables", "h0_moderate", "--runs", "300", "--seed", "9",
                   "--workers", workers, "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        files.append((out / "h0_moderate.csv").read_bytes())
    outputs["tables"] = files
    ok = all(len(set(v)) == 1 for v in outputs.values())
    acceptance_log("AC6 CLI determinism across repeats and workers", ok,
                   ", ".join(f"{k}: {len(v)} runs, {len(set(v))} distinct"
                             for k, v in outputs.items()))
    assert ok
