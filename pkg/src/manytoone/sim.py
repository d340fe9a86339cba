"""Monte Carlo size and power of the many-to-one procedures.

Group ``g`` in run ``r`` draws its normal sample from a Philox stream keyed
by the scenario seed with counter block ``(r, g)``, so every run is
reproducible on its own. Results do not depend on the method set, the chunk
layout or the number of worker processes.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import numpy as np

from .procedures import (ALTERNATIVES, METHODS, TABLE_LABELS, ProcedureError,
                         original_setup, reject, sandwich_setup, welch_setup)
from .tables import RATE_COLUMNS, TABLES

SIM_ABS_TOL = 5e-4
DEFAULT_RUNS = {"h0_small": 5000, "h0_moderate": 5000, "h1_balanced": 2000,
                "h1_unbalanced": 2000, "h1_moderate": 2000}
QUICK_RUNS = 500
_MASK64 = (1 << 64) - 1


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Scenario:
    means: tuple[float, ...]
    sds: tuple[float, ...]
    ns: tuple[int, ...]
    alpha: float = 0.05
    alternative: str = "less"
    runs: int = 1000
    seed: int = 0
    methods: tuple[str, ...] = METHODS
    hc_type: str = "HC3"
    name: str = ""

    def __post_init__(self):
        for attr, conv in (("means", float), ("sds", float), ("ns", int)):
            object.__setattr__(self, attr, tuple(conv(v) for v in getattr(self, attr)))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not (len(self.means) == len(self.sds) == len(self.ns)):
            raise ValueError("means, sds and ns must have equal length")
        if len(self.ns) < 2:
            raise ValueError("need a control and at least one treatment")
        if any(s <= 0 for s in self.sds):
            raise ValueError("standard deviations must be positive")
        if any(n < 2 for n in self.ns):
            raise ValueError("group sizes must be at least 2")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.alternative not in ALTERNATIVES:
            raise ValueError(f"alternative must be one of {ALTERNATIVES}")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise ValueError(f"unknown or empty method list: {bad or '(empty)'}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @property
    def k(self) -> int:
        return len(self.ns) - 1


@dataclass(frozen=True)
class MethodRates:
    method: str
    runs: int
    anypairs: float
    elementary: tuple[float, ...]
    anypairs_se: float = field(init=False)
    elementary_se: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "anypairs_se", mc_se(self.anypairs, self.runs))
        object.__setattr__(self, "elementary_se",
                           tuple(mc_se(r, self.runs) for r in self.elementary))


@dataclass(frozen=True)
class SimReport:
    scenario: Scenario
    rates: dict[str, MethodRates]

    @property
    def runs_used(self) -> int:
        return self.scenario.runs


def mc_se(rate: float, runs: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / runs)


def draw_groups(sc: Scenario, run: int) -> list[np.ndarray]:
    """Normal samples of run ``run``; group g uses Philox counter block (run, g)."""
    out = []
    for g, (mu, sd, n) in enumerate(zip(sc.means, sc.sds, sc.ns)):
        bitgen = np.random.Philox(key=sc.seed, counter=[0, 0, g, run])
        out.append(mu + sd * np.random.Generator(bitgen).standard_normal(n))
    return out


def _integration_seed(seed: int, run: int) -> int:
    return (seed ^ (0x9E3779B97F4A7C15 * (run + 1))) & _MASK64


def decide_run(sc: Scenario, run: int, abs_tol: float = SIM_ABS_TOL) -> dict[str, np.ndarray]:
    """Rejection vectors of every requested method for one simulated dataset."""
    samples = draw_groups(sc, run)
    ns = np.array(sc.ns, dtype=float)
    means = np.array([y.mean() for y in samples])
    var = np.array([y.var(ddof=1) for y in samples])
    iseed = _integration_seed(sc.seed, run)
    out = {}
    for method in sc.methods:
        if method == "original":
            setup = original_setup(ns, means, var)
        elif method == "sandwich":
            if sc.hc_type == "HC3":
                diag = var / (ns - 1)
            else:
                diag = var * (ns - 1) / ns ** 2
            setup = sandwich_setup(ns, means, np.diag(diag))
        elif method == "welch_pi":
            setup = welch_setup(ns, means, var)
        else:
            setup = welch_setup(ns, means, var, with_corr=False)
        out[method] = reject(setup, sc.alternative, sc.alpha, abs_tol, iseed)
    return out


def _tally(sc: Scenario, start: int, stop: int, abs_tol: float) -> np.ndarray:
    """Counts per method: column 0 any rejection, columns 1..k per comparison."""
    counts = np.zeros((len(sc.methods), sc.k + 1), dtype=np.int64)
    for run in range(start, stop):
        try:
            decisions = decide_run(sc, run, abs_tol)
        except ProcedureError as exc:
            # continuous draws make degenerate samples a probability-zero event
            raise SimulationError(f"run {run}: {exc}") from exc
        for m, method in enumerate(sc.methods):
            rej = decisions[method]
            counts[m, 0] += bool(rej.any())
            counts[m, 1:] += rej
    return counts


def run_scenario(sc: Scenario, workers: int = 1, abs_tol: float = SIM_ABS_TOL,
                 chunk: int = 250) -> SimReport:
    """Estimate any-pairs and elementary rejection rates for ``sc``.

    Under equal means the any-pairs rate is the empirical FWER; otherwise it
    is the any-pairs power and the elementary rates are per-pairs power.
    """
    bounds = [(s, min(s + chunk, sc.runs)) for s in range(0, sc.runs, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_tally, *zip(*[(sc, a, b, abs_tol) for a, b in bounds])))
    else:
        parts = [_tally(sc, a, b, abs_tol) for a, b in bounds]
    counts = np.sum(parts, axis=0)
    rates = {}
    for m, method in enumerate(sc.methods):
        rates[method] = MethodRates(method, sc.runs, counts[m, 0] / sc.runs,
                                    tuple(float(c) / sc.runs for c in counts[m, 1:]))
    return SimReport(sc, rates)


@dataclass(frozen=True)
class TableRow:
    means: tuple[float, ...]
    sds: tuple[float, ...]
    n_control: int
    n_treatment: int
    rates: dict[str, float]
    published: dict[str, float]
    runs: int

    def as_dict(self) -> dict:
        d = {f"mu{i + 1}": m for i, m in enumerate(self.means)}
        d.update(n1=self.n_control, ni=self.n_treatment)
        d.update({f"s{i + 1}": s for i, s in enumerate(self.sds)})
        d.update(self.rates)
        return d


def table_scenarios(table_id: str, runs: int | None = None, seed: int = 1,
                    alternative: str = "less", alpha: float = 0.05) -> list[Scenario]:
    if table_id not in TABLES:
        raise KeyError(f"unknown table {table_id!r}; choose from {', '.join(TABLES)}")
    runs = DEFAULT_RUNS[table_id] if runs is None else runs
    out = []
    for i, (mu, sd, n1, ni, _) in enumerate(TABLES[table_id]):
        row_seed = int(np.random.SeedSequence([seed, i]).generate_state(1, np.uint64)[0])
        out.append(Scenario(mu, sd, (n1,) + (ni,) * (len(mu) - 1), alpha=alpha,
                            alternative=alternative, runs=runs, seed=row_seed,
                            name=f"{table_id}[{i}]"))
    return out


def reproduce_table(table_id: str, runs: int | None = None, seed: int = 1,
                    workers: int = 1, alternative: str = "less",
                    alpha: float = 0.05) -> list[TableRow]:
    """Simulate every row of a published k = 3 table.

    Row ``i`` uses a seed derived from ``(seed, i)``. Rates are laid out in
    the published column order (Du0, d1..d3, DuS, S1..S3, DuH, h1..h3,
    W0, w1..w3).
    """
    rows = []
    for sc, spec in zip(table_scenarios(table_id, runs, seed, alternative, alpha),
                        TABLES[table_id]):
        rep = run_scenario(sc, workers=workers)
        rates: dict[str, float] = {}
        for method in METHODS:
            r = rep.rates[method]
            rates[TABLE_LABELS[method]] = r.anypairs
            prefix = RATE_COLUMNS[RATE_COLUMNS.index(TABLE_LABELS[method]) + 1][0]
            for i, e in enumerate(r.elementary, start=1):
                rates[f"{prefix}{i}"] = e
        rows.append(TableRow(sc.means, sc.sds, sc.ns[0], sc.ns[1], rates,
                             dict(zip(RATE_COLUMNS, spec[4])), sc.runs))
    return rows



_VECTOR_KEYS = {"mu": "means", "sd": "sds", "n": "ns"}


def _split_methods(value: str) -> tuple[str, ...]:
    return tuple(m for m in value.replace(";", " ").replace("+", " ")
                 .replace(",", " ").split() if m)


def _scenario_from_fields(fields: dict[str, str], defaults: dict) -> Scenario:
    vectors: dict[str, dict[int, str]] = {v: {} for v in _VECTOR_KEYS.values()}
    kw = dict(defaults)
    for key, value in fields.items():
        key = key.strip().lower()
        value = value.strip()
        if not value:
            continue
        head = key.rstrip("0123456789")
        if head in _VECTOR_KEYS:
            attr = _VECTOR_KEYS[head]
            if head == key:
                vectors[attr].update(enumerate(value.split(",")))
            else:
                vectors[attr][int(key[len(head):])] = value
        elif key in ("alpha",):
            kw["alpha"] = float(value)
        elif key in ("runs", "seed"):
            kw[key] = int(value)
        elif key == "alternative":
            kw["alternative"] = value
        elif key == "methods":
            kw["methods"] = _split_methods(value)
        elif key in ("hc", "hc_type"):
            kw["hc_type"] = value.upper()
        elif key == "name":
            kw["name"] = value
        else:
            raise ValueError(f"unknown scenario field {key!r}")
    for attr, conv in (("means", float), ("sds", float), ("ns", int)):
        idx = vectors[attr]
        if not idx:
            raise ValueError(f"scenario lacks {attr}")
        if sorted(idx) != list(range(len(idx))):
            raise ValueError(f"{attr} indices must run 0..k without gaps")
        kw[attr] = tuple(conv(idx[i]) for i in range(len(idx)))
    return Scenario(**kw)


def parse_scenarios(text: str, runs: int | None = None,
                    seed: int | None = None) -> list[tuple[str, Scenario | Exception]]:
    """Parse a scenario file: one scenario per line, either whitespace-separated
    ``key=value`` tokens (vectors comma-separated, e.g. ``mu=5,5,5,5``) or CSV
    with a header such as ``mu0,...,sd0,...,n0,...,alpha,alternative,runs,seed,methods``.

    Lines that fail to parse are returned as exceptions so callers can report
    them and continue. ``runs`` and ``seed`` act as defaults for lines that do
    not set them.
    """
    defaults = {}
    if runs is not None:
        defaults["runs"] = runs
    if seed is not None:
        defaults["seed"] = seed
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        return []
    out: list[tuple[str, Scenario | Exception]] = []
    keyvalue = "=" in lines[0][1]
    if keyvalue:
        for lineno, line in lines:
            name = f"line{lineno}"
            try:
                fields = dict(tok.split("=", 1) for tok in line.split())
                sc = _scenario_from_fields(fields, {**defaults, "name": name})
                out.append((sc.name, sc))
            except (ValueError, TypeError) as exc:
                out.append((name, exc))
        return out
    reader = csv.reader([ln for _, ln in lines])
    header = [h.strip() for h in next(reader)]
    for (lineno, _), row in zip(lines[1:], reader):
        name = f"line{lineno}"
        try:
            if len(row) != len(header):
                raise ValueError(f"expected {len(header)} fields, got {len(row)}")
            sc = _scenario_from_fields(dict(zip(header, row)), {**defaults, "name": name})
            out.append((sc.name, sc))
        except (ValueError, TypeError) as exc:
            out.append((name, exc))
    return out
