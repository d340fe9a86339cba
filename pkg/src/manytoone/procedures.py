"""Many-to-one max-T procedures: the pooled-variance Dunnett test and three
modifications for heterogeneous variances.

``original``          pooled mean square, common residual df
``sandwich``          HC3 (or HC0) covariance of the group means, common residual df
``welch_pi``          per-comparison Welch variance and df, variance-weighted correlation
``bonferroni_welch``  Welch t-tests with Bonferroni adjustment
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import mvt
from .contrasts import correlation_from_mean_cov, dunnett_contrasts
from .data import Dataset, GroupSummary, summarize

METHODS = ("original", "sandwich", "welch_pi", "bonferroni_welch")
ALTERNATIVES = ("less", "greater", "two-sided")
HC_TYPES = ("HC3", "HC0")
TABLE_LABELS = {"original": "Du0", "sandwich": "DuS", "welch_pi": "DuH",
                "bonferroni_welch": "W0"}


class ProcedureError(ValueError):
    pass


@dataclass(frozen=True)
class TestSpec:
    alternative: str = "two-sided"
    alpha: float = 0.05
    method: str = "original"
    hc_type: str = "HC3"
    abs_tol: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.alternative not in ALTERNATIVES:
            raise ProcedureError(f"alternative must be one of {ALTERNATIVES}, "
                                 f"got {self.alternative!r}")
        if self.method not in METHODS:
            raise ProcedureError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.hc_type not in HC_TYPES:
            raise ProcedureError(f"hc_type must be one of {HC_TYPES}, got {self.hc_type!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ProcedureError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.abs_tol > 0:
            raise ProcedureError("abs_tol must be positive")


# Instances are not pytest test classes despite the name.
TestSpec.__test__ = False


@dataclass(frozen=True)
class ComparisonResult:
    label: str
    estimate: float
    stderr: float
    df: float
    statistic: float
    p_adjusted: float
    ci_low: float
    ci_high: float
    critical_value: float


@dataclass(frozen=True)
class TestReport:
    """Outcome of one procedure.

    ``critical_value`` is the common critical value for the common-df methods
    and the largest per-comparison value for the Welch-type methods.
    """

    method: str
    alternative: str
    alpha: float
    comparisons: list[ComparisonResult]
    critical_value: float
    global_df: float | None = None
    pooled_var: float | None = None
    correlation: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k != "correlation"}
        d["comparisons"] = [asdict(c) for c in self.comparisons]
        if self.correlation is not None:
            d["correlation"] = self.correlation.tolist()
        return d

    @property
    def p_values(self) -> np.ndarray:
        return np.array([c.p_adjusted for c in self.comparisons])

    @property
    def statistics(self) -> np.ndarray:
        return np.array([c.statistic for c in self.comparisons])


TestReport.__test__ = False


@dataclass(frozen=True)
class MaxTSetup:
    """Everything a max-T decision needs: per-comparison estimates, standard
    errors, statistics, df and the joint correlation (``None`` for Bonferroni).
    """

    estimate: np.ndarray
    stderr: np.ndarray
    df: np.ndarray
    corr: np.ndarray | None
    global_df: float | None = None
    pooled_var: float | None = None

    @property
    def statistic(self) -> np.ndarray:
        return self.estimate / self.stderr

    @property
    def k(self) -> int:
        return len(self.estimate)


def welch_df(var0: float, n0: int, var_i: float, n_i: int) -> float:
    """Welch-Satterthwaite df of the difference of two independent means."""
    if n0 < 2 or n_i < 2:
        raise ProcedureError("Welch df needs at least 2 observations per group")
    a, b = var0 / n0, var_i / n_i
    if a + b <= 0:
        raise ProcedureError("Welch df undefined: both group variances are zero")
    return (a + b) ** 2 / (a * a / (n0 - 1) + b * b / (n_i - 1))


def _arrays(summaries: Sequence[GroupSummary]):
    if len(summaries) < 2:
        raise ProcedureError("need a control and at least one treatment group")
    ns = np.array([s.n for s in summaries], dtype=float)
    means = np.array([s.mean for s in summaries], dtype=float)
    var = np.array([s.var for s in summaries], dtype=float)
    return ns, means, var


def original_setup(ns, means, var) -> MaxTSetup:
    ns, means, var = (np.asarray(x, dtype=float) for x in (ns, means, var))
    k = len(ns) - 1
    dfe = ns.sum() - (k + 1)
    if dfe < 1:
        raise ProcedureError(f"residual df {dfe:g} < 1")
    mq = float(((ns - 1) * var).sum() / dfe)
    if mq <= 0:
        raise ProcedureError("pooled variance is zero (all groups constant)")
    se = np.sqrt(mq * (1.0 / ns[0] + 1.0 / ns[1:]))
    cm = dunnett_contrasts(k)
    corr = correlation_from_mean_cov(cm, 1.0 / ns)
    return MaxTSetup(means[1:] - means[0], se, np.full(k, dfe), corr,
                     global_df=float(dfe), pooled_var=mq)


def welch_setup(ns, means, var, with_corr=True) -> MaxTSetup:
    ns, means, var = (np.asarray(x, dtype=float) for x in (ns, means, var))
    k = len(ns) - 1
    if np.any(ns < 2):
        raise ProcedureError("every group needs at least 2 observations")
    w = var / ns
    pair = w[0] + w[1:]
    if np.any(pair <= 0):
        raise ProcedureError("degenerate variance pair: control and a treatment "
                             "both have zero variance")
    dfs = pair ** 2 / (w[0] ** 2 / (ns[0] - 1) + w[1:] ** 2 / (ns[1:] - 1))
    corr = correlation_from_mean_cov(dunnett_contrasts(k), w) if with_corr else None
    return MaxTSetup(means[1:] - means[0], np.sqrt(pair), dfs, corr)


def sandwich_setup(ns, means, mean_cov) -> MaxTSetup:
    """Common residual df with the contrast covariance from ``mean_cov``,
    the (k+1) x (k+1) sandwich covariance of the group means.
    """
    ns, means = np.asarray(ns, dtype=float), np.asarray(means, dtype=float)
    mean_cov = np.asarray(mean_cov, dtype=float)
    k = len(ns) - 1
    dfe = ns.sum() - (k + 1)
    if dfe < 1:
        raise ProcedureError(f"residual df {dfe:g} < 1")
    c = dunnett_contrasts(k).rows
    cov = c @ mean_cov @ c.T
    sd = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    if np.any(sd <= 0):
        raise ProcedureError("sandwich standard error is zero for some comparison")
    corr = cov / np.outer(sd, sd)
    corr = 0.5 * (corr + corr.T)
    np.fill_diagonal(corr, 1.0)
    return MaxTSetup(means[1:] - means[0], sd, np.full(k, dfe), corr, global_df=float(dfe))


def hc_covariance(ds: Dataset, hc_type: str = "HC3") -> np.ndarray:
    """Sandwich covariance of the group means from the dummy-coded one-way
    model, (X'X)^-1 X' diag(omega) X (X'X)^-1, with omega_j = e_j^2/(1-h_jj)^2
    (HC3) or e_j^2 (HC0).
    """
    if hc_type not in HC_TYPES:
        raise ProcedureError(f"hc_type must be one of {HC_TYPES}")
    arrays = ds.arrays()
    y = np.concatenate(arrays)
    g = np.repeat(np.arange(len(arrays)), [len(a) for a in arrays])
    x = np.zeros((len(y), len(arrays)))
    x[np.arange(len(y)), g] = 1.0
    bread = np.linalg.inv(x.T @ x)
    resid = y - x @ (bread @ x.T @ y)
    lev = np.einsum("ij,jk,ik->i", x, bread, x)
    if np.any(lev >= 1.0 - 1e-12):
        raise ProcedureError("HC covariance undefined: a group has a single observation")
    omega = resid ** 2 / (1.0 - lev) ** 2 if hc_type == "HC3" else resid ** 2
    return bread @ (x.T * omega) @ x @ bread


def hc_diagonal(summaries: Sequence[GroupSummary], hc_type: str = "HC3") -> np.ndarray:
    """Closed form of :func:`hc_covariance` for the one-way layout.

    Leverages are 1/n_g, so HC3 gives s_g^2/(n_g - 1) and HC0 gives
    s_g^2 (n_g - 1)/n_g^2 on the diagonal.
    """
    ns, _, var = _arrays(summaries)
    if np.any(ns < 2):
        raise ProcedureError("HC covariance undefined: a group has a single observation")
    if hc_type == "HC3":
        return np.diag(var / (ns - 1))
    if hc_type == "HC0":
        return np.diag(var * (ns - 1) / ns ** 2)
    raise ProcedureError(f"hc_type must be one of {HC_TYPES}")


def _univariate_p(t, df, alternative):
    if alternative == "greater":
        return 1.0 - mvt.t_cdf(t, df)
    if alternative == "less":
        return mvt.t_cdf(t, df)
    return 2.0 * (1.0 - mvt.t_cdf(np.abs(t), df))


def raw_pvalues(setup: MaxTSetup, alternative: str) -> np.ndarray:
    """Unadjusted per-comparison t-test p-values."""
    return np.array([float(_univariate_p(t, d, alternative))
                     for t, d in zip(setup.statistic, setup.df)])


def maxt_pvalue(t: float, corr: np.ndarray, df: float, alternative: str,
                abs_tol: float = 1e-4, seed: int = 0) -> float:
    """Adjusted p-value of statistic ``t`` under the joint max-T distribution."""
    if alternative == "two-sided":
        res = mvt.max_stat_cdf(abs(t), corr, df, two_sided=True, abs_tol=abs_tol, seed=seed)
    else:
        bound = t if alternative == "greater" else -t
        res = mvt.max_stat_cdf(bound, corr, df, abs_tol=abs_tol, seed=seed)
    return min(max(1.0 - res.prob, 0.0), 1.0)


def adjusted_pvalues(setup: MaxTSetup, alternative: str, abs_tol: float = 1e-4,
                     seed: int = 0) -> np.ndarray:
    if setup.corr is None:
        return np.minimum(1.0, setup.k * raw_pvalues(setup, alternative))
    return np.array([maxt_pvalue(t, setup.corr, d, alternative, abs_tol, seed)
                     for t, d in zip(setup.statistic, setup.df)])


def reject(setup: MaxTSetup, alternative: str, alpha: float, abs_tol: float = 1e-4,
           seed: int = 0) -> np.ndarray:
    """Boolean rejection vector, ``p_adjusted <= alpha``.

    The max-T p-value lies between the raw p-value and k times it, so the
    integral is only evaluated when alpha falls between those bounds.
    """
    raw = raw_pvalues(setup, alternative)
    bonf = np.minimum(1.0, setup.k * raw)
    if setup.corr is None:
        return bonf <= alpha
    out = bonf <= alpha
    for i in np.flatnonzero((raw <= alpha) & ~out):
        out[i] = maxt_pvalue(setup.statistic[i], setup.corr, setup.df[i],
                             alternative, abs_tol, seed) <= alpha
    return out


def critical_values(setup: MaxTSetup, alternative: str, alpha: float,
                    abs_tol: float = 1e-4, seed: int = 0) -> np.ndarray:
    two = alternative == "two-sided"
    cache: dict[float, float] = {}
    out = []
    for d in setup.df:
        d = float(d)
        if d not in cache:
            if setup.corr is None:
                cache[d] = mvt.t_quantile(1.0 - alpha / setup.k, d, two)
            else:
                cache[d] = mvt.equicoordinate_quantile(
                    setup.corr, d, 1.0 - alpha,
                    "two-sided" if two else "one-sided", abs_tol=abs_tol, seed=seed)
        out.append(cache[d])
    return np.array(out)


def build_report(setup: MaxTSetup, spec: TestSpec, labels: Sequence[str]) -> TestReport:
    p = adjusted_pvalues(setup, spec.alternative, spec.abs_tol, spec.seed)
    crit = critical_values(setup, spec.alternative, spec.alpha, spec.abs_tol, spec.seed)
    rows = []
    for i, label in enumerate(labels):
        est, se, c = float(setup.estimate[i]), float(setup.stderr[i]), float(crit[i])
        if spec.alternative == "greater":
            lo, hi = est - c * se, math.inf
        elif spec.alternative == "less":
            lo, hi = -math.inf, est + c * se
        else:
            lo, hi = est - c * se, est + c * se
        rows.append(ComparisonResult(str(label), est, se, float(setup.df[i]),
                                     float(setup.statistic[i]), float(p[i]), lo, hi, c))
    return TestReport(spec.method, spec.alternative, spec.alpha, rows, float(crit.max()),
                      setup.global_df, setup.pooled_var, setup.corr)


def _labels(summaries: Sequence[GroupSummary]) -> list[str]:
    return [f"{s.label} - {summaries[0].label}" for s in summaries[1:]]


def dunnett_original(summaries: Sequence[GroupSummary], spec: TestSpec) -> TestReport:
    """Dunnett's single-step test with the pooled mean square and common df."""
    setup = original_setup(*_arrays(summaries))
    return build_report(setup, spec, _labels(summaries))


def welch_pi(summaries: Sequence[GroupSummary], spec: TestSpec) -> TestReport:
    """Plug-in max-T test: Welch standard errors, comparison-specific Welch df
    and the correlation implied by the group sample variances. Comparison i is
    referred to the q-variate t distribution with df_i.
    """
    setup = welch_setup(*_arrays(summaries))
    return build_report(setup, spec, _labels(summaries))


def bonferroni_welch(summaries: Sequence[GroupSummary], spec: TestSpec) -> TestReport:
    setup = welch_setup(*_arrays(summaries), with_corr=False)
    return build_report(setup, spec, _labels(summaries))


def sandwich_maxt(ds: Dataset, spec: TestSpec) -> TestReport:
    """Max-T test with a heteroscedasticity-consistent covariance and the
    common residual df.
    """
    summaries = summarize(ds)
    ns, means, _ = _arrays(summaries)
    setup = sandwich_setup(ns, means, hc_covariance(ds, spec.hc_type))
    return build_report(setup, spec, _labels(summaries))


def run_test(ds: Dataset, spec: TestSpec) -> TestReport:
    """Dispatch to the procedure named by ``spec.method``."""
    if spec.method == "sandwich":
        return sandwich_maxt(ds, spec)
    fn = {"original": dunnett_original, "welch_pi": welch_pi,
          "bonferroni_welch": bonferroni_welch}[spec.method]
    return fn(summarize(ds), spec)
