"""Independent reference computations used to derive frozen test values.

Nothing here calls into the package under test.
"""

import math

import numpy as np
from scipy.integrate import quad


def t_density(x, df):
    c = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2)) / math.sqrt(df * math.pi)
    return c * (1 + x * x / df) ** (-(df + 1) / 2)


def t_cdf_quad(x, df):
    """Student t CDF by adaptive quadrature of the density."""
    if x >= 0:
        return 0.5 + quad(t_density, 0, x, args=(df,), epsabs=1e-13, epsrel=1e-13)[0]
    return 0.5 - quad(t_density, x, 0, args=(df,), epsabs=1e-13, epsrel=1e-13)[0]


def bisect(f, lo, hi, tol=1e-10):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def mc_mvt_draws(corr, df, n, rng):
    chol = np.linalg.cholesky(np.asarray(corr, dtype=float))
    z = rng.standard_normal((n, chol.shape[0])) @ chol.T
    if math.isinf(df):
        return z
    return z / np.sqrt(rng.chisquare(df, n) / df)[:, None]


def mc_rectangle(corr, df, lower, upper, n=10**6, rng=None, batch=250_000):
    """Brute-force Monte Carlo probability of lower < T <= upper and its standard error."""
    rng = np.random.default_rng(0) if rng is None else rng
    lower, upper = np.asarray(lower, float), np.asarray(upper, float)
    hits = 0
    for start in range(0, n, batch):
        t = mc_mvt_draws(corr, df, min(batch, n - start), rng)
        hits += int(((t > lower) & (t <= upper)).all(axis=1).sum())
    p = hits / n
    return p, math.sqrt(max(p * (1 - p), 1.0 / n) / n)


def random_correlation(q, rng):
    """Random full-rank correlation matrix from a random factor model."""
    a = rng.standard_normal((q, q + 2))
    s = a @ a.T + 0.05 * np.eye(q)
    d = np.sqrt(np.diag(s))
    r = s / np.outer(d, d)
    np.fill_diagonal(r, 1.0)
    return r
