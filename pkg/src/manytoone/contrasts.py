"""Many-to-one contrast matrices and the correlations of their statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .data import GroupSummary

ZERO_SUM_TOL = 1e-12
PSD_TOL = 1e-10


class ContrastError(ValueError):
    pass


@dataclass(frozen=True)
class ContrastMatrix:
    rows: np.ndarray  # shape (q, k+1)
    labels: tuple[str, ...]

    @property
    def q(self) -> int:
        return self.rows.shape[0]


def dunnett_contrasts(k: int, group_labels: Sequence[str] | None = None) -> ContrastMatrix:
    """Treatment-minus-control contrasts for ``k`` treatments, control in column 0."""
    if k < 1:
        raise ContrastError("at least one treatment group is required")
    if group_labels is None:
        group_labels = [str(i) for i in range(k + 1)]
    rows = np.zeros((k, k + 1))
    rows[:, 0] = -1.0
    rows[np.arange(k), np.arange(1, k + 1)] = 1.0
    labels = tuple(f"{group_labels[i]} - {group_labels[0]}" for i in range(1, k + 1))
    return ContrastMatrix(rows, labels)


def validate(cm: ContrastMatrix | np.ndarray) -> str | None:
    """Return ``None`` if every row is a valid many-to-one contrast, else a description.

    A row is valid when its coefficients sum to zero and it has exactly one
    positive and exactly one negative coefficient.
    """
    rows = np.atleast_2d(np.asarray(getattr(cm, "rows", cm), dtype=float))
    problems = []
    for i, row in enumerate(rows):
        if abs(row.sum()) > ZERO_SUM_TOL:
            problems.append(f"row {i}: coefficients sum to {row.sum():g}, not 0")
        npos, nneg = int((row > 0).sum()), int((row < 0).sum())
        if npos != 1 or nneg != 1:
            problems.append(f"row {i}: {npos} positive and {nneg} negative "
                            "coefficients (need exactly one of each)")
    return "; ".join(problems) if problems else None


def correlation_from_mean_cov(cm: ContrastMatrix, mean_var: Sequence[float]) -> np.ndarray:
    """Correlation of the contrast estimates when the group means are independent
    with variances ``mean_var``.
    """
    c = cm.rows
    w = np.asarray(mean_var, dtype=float)
    if w.shape != (c.shape[1],):
        raise ContrastError("one variance per group is required")
    cov = (c * w) @ c.T
    sd = np.sqrt(np.diag(cov))
    if np.any(sd <= 0):
        bad = [cm.labels[i] for i in np.flatnonzero(sd <= 0)]
        raise ContrastError(f"contrast with zero variance: {', '.join(bad)}")
    r = cov / np.outer(sd, sd)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    check_correlation(r)
    return r


def check_correlation(r: np.ndarray) -> None:
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ContrastError("correlation matrix must be square")
    if not np.allclose(r, r.T, atol=1e-12):
        raise ContrastError("correlation matrix is not symmetric")
    if not np.allclose(np.diag(r), 1.0, atol=1e-12):
        raise ContrastError("correlation matrix needs a unit diagonal")
    lam = np.linalg.eigvalsh(r).min()
    if lam < -PSD_TOL:
        raise ContrastError(f"correlation matrix not positive semidefinite "
                            f"(smallest eigenvalue {lam:.3g})")


def correlation_pooled(cm: ContrastMatrix, ns: Sequence[int]) -> np.ndarray:
    ns = np.asarray(ns, dtype=float)
    if np.any(ns < 1):
        raise ContrastError("group sizes must be >= 1")
    return correlation_from_mean_cov(cm, 1.0 / ns)


def correlation_plugin(cm: ContrastMatrix, summaries: Sequence[GroupSummary]) -> np.ndarray:
    """Correlation with each group mean weighted by its own sample variance."""
    var = np.array([s.var for s in summaries], dtype=float)
    if np.any(var < 0):
        raise ContrastError("negative group variance")
    ns = np.array([s.n for s in summaries], dtype=float)
    return correlation_from_mean_cov(cm, var / ns)
