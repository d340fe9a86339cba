"""Long-format group/response ingestion and per-group summaries."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

import numpy as np


class DataError(ValueError):
    """Raised when input data violate the layout requirements."""


@dataclass(frozen=True)
class GroupSummary:
    label: str
    n: int
    mean: float
    var: float


@dataclass(frozen=True)
class Dataset:
    """Raw observations of a one-way layout with a designated control.

    ``records`` keeps the input order. ``groups`` lists the labels control
    first, then the remaining labels in first-seen order.
    """

    records: tuple[tuple[str, float], ...]
    control: str
    groups: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        seen: dict[str, int] = {}
        for label, value in self.records:
            if not math.isfinite(value):
                raise DataError(f"non-finite response {value!r} in group {label!r}")
            seen[label] = seen.get(label, 0) + 1
        if len(seen) < 2:
            raise DataError("at least 2 distinct groups are required")
        if self.control not in seen:
            raise DataError(f"control label {self.control!r} absent from data")
        small = [g for g, c in seen.items() if c < 2]
        if small:
            raise DataError(f"group too small (needs >= 2 rows): {', '.join(small)}")
        order = [self.control] + [g for g in seen if g != self.control]
        object.__setattr__(self, "groups", tuple(order))

    @classmethod
    def from_groups(cls, samples: Sequence[Iterable[float]],
                    labels: Sequence[str] | None = None,
                    control: str | None = None) -> "Dataset":
        """Build a dataset from one array per group; the first group is the control."""
        if labels is None:
            labels = [str(i) for i in range(len(samples))]
        if len(labels) != len(samples):
            raise DataError("labels and samples differ in length")
        records = tuple((str(lab), float(v))
                        for lab, vals in zip(labels, samples) for v in vals)
        return cls(records, str(labels[0]) if control is None else control)

    @property
    def k(self) -> int:
        """Number of treatment groups."""
        return len(self.groups) - 1

    def arrays(self) -> list[np.ndarray]:
        by_group: dict[str, list[float]] = {g: [] for g in self.groups}
        for label, value in self.records:
            by_group[label].append(value)
        return [np.asarray(by_group[g], dtype=float) for g in self.groups]

    def scaled(self, factor: float, shift: float = 0.0) -> "Dataset":
        return Dataset(tuple((g, factor * v + shift) for g, v in self.records),
                       self.control)


def parse_dataset(text: str, group_col: str, response_col: str,
                  control: str | None = None) -> Dataset:
    """Parse long-format CSV text into a :class:`Dataset`.

    Parameters
    ----------
    text : str
        CSV content with a header row. Blank lines are ignored.
    group_col, response_col : str
        Header names of the grouping and response columns.
    control : str, optional
        Control group label. Defaults to the first label seen.

    Raises
    ------
    DataError
        On missing columns, unparseable responses, groups with fewer than
        two rows, or an unknown control label.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DataError("empty CSV input")
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    header = [h.strip() for h in (reader.fieldnames or [])]
    reader.fieldnames = header
    for col in (group_col, response_col):
        if col not in header:
            raise DataError(f"missing column {col!r} (have: {', '.join(header)})")

    records = []
    for lineno, row in enumerate(reader, start=2):
        label = (row[group_col] or "").strip()
        raw = (row[response_col] or "").strip()
        try:
            value = float(raw)
        except ValueError:
            raise DataError(f"line {lineno}: non-numeric response {raw!r}") from None
        if not math.isfinite(value):
            raise DataError(f"line {lineno}: non-finite response {raw!r}")
        records.append((label, value))
    if not records:
        raise DataError("CSV has a header but no data rows")
    if control is None:
        control = records[0][0]
    return Dataset(tuple(records), control)


def load_example() -> Dataset:
    """Serum creatine kinase by sodium dichromate dose (rats), control dose 0."""
    text = (resources.files("manytoone") / "resources" / "creatine_kinase.csv").read_text()
    return parse_dataset(text, "dose", "CreatKinase", control="0")


def summarize(ds: Dataset) -> list[GroupSummary]:
    out = []
    for label, y in zip(ds.groups, ds.arrays()):
        out.append(GroupSummary(label, len(y), float(y.mean()), float(y.var(ddof=1))))
    return out
