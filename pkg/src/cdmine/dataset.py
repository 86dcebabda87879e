"""CSV ingestion: feature columns with missing-value masks plus a binary label."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import LabelError, ParseError
from .midrank import Kind, VariableColumn

DEFAULT_MISSING_TOKENS = ("NA", "", "?")
DISCRETE_MAX_DISTINCT = 10


@dataclass(frozen=True)
class Dataset:
    variables: list  # VariableColumn
    labels: np.ndarray  # 0/1, length n
    positive_label: str
    n: int
    p: int

    def names(self):
        return [v.name for v in self.variables]


def load_csv(
    path,
    label_column: str,
    positive_label: str | None = None,
    missing_tokens=DEFAULT_MISSING_TOKENS,
) -> Dataset:
    """Parse a header-bearing CSV into feature columns and a binary label.

    Feature cells matching a missing token get masked; any other non-numeric
    cell is a ParseError with its location.  Column kind is inferred from the
    distinct-value count (<= 10 distinct -> discrete).
    """
    missing = set(missing_tokens)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", row=1) from None
        rows = list(reader)
    if label_column not in header:
        raise LabelError(f"label column {label_column!r} not in header")
    label_idx = header.index(label_column)

    n = len(rows)
    if n == 0:
        raise ParseError("no data rows", row=2)
    raw_labels = []
    columns = {j: [] for j in range(len(header)) if j != label_idx}
    masks = {j: [] for j in columns}
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise ParseError(
                f"row has {len(row)} fields, expected {len(header)}", row=i + 2
            )
        for j, cell in enumerate(row):
            if j == label_idx:
                raw_labels.append(cell.strip())
                continue
            cell = cell.strip()
            if cell in missing:
                columns[j].append(np.nan)
                masks[j].append(True)
                continue
            try:
                columns[j].append(float(cell))
            except ValueError:
                raise ParseError(
                    f"cannot parse {cell!r} as a number",
                    row=i + 2,
                    column=header[j],
                ) from None
            masks[j].append(False)

    distinct_labels = sorted(set(raw_labels))
    if len(distinct_labels) != 2:
        raise LabelError(
            f"label column must take exactly 2 values, got {distinct_labels}"
        )
    if positive_label is None:
        positive_label = distinct_labels[-1]
    elif positive_label not in distinct_labels:
        raise LabelError(
            f"positive label {positive_label!r} not among {distinct_labels}"
        )
    labels = np.array([1 if v == positive_label else 0 for v in raw_labels])

    variables = []
    for j in sorted(columns):
        values = np.array(columns[j])
        mask = np.array(masks[j], dtype=bool)
        present = values[~mask]
        kind = (
            Kind.DISCRETE
            if np.unique(present).size <= DISCRETE_MAX_DISTINCT
            else Kind.CONTINUOUS
        )
        variables.append(
            VariableColumn(values=values, missing=mask, kind=kind, name=header[j])
        )
    return Dataset(
        variables=variables,
        labels=labels,
        positive_label=positive_label,
        n=n,
        p=len(variables),
    )
