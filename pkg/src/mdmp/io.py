"""CSV ingestion and score emission.

One dialect everywhere: comma separator, dot decimal, mandatory header.
Dataset files carry a leading timestamp column (used only to check
ordering), one column per dimension, and an optional trailing label
column that must be named exactly ``is_anomaly``. Score files carry
``index,score`` with full decimal precision so values round-trip.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import NonFiniteValue, NonMonotonicTimestamp, ParseError
from .series import MultivariateSeries

LABEL_COLUMN = "is_anomaly"


@dataclass(frozen=True)
class DatasetFile:
    """A loaded dataset: the series plus labels when the file has them."""

    path: str
    series: MultivariateSeries
    labels: np.ndarray | None


def _parse_cell(text: str, row: int, column: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"row {row}, column {column!r}: cannot parse {text!r}") from None


def load_csv(path, impute: bool = False) -> DatasetFile:
    """Load a dataset CSV.

    Parameters
    ----------
    path : str or Path
        File to read. The header decides the layout: first column is the
        timestamp, a last column named ``is_anomaly`` holds labels, and
        everything between is one dimension per column.
    impute : bool
        Forward-fill non-finite value cells from the previous row of the
        same dimension instead of rejecting the file. Cells in the first
        row cannot be filled and still raise.

    Raises
    ------
    ParseError, NonFiniteValue, NonMonotonicTimestamp
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, header required") from None
        if len(header) < 2:
            raise ParseError(f"{path}: header needs a timestamp and at least one value column")
        has_labels = header[-1] == LABEL_COLUMN
        dim_names = header[1 : -1 if has_labels else len(header)]
        if not dim_names:
            raise ParseError(f"{path}: no value columns between timestamp and labels")

        timestamps: list[float] = []
        rows: list[list[float]] = []
        labels: list[bool] = []
        for row_num, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise ParseError(
                    f"row {row_num}: expected {len(header)} columns, got {len(row)}"
                )
            timestamps.append(_parse_cell(row[0], row_num, header[0]))
            values = [
                _parse_cell(cell, row_num, name)
                for name, cell in zip(dim_names, row[1 : 1 + len(dim_names)])
            ]
            for c, value in enumerate(values):
                if not np.isfinite(value):
                    if impute and rows:
                        values[c] = rows[-1][c]
                    else:
                        raise NonFiniteValue(
                            f"row {row_num}, column {dim_names[c]!r}: "
                            f"non-finite value {value!r}"
                        )
            rows.append(values)
            if has_labels:
                labels.append(_parse_cell(row[-1], row_num, LABEL_COLUMN) != 0.0)

    ts = np.asarray(timestamps)
    if ts.shape[0] == 0:
        raise ParseError(f"{path}: no data rows")
    if not (np.diff(ts) > 0).all():
        bad = int(np.flatnonzero(~(np.diff(ts) > 0))[0]) + 2
        raise NonMonotonicTimestamp(f"row {bad}: timestamps must strictly increase")
    series = MultivariateSeries(
        np.asarray(rows, dtype=np.float64), dim_names=tuple(dim_names)
    )
    return DatasetFile(
        path=str(path),
        series=series,
        labels=np.asarray(labels, dtype=bool) if has_labels else None,
    )


def write_scores_csv(path, scores) -> None:
    """Write ``index,score`` rows with round-trip decimal precision."""
    scores = np.asarray(scores, dtype=np.float64).ravel()
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "score"])
        for i, value in enumerate(scores):
            writer.writerow([i, repr(float(value))])


def load_scores_csv(path) -> np.ndarray:
    """Read a score vector previously written by :func:`write_scores_csv`."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["index", "score"]:
            raise ParseError(f"{path}: expected header 'index,score'")
        scores = [_parse_cell(row[1], i, "score") for i, row in enumerate(reader, 1)]
    return np.asarray(scores, dtype=np.float64)


def write_dataset_csv(path, series: MultivariateSeries, labels=None) -> None:
    """Write a dataset in the load format, with integer timestamps 0..n-1."""
    path = Path(path)
    names = series.dim_names or tuple(f"value-{c}" for c in range(series.d))
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["timestamp", *names]
        if labels is not None:
            header.append(LABEL_COLUMN)
        writer.writerow(header)
        for t in range(series.n):
            row = [t, *(repr(float(v)) for v in series.values[t])]
            if labels is not None:
                row.append(int(bool(labels[t])))
            writer.writerow(row)
