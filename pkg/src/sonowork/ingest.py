"""Delimited-text ingestion: numeric tables, (x, y) series and event lists.

Accepts comma, tab, semicolon or whitespace separated UTF-8 text with
``#``/``%`` comment lines, optional header row and optional decimal commas.
Empty cells become NaN so gaps survive into the transforms and render as
silence downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadEventColumns,
    EmptyInput,
    EmptySeries,
    EmptyTable,
    NegativeWeight,
    NonNumericCell,
    RaggedRows,
    UnknownColumn,
)

COMMENT_PREFIXES = ("#", "%")


@dataclass
class Table:
    """Parsed numeric table: ordered named columns of float64 values."""

    columns: list[tuple[str, np.ndarray]]
    row_count: int

    def __post_init__(self):
        names = [name for name, _ in self.columns]
        if len(set(names)) != len(names) or any(not n for n in names):
            raise ValueError("column names must be unique and non-empty")
        self.columns = [(name, np.asarray(values, dtype=np.float64)) for name, values in self.columns]
        for name, values in self.columns:
            if len(values) != self.row_count:
                raise ValueError(f"column {name!r} has {len(values)} values, expected {self.row_count}")

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.columns]

    def column(self, name: str) -> np.ndarray:
        for col_name, values in self.columns:
            if col_name == name:
                return values
        raise UnknownColumn(name, self.names)


@dataclass
class Series:
    """An (x, y) sequence to plot or sonify; NaN in y marks a gap."""

    x: np.ndarray
    y: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if len(self.x) != len(self.y):
            raise ValueError(f"x and y lengths differ: {len(self.x)} != {len(self.y)}")
        if len(self.y) == 0:
            raise EmptySeries()

    def __len__(self) -> int:
        return len(self.y)


@dataclass(frozen=True)
class EventList:
    """Timestamped non-negative weights, sorted ascending by time."""

    times: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "weights", weights)
        if len(times) != len(weights):
            raise ValueError(f"times and weights lengths differ: {len(times)} != {len(weights)}")
        if len(times):
            if not (np.isfinite(times).all() and np.isfinite(weights).all()):
                raise ValueError("event times and weights must be finite")
            if (np.diff(times) < 0).any():
                raise ValueError("event times must be non-decreasing")
            if (weights < 0).any():
                raise ValueError("event weights must be non-negative")

    def __len__(self) -> int:
        return len(self.times)


def _detect_delimiter(line: str, decimal_comma: bool) -> str | None:
    """Pick the most frequent of ',', tab, ';' in *line*; None = whitespace."""
    candidates = ("\t", ";") if decimal_comma else (",", "\t", ";")
    counts = {d: line.count(d) for d in candidates}
    best = max(counts, key=counts.get)
    return best if counts[best] > 0 else None


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return line.split()
    return [cell.strip() for cell in line.split(delimiter)]


def _to_float(token: str, decimal_comma: bool) -> float:
    if decimal_comma:
        token = token.replace(",", ".")
    return float(token)


def _is_numeric(token: str, decimal_comma: bool) -> bool:
    if token == "":
        return True  # empty cell parses to NaN
    try:
        _to_float(token, decimal_comma)
    except ValueError:
        return False
    return True


def _unique_names(raw: list[str]) -> list[str]:
    names: list[str] = []
    for i, name in enumerate(raw):
        candidate = name if name else f"col{i}"
        k = 2
        while candidate in names:
            candidate = f"{name or f'col{i}'}_{k}"
            k += 1
        names.append(candidate)
    return names


def parse_table(
    data: bytes | str,
    *,
    delimiter: str = "auto",
    has_header: bool | str = "auto",
    decimal_comma: bool = False,
) -> Table:
    """Parse delimited text into a Table.

    Lines starting with '#' or '%' are comments.  With ``has_header="auto"``
    the first non-comment row is a header iff it contains a non-numeric cell.
    Headerless columns are named col0, col1, ...  Empty cells become NaN.

    Raises EmptyInput, RaggedRows or NonNumericCell.
    """
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    text = text.lstrip("﻿")

    lines = []
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        lines.append(line)
    if not lines:
        raise EmptyInput()

    delim = _detect_delimiter(lines[0], decimal_comma) if delimiter == "auto" else delimiter
    if delim is not None and delim.strip() == "":
        delim = None  # explicit space means whitespace splitting

    first = _split(lines[0], delim)
    if has_header == "auto":
        header = any(not _is_numeric(cell, decimal_comma) for cell in first)
    else:
        header = bool(has_header)

    if header:
        names = _unique_names(first)
        data_lines = lines[1:]
    else:
        names = [f"col{i}" for i in range(len(first))]
        data_lines = lines
    if not data_lines:
        raise EmptyInput()

    n_cols = len(names)
    values: list[list[float]] = [[] for _ in range(n_cols)]
    for row, line in enumerate(data_lines):
        cells = _split(line, delim)
        if len(cells) != n_cols:
            raise RaggedRows(row, n_cols, len(cells))
        for j, cell in enumerate(cells):
            if cell == "":
                values[j].append(math.nan)
                continue
            try:
                values[j].append(_to_float(cell, decimal_comma))
            except ValueError:
                raise NonNumericCell(row, names[j], cell) from None

    columns = [(name, np.array(vals, dtype=np.float64)) for name, vals in zip(names, values)]
    return Table(columns, len(data_lines))


def serialize_table(table: Table) -> str:
    """Render a Table back to CSV; floats via repr so values round-trip exactly.

    NaN becomes an empty cell, except in single-column tables where an empty
    cell would make the whole line blank (and blank lines are skipped on
    parse), so there it is written as the parseable token "nan".
    """
    nan_token = "nan" if len(table.columns) == 1 else ""
    out = [",".join(table.names)]
    arrays = [values for _, values in table.columns]
    for i in range(table.row_count):
        out.append(",".join(nan_token if math.isnan(v) else repr(float(v)) for v in (a[i] for a in arrays)))
    return "\n".join(out) + "\n"


def select_series(table: Table, x_col: str | None, y_col: str) -> Series:
    """Pick (x, y) columns from a table; x defaults to the row index.

    Gaps are allowed in y but not in x: a series' abscissa must be finite.
    """
    if table.row_count == 0:
        raise EmptyTable()
    y = table.column(y_col)
    if x_col is None:
        x = np.arange(table.row_count, dtype=np.float64)
    else:
        x = table.column(x_col)
        bad = ~np.isfinite(x)
        if bad.any():
            row = int(np.argmax(bad))
            raise NonNumericCell(row, x_col, "" if math.isnan(x[row]) else repr(float(x[row])))
    return Series(x=x.copy(), y=y.copy(), label=y_col)


def parse_events(
    data: bytes | str,
    *,
    delimiter: str = "auto",
    has_header: bool | str = "auto",
    decimal_comma: bool = False,
) -> EventList:
    """Parse two-column (time, weight) text into an EventList sorted by time.

    Weights must be non-negative and all values finite; weights are
    normalized later, at synthesis time.
    """
    table = parse_table(data, delimiter=delimiter, has_header=has_header, decimal_comma=decimal_comma)
    if len(table.columns) != 2:
        raise BadEventColumns(len(table.columns))
    times = table.columns[0][1]
    weights = table.columns[1][1]
    for row in range(table.row_count):
        if not math.isfinite(times[row]):
            raise NonNumericCell(row, table.names[0], "" if math.isnan(times[row]) else repr(times[row]))
        if not math.isfinite(weights[row]):
            raise NonNumericCell(row, table.names[1], "" if math.isnan(weights[row]) else repr(weights[row]))
        if weights[row] < 0:
            raise NegativeWeight(row, float(weights[row]))
    order = np.argsort(times, kind="stable")
    return EventList(times=times[order], weights=weights[order])
