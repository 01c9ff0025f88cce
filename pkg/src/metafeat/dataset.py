"""Typed tabular datasets, ingestion and the transforms the measure groups need."""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np

NUMERIC = "numeric"
CATEGORICAL = "categorical"

MISSING_TOKENS = frozenset({"", "?", "NA", "N/A", "NaN", "nan", "null", "NULL"})


class DatasetError(ValueError):
    """Base class for ingestion failures."""


class MissingValues(DatasetError):
    pass


class UnknownTarget(DatasetError):
    pass


class ParseError(DatasetError):
    pass


@dataclass(frozen=True, eq=False)
class Column:
    name: str
    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind == NUMERIC:
            vals = np.asarray(self.values, dtype=float)
            if not np.all(np.isfinite(vals)):
                raise ValueError(f"numeric column {self.name!r} has non-finite values")
        elif self.kind == CATEGORICAL:
            vals = np.asarray(self.values, dtype=object).astype(str).astype(object)
        else:
            raise ValueError(f"unknown column kind {self.kind!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    @property
    def is_numeric(self) -> bool:
        return self.kind == NUMERIC

    @cached_property
    def categories(self) -> list:
        """Distinct values in order of first appearance."""
        return list(dict.fromkeys(self.values.tolist()))

    @cached_property
    def distinct_count(self) -> int:
        return len(self.categories)

    @cached_property
    def codes(self) -> np.ndarray:
        """Integer code of each value, indexing into ``categories``."""
        lookup = {v: i for i, v in enumerate(self.categories)}
        return np.fromiter((lookup[v] for v in self.values.tolist()), dtype=np.intp, count=len(self))

    def take(self, idx) -> "Column":
        return Column(self.name, self.kind, self.values[idx])


@dataclass(frozen=True, eq=False)
class Dataset:
    """Predictive columns plus a categorical target.

    Sub-datasets produced by :func:`split_by_class` set ``single_class_ok``
    so the ``q >= 2`` check is skipped for them.
    """

    name: str
    columns: tuple
    target: Column
    single_class_ok: bool = field(default=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        if self.target.kind != CATEGORICAL:
            object.__setattr__(self, "target", Column(self.target.name, CATEGORICAL, self.target.values))
        n = len(self.target)
        for col in self.columns:
            if len(col) != n:
                raise ValueError(f"column {col.name!r} has {len(col)} values, expected {n}")
        q = self.target.distinct_count
        if n == 0:
            raise ValueError("dataset has no instances")
        if not self.single_class_ok and q < 2:
            raise ValueError("target needs at least two classes")

    @property
    def n(self) -> int:
        return len(self.target)

    @property
    def d(self) -> int:
        return len(self.columns)

    @property
    def q(self) -> int:
        return self.target.distinct_count

    @property
    def classes(self) -> list:
        return self.target.categories

    @property
    def y(self) -> np.ndarray:
        """Class codes in first-appearance order."""
        return self.target.codes

    @property
    def numeric_columns(self) -> list:
        return [c for c in self.columns if c.is_numeric]

    @property
    def categorical_columns(self) -> list:
        return [c for c in self.columns if not c.is_numeric]

    def numeric_matrix(self) -> np.ndarray:
        cols = self.numeric_columns
        if not cols:
            return np.empty((self.n, 0))
        return np.column_stack([c.values for c in cols])

    def with_columns(self, columns) -> "Dataset":
        return replace(self, columns=tuple(columns))

    def take(self, idx) -> "Dataset":
        idx = np.asarray(idx)
        return Dataset(
            self.name,
            tuple(c.take(idx) for c in self.columns),
            self.target.take(idx),
            single_class_ok=True,
        )


def _is_finite_number(token: str) -> bool:
    try:
        return math.isfinite(float(token))
    except ValueError:
        return False


def _infer_column(name: str, raw: list) -> Column:
    if all(_is_finite_number(v) for v in raw):
        return Column(name, NUMERIC, np.array([float(v) for v in raw]))
    return Column(name, CATEGORICAL, np.array(raw, dtype=object))


def _build(name: str, header: list, rows: list, target_name: str | None) -> Dataset:
    if not header:
        raise ParseError("no header row")
    if target_name is None:
        target_name = header[-1]
    if target_name not in header:
        raise UnknownTarget(f"target column {target_name!r} not found in {header}")
    width = len(header)
    for lineno, row in enumerate(rows, start=2):
        if len(row) != width:
            raise ParseError(f"row {lineno} has {len(row)} fields, expected {width}")
        for value in row:
            if value.strip() in MISSING_TOKENS:
                raise MissingValues(f"missing value in row {lineno}; datasets with missing values are not supported")
    if not rows:
        raise ParseError("no data rows")
    columns = []
    target = None
    for j, col_name in enumerate(header):
        raw = [row[j].strip() for row in rows]
        if col_name == target_name:
            target = Column(col_name, CATEGORICAL, np.array(raw, dtype=object))
        else:
            columns.append(_infer_column(col_name, raw))
    try:
        return Dataset(name, tuple(columns), target)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _read_csv(path: Path, sep: str):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=sep)
        try:
            rows = [row for row in reader if row]
        except csv.Error as exc:
            raise ParseError(str(exc)) from exc
    if not rows:
        raise ParseError(f"{path} is empty")
    return [h.strip() for h in rows[0]], rows[1:]


_ARFF_ATTR = re.compile(r"@attribute\s+('[^']*'|\"[^\"]*\"|\S+)\s+(.+)$", re.IGNORECASE)


def _read_arff(path: Path):
    header, rows = [], []
    in_data = False
    with open(path, encoding="utf-8") as fh:
        for raw_line in fh:
            line = raw_line.strip()
            if not line or line.startswith("%"):
                continue
            if in_data:
                try:
                    row = next(csv.reader([line], quotechar="'", skipinitialspace=True))
                except csv.Error as exc:
                    raise ParseError(str(exc)) from exc
                rows.append(row)
                continue
            lowered = line.lower()
            if lowered.startswith("@relation"):
                continue
            if lowered.startswith("@attribute"):
                m = _ARFF_ATTR.match(line)
                if not m:
                    raise ParseError(f"bad attribute line: {line}")
                attr_name, attr_type = m.group(1).strip("'\""), m.group(2).strip()
                if not (attr_type.startswith("{") or attr_type.lower() in ("numeric", "real", "integer")):
                    raise ParseError(f"unsupported ARFF attribute type {attr_type!r}")
                header.append(attr_name)
            elif lowered.startswith("@data"):
                in_data = True
            else:
                raise ParseError(f"unexpected ARFF line: {line}")
    if not in_data:
        raise ParseError("ARFF file has no @data section")
    return header, rows


def load_dataset(path, format: str | None = None, target_name: str | None = None, sep: str = ",") -> Dataset:
    """Read a CSV or ARFF file into a :class:`Dataset`.

    Column types are inferred syntactically: a column is numeric iff every
    cell parses as a finite number. The target is always categorical and
    defaults to the last column.
    """
    path = Path(path)
    if format is None:
        format = "arff" if path.suffix.lower() == ".arff" else "csv"
    if not path.exists():
        raise ParseError(f"{path} does not exist")
    if format == "csv":
        header, rows = _read_csv(path, sep)
    elif format == "arff":
        header, rows = _read_arff(path)
    else:
        raise ValueError(f"unknown format {format!r}")
    return _build(path.stem, header, rows, target_name)


def from_arrays(X, y, name: str = "dataset", kinds=None, names=None) -> Dataset:
    """Build a dataset from in-memory columns; handy for tests and generators."""
    X = np.asarray(X, dtype=object)
    if X.ndim == 1:
        X = X[:, None]
    d = X.shape[1]
    names = names or [f"a{i}" for i in range(d)]
    columns = []
    for j in range(d):
        kind = kinds[j] if kinds else None
        if kind is None:
            kind = NUMERIC if all(isinstance(v, (int, float, np.integer, np.floating)) for v in X[:, j]) else CATEGORICAL
        vals = X[:, j].astype(float) if kind == NUMERIC else X[:, j]
        columns.append(Column(names[j], kind, vals))
    target = Column("class", CATEGORICAL, np.asarray(y, dtype=object))
    return Dataset(name, tuple(columns), target)


def binarize(dataset: Dataset) -> Dataset:
    """One-hot encode categorical predictors in place; numeric columns pass through."""
    out = []
    for col in dataset.columns:
        if col.is_numeric:
            out.append(col)
            continue
        for k, cat in enumerate(col.categories):
            out.append(Column(f"{col.name}={cat}", NUMERIC, (col.codes == k).astype(float)))
    return dataset.with_columns(out)


def default_bins(n: int) -> int:
    return max(2, int(round(n ** (1.0 / 3.0))))


def _equal_frequency_labels(values: np.ndarray, bins: int) -> np.ndarray:
    n = len(values)
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    # rank of the first occurrence of each value, so ties land in the lower bin
    first_rank = np.searchsorted(sorted_vals, values, side="left")
    return (first_rank * bins) // n


def _equal_width_labels(values: np.ndarray, bins: int) -> np.ndarray:
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros(len(values), dtype=int)
    labels = np.floor((values - lo) / (hi - lo) * bins).astype(int)
    return np.minimum(labels, bins - 1)


def discretize(dataset: Dataset, bins="auto", method: str = "equal_frequency") -> Dataset:
    """Turn each numeric predictor into a categorical column of interval indices.

    ``bins="auto"`` uses ``max(2, round(n ** (1/3)))``.
    """
    if bins == "auto":
        bins = default_bins(dataset.n)
    bins = int(bins)
    if bins < 2:
        raise ValueError("bins must be >= 2")
    labeller = {"equal_frequency": _equal_frequency_labels, "equal_width": _equal_width_labels}[method]
    out = []
    for col in dataset.columns:
        if not col.is_numeric:
            out.append(col)
            continue
        labels = labeller(col.values, bins)
        out.append(Column(col.name, CATEGORICAL, np.array([str(v) for v in labels], dtype=object)))
    return dataset.with_columns(out)


def rescale_minmax(dataset: Dataset) -> Dataset:
    """Map numeric predictors onto [0, 1]; constant columns become zeros."""
    out = []
    for col in dataset.columns:
        if not col.is_numeric:
            out.append(col)
            continue
        lo, hi = col.values.min(), col.values.max()
        if hi == lo:
            scaled = np.zeros(len(col))
        else:
            scaled = np.clip((col.values - lo) / (hi - lo), 0.0, 1.0)
        out.append(Column(col.name, NUMERIC, scaled))
    return dataset.with_columns(out)


def split_by_class(dataset: Dataset) -> list:
    """One sub-dataset per class, in first-appearance order."""
    y = dataset.y
    return [dataset.take(np.flatnonzero(y == k)) for k in range(dataset.q)]
