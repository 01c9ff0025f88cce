"""Analyses over meta-base tables: redundancy, missing values, timing."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from .engine import GROUPS, META_COLUMNS


@dataclass
class MetaBase:
    """Column-oriented view of a meta-base; ``nan`` marks a missing cell."""

    datasets: list
    columns: dict  # feature name -> float array
    meta: dict = field(default_factory=dict)  # e.g. "n", "time.simple" -> list

    @property
    def features(self) -> list:
        return list(self.columns)

    @classmethod
    def from_table(cls, header, rows):
        datasets, columns, meta = [], {}, {}
        idx = {h: i for i, h in enumerate(header)}
        for h in header:
            if h == "dataset":
                continue
            is_feature = h.split(".", 1)[0] in GROUPS
            target = columns if is_feature else meta
            target[h] = []
        for row in rows:
            datasets.append(row[idx["dataset"]] if "dataset" in idx else str(len(datasets)))
            for h, values in list(columns.items()) + list(meta.items()):
                values.append(row[idx[h]])
        cols = {h: np.array([_to_float(v) for v in vals]) for h, vals in columns.items()}
        return cls(datasets, cols, meta)

    @classmethod
    def from_records(cls, records):
        from .engine import metabase_rows

        header, rows = metabase_rows(records)
        return cls.from_table(header, rows)

    @classmethod
    def load(cls, path):
        path = Path(path)
        if path.suffix.lower() == ".json":
            data = json.loads(path.read_text())
            header = data["columns"]
            rows = []
            for rec in data["records"]:
                row = []
                for h in header:
                    if h in rec.get("features", {}):
                        row.append(rec["features"][h])
                    elif h.startswith("time."):
                        row.append(rec.get("timings", {}).get(h[len("time."):]))
                    else:
                        row.append(rec.get(h))
                rows.append(row)
            return cls.from_table(header, rows)
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = list(reader)
        return cls.from_table(header, rows)


def _to_float(v):
    if v is None or v == "":
        return np.nan
    try:
        return float(v)
    except (TypeError, ValueError):
        return np.nan


def spearman(x, y) -> float:
    """Spearman's rho over rows where both values are present (average ranks for ties).

    NaN when fewer than three complete rows or either side is constant.
    """
    mask = ~(np.isnan(x) | np.isnan(y))
    if mask.sum() < 3:
        return np.nan
    rx, ry = rankdata(x[mask]), rankdata(y[mask])
    rx, ry = rx - rx.mean(), ry - ry.mean()
    den = np.sqrt(np.dot(rx, rx) * np.dot(ry, ry))
    if den == 0:
        return np.nan
    return float(np.dot(rx, ry) / den)


def correlation_matrix(metabase: MetaBase, names=None) -> tuple:
    """Absolute Spearman matrix; NaN where a pair has no defined correlation.

    Fully observed columns are ranked once and correlated in bulk; only
    pairs touching a column with missing cells go through ``spearman``.
    """
    names = list(names if names is not None else metabase.features)
    k = len(names)
    X = np.column_stack([metabase.columns[f] for f in names]) if k else np.empty((0, 0))
    C = np.full((k, k), np.nan)
    complete = ~np.isnan(X).any(axis=0)
    full = np.flatnonzero(complete)
    if full.size and X.shape[0] >= 3:
        R = rankdata(X[:, full], axis=0)
        R -= R.mean(axis=0)
        norm = np.sqrt(np.sum(R * R, axis=0))
        ok = norm > 0
        with np.errstate(invalid="ignore", divide="ignore"):
            block = (R.T @ R) / np.outer(norm, norm)
        block[~ok, :] = np.nan
        block[:, ~ok] = np.nan
        C[np.ix_(full, full)] = np.abs(np.clip(block, -1.0, 1.0))
    for i in np.flatnonzero(~complete):
        for j in range(k):
            if j != i:
                C[i, j] = C[j, i] = abs(spearman(X[:, i], X[:, j]))
    np.fill_diagonal(C, 1.0)
    return names, C


@dataclass
class RedundancyReport:
    threshold: float
    kept: list
    removed: dict  # removed feature -> keeper it correlated with
    constant: list
    total: int

    @property
    def proportion_removed(self) -> float:
        return len(self.removed) / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["proportion_removed"] = self.proportion_removed
        return out


def _is_constant(x) -> bool:
    present = x[~np.isnan(x)]
    return present.size == 0 or np.ptp(present) == 0


# |rho| within this of the threshold counts as reaching it
_EPS = 1e-12


def redundancy_filter(metabase: MetaBase, threshold: float, corr=None) -> RedundancyReport:
    """Greedy select-and-remove on absolute Spearman correlation.

    Features are ranked by mean absolute correlation (ties by name). The top
    remaining feature is kept and every other remaining feature whose
    correlation with it reaches ``threshold`` is removed, until none remain.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    if len(metabase.datasets) < 2:
        raise ValueError("need at least two rows")
    constant = sorted(f for f in metabase.features if _is_constant(metabase.columns[f]))
    names = sorted(f for f in metabase.features if f not in set(constant))
    if corr is None:
        names, C = correlation_matrix(metabase, names)
    else:
        names, C = corr
    C = np.nan_to_num(C, nan=0.0)
    k = len(names)
    mean_corr = (C.sum(axis=1) - 1.0) / max(k - 1, 1)
    order = sorted(range(k), key=lambda i: (-mean_corr[i], names[i]))
    alive = np.ones(k, dtype=bool)
    kept, removed = [], {}
    for i in order:
        if not alive[i]:
            continue
        kept.append(names[i])
        alive[i] = False
        for j in order:
            if alive[j] and C[i, j] >= threshold - _EPS:
                removed[names[j]] = names[i]
                alive[j] = False
    return RedundancyReport(threshold, kept, removed, constant, k)


def compare_metabases(a: MetaBase, b: MetaBase) -> dict:
    """Per-feature Spearman agreement between two meta-bases (e.g. two scenarios).

    Rows align on dataset name and columns on feature name; keys present in
    only one side are listed as skipped.
    """
    shared_rows = [d for d in a.datasets if d in set(b.datasets)]
    ia = [a.datasets.index(d) for d in shared_rows]
    ib = [b.datasets.index(d) for d in shared_rows]
    shared = [f for f in a.features if f in b.columns]
    rho = {}
    for f in shared:
        r = spearman(a.columns[f][ia], b.columns[f][ib])
        rho[f] = None if np.isnan(r) else r
    return {
        "datasets": shared_rows,
        "correlation": rho,
        "skipped": {"only_first": [f for f in a.features if f not in b.columns],
                    "only_second": [f for f in b.features if f not in a.columns]},
    }


def _suffix(feature: str) -> str:
    parts = feature.split(".")
    if len(parts) == 2:
        return "identity"
    if len(parts) >= 4 and parts[-1].isdigit() and parts[2] in ("histogram", "quartiles"):
        return parts[2]
    if parts[-1].isdigit():
        return "raw"
    return parts[2]


def missing_report(metabase: MetaBase) -> dict:
    """Missing cell counts and percentages by group and by summarizer."""
    by_group, by_summary = {}, {}
    total = missing = 0
    errors = metabase.meta.get("error", [None] * len(metabase.datasets))
    ok = np.array([e in (None, "") for e in errors], dtype=bool)
    rows = int(ok.sum())
    for f, values in metabase.columns.items():
        n_missing = int(np.isnan(values[ok]).sum())
        group = f.split(".", 1)[0]
        summ = _suffix(f)
        for table, key in ((by_group, group), (by_summary, summ)):
            entry = table.setdefault(key, {"cells": 0, "missing": 0})
            entry["cells"] += rows
            entry["missing"] += n_missing
        total += rows
        missing += n_missing
    for table in (by_group, by_summary):
        for entry in table.values():
            entry["percent"] = 100.0 * entry["missing"] / entry["cells"] if entry["cells"] else 0.0
    return {
        "cells": total,
        "missing": missing,
        "percent": 100.0 * missing / total if total else 0.0,
        "by_group": by_group,
        "by_summary": by_summary,
    }


def timing_report(metabase: MetaBase) -> list:
    """Per-dataset group times keyed by (n, d, q), sorted by size."""
    time_cols = [c for c in metabase.meta if c.startswith("time.")]
    rows = []
    for i, name in enumerate(metabase.datasets):
        shape = tuple(_as_int(metabase.meta.get(k, [None] * (i + 1))[i]) for k in ("n", "d", "q"))
        times = {c[len("time."):]: _to_float(metabase.meta[c][i]) for c in time_cols}
        times = {k: (None if np.isnan(v) else v) for k, v in times.items()}
        flagged = not times or any(v is None for v in times.values())
        rows.append({"dataset": name, "n": shape[0], "d": shape[1], "q": shape[2],
                     "times": times, "flagged": flagged})
    rows.sort(key=lambda r: (r["n"] is None, r["n"] or 0, r["d"] or 0, r["dataset"]))
    return rows


def _as_int(v):
    f = _to_float(v)
    return None if np.isnan(f) else int(f)


def format_table(header, rows) -> str:
    cells = [[str(h) for h in header]] + [["" if v is None else (f"{v:.3f}" if isinstance(v, float) else str(v))
                                           for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


__all__ = [
    "MetaBase", "RedundancyReport", "compare_metabases", "correlation_matrix", "format_table",
    "missing_report", "redundancy_filter", "spearman", "timing_report", "META_COLUMNS",
]
