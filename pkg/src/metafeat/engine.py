"""Scenario-configured extraction of meta-features over datasets."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import infotheo, landmarking, model, simple, statistical
from .dataset import binarize, discretize, load_dataset, rescale_minmax, split_by_class
from .summary import (
    IDENTITY, MeasureResult, NoDefault, SummarizerSpec, apply_measure_default,
    drop_failed, summarize,
)

log = logging.getLogger(__name__)

GROUPS = ("simple", "statistical", "infotheo", "model", "landmarking")
SCENARIOS = ("TRANSFORM", "IGNORE", "RESCALE", "BY-CLASS", "2-FOLDS")

SCALAR_MEASURES = {
    "simple": set(simple.SCALAR_MEASURES),
    "statistical": set(statistical.SCALAR_MEASURES),
    "infotheo": set(infotheo.SCALAR_MEASURES),
    "model": set(model.SCALAR_MEASURES),
    "landmarking": set(),
}

META_COLUMNS = ("dataset", "error", "n", "d", "q")


@dataclass(frozen=True)
class ExtractionConfig:
    groups: tuple = GROUPS
    scenario: str = "TRANSFORM"
    summarizers: SummarizerSpec = field(default_factory=SummarizerSpec)
    statistical_transform: bool = True
    infotheo_transform: bool = True
    by_class: bool = False
    rescale: bool = False
    folds: int = 10
    score: str = "accuracy"
    cor_method: str = "pearson"
    tau: float = 0.5
    seed: int = 0
    raw_output: bool = False
    proportions: bool = False
    tree_min_split: int = 20
    tree_complexity: float = 0.01

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        unknown = set(self.groups) - set(GROUPS)
        if unknown:
            raise ValueError(f"unknown groups: {sorted(unknown)}")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.score not in landmarking.METRICS:
            raise ValueError(f"unknown score {self.score!r}")

    @classmethod
    def for_scenario(cls, scenario: str, **overrides) -> "ExtractionConfig":
        """Flag settings implied by one of the named scenarios."""
        scenario = scenario.upper()
        flags = {
            "TRANSFORM": {},
            "IGNORE": {"statistical_transform": False, "infotheo_transform": False},
            "RESCALE": {"rescale": True},
            "BY-CLASS": {"by_class": True},
            "2-FOLDS": {"folds": 2},
        }[scenario]
        return cls(scenario=scenario, **{**flags, **overrides})


@dataclass
class MetaFeatureRecord:
    dataset: str
    features: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    exceptions: list = field(default_factory=list)
    n: int | None = None
    d: int | None = None
    q: int | None = None
    error: str | None = None

    @property
    def missing(self) -> int:
        return sum(v is None for v in self.features.values())

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset, "error": self.error,
            "n": self.n, "d": self.d, "q": self.q,
            "features": self.features, "timings": self.timings,
            "exceptions": self.exceptions,
        }


def _finalize(group, results, config, record):
    """Defaults, dropping and summarization for one group's raw results."""
    for res in results:
        fname = f"{group}.{res.name}"
        if res.exception is not None or res.failed:
            kind = res.exception or "element"
            try:
                fixed = apply_measure_default(res)
                handling = "default"
            except NoDefault:
                fixed = drop_failed(res) if res.exception is None else res
                handling = "dropped" if fixed.exception is None else "missing"
            record.exceptions.append({"measure": fname, "kind": kind, "handling": handling,
                                      "elements": list(res.failed)})
            res = fixed
        scalar = res.name in SCALAR_MEASURES[group] and not (group == "statistical" and config.by_class)
        if config.raw_output:
            if res.exception is not None:
                record.features[fname] = None
            elif scalar:
                record.features[fname] = float(res.values[0])
            else:
                record.features.update({f"{fname}.{i}": float(v) for i, v in enumerate(res.values)})
            continue
        spec = SummarizerSpec((IDENTITY,)) if scalar else config.summarizers
        for key, value in summarize(res, spec).items():
            record.features[f"{group}.{key}"] = value


def _pool_by_class(per_class, record, group):
    """Concatenate each measure's values across class subsets.

    Failing elements are resolved per class before pooling, so the pooled
    result itself never carries failed elements.
    """
    names = [r.name for r in per_class[0]]
    pooled = []
    for i, name in enumerate(names):
        parts = []
        for k, results in enumerate(per_class):
            res = results[i]
            if res.exception is not None or res.failed:
                try:
                    fixed = apply_measure_default(res)
                    handling = "default"
                except NoDefault:
                    fixed = drop_failed(res) if res.exception is None else res
                    handling = "dropped" if fixed.exception is None else "missing"
                record.exceptions.append({"measure": f"{group}.{name}", "kind": res.exception or "element",
                                          "handling": handling, "elements": list(res.failed), "class": k})
                res = fixed
            if res.exception is None:
                parts.append(res.values)
        if parts:
            pooled.append(MeasureResult(name, np.concatenate(parts)))
        else:
            pooled.append(MeasureResult.fail(name, per_class[0][i].exception or "computation"))
    return pooled


def _statistical(view, config, with_discriminant=True):
    out = statistical.extract_descriptive(view)
    out += statistical.extract_correlation(view, config.cor_method, config.tau)
    out += statistical.extract_distribution_counts(view, config.seed, config.proportions)
    if with_discriminant:
        out += statistical.extract_discriminant(view)
    return out


def run_extraction(dataset, config: ExtractionConfig | None = None) -> MetaFeatureRecord:
    """Characterize one dataset: each group sees the view its scenario dictates."""
    config = config or ExtractionConfig()
    record = MetaFeatureRecord(dataset.name, n=dataset.n, d=dataset.d, q=dataset.q)
    start = time.perf_counter()
    base = rescale_minmax(dataset) if config.rescale else dataset
    importance = None

    for group in GROUPS:
        if group not in config.groups:
            continue
        t0 = time.perf_counter()
        if group == "simple":
            results = simple.extract_simple(base)
        elif group == "statistical":
            view = binarize(base) if config.statistical_transform else base
            if config.by_class:
                per_class = [_statistical(sub, config, with_discriminant=False) for sub in split_by_class(view)]
                results = _pool_by_class(per_class, record, group)
            else:
                results = _statistical(view, config)
        elif group == "infotheo":
            view = discretize(base) if config.infotheo_transform else base
            results = infotheo.extract_infotheo(view)
        elif group == "model":
            tree, results = model.extract_model(base, config.tree_min_split, config.tree_complexity, config.seed)
            importance = tree.importance
        else:
            results = landmarking.extract_landmarking(base, config.folds, config.score, config.seed, importance)
        _finalize(group, results, config, record)
        record.timings[group] = round(time.perf_counter() - t0, 3)
    record.timings["total"] = round(time.perf_counter() - start, 3)
    return record


def _load_and_extract(path, config, target_name):
    try:
        dataset = load_dataset(path, target_name=target_name)
        return run_extraction(dataset, config)
    except Exception as exc:  # isolate per-dataset failures
        log.warning("failed on %s: %s", path, exc)
        return MetaFeatureRecord(Path(path).stem, error=f"{type(exc).__name__}: {exc}")


def run_corpus(paths, config: ExtractionConfig | None = None, target_name: str | None = None,
               workers: int = 1) -> list:
    """One record per path; unreadable datasets yield error records instead of raising."""
    paths = list(paths)
    if not paths:
        raise ValueError("empty corpus")
    config = config or ExtractionConfig()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda p: _load_and_extract(p, config, target_name), paths))
    return [_load_and_extract(p, config, target_name) for p in paths]


def feature_columns(records) -> list:
    """Union of feature names in first-seen order."""
    seen = {}
    for rec in records:
        for key in rec.features:
            seen.setdefault(key, None)
    return list(seen)


def timing_columns(records) -> list:
    seen = {}
    for rec in records:
        for key in rec.timings:
            seen.setdefault(f"time.{key}", None)
    return list(seen)


def metabase_rows(records):
    """Header and rows of the meta-base table; ``None`` marks a missing cell."""
    features = feature_columns(records)
    times = timing_columns(records)
    header = list(META_COLUMNS) + times + features
    rows = []
    for rec in records:
        row = [rec.dataset, rec.error, rec.n, rec.d, rec.q]
        row += [rec.timings.get(t[len("time."):]) for t in times]
        row += [rec.features.get(f) for f in features]
        rows.append(row)
    return header, rows


def write_metabase_csv(records, fh) -> None:
    import csv

    header, rows = metabase_rows(records)
    writer = csv.writer(fh)
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])


def write_metabase_json(records, fh) -> None:
    header, _ = metabase_rows(records)
    json.dump({"columns": header, "records": [r.to_dict() for r in records]}, fh, indent=1)
