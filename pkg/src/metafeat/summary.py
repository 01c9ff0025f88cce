"""Summarization functions and exception-default substitution."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

SUMMARIZERS = (
    "mean", "sd", "min", "max", "median", "quartiles", "iqRange",
    "range", "kurtosis", "skewness", "count", "histogram",
)
DEFAULT_SUMMARIZERS = ("mean", "sd", "min", "max", "median", "kurtosis", "skewness", "histogram")
IDENTITY = "identity"

# exception kinds
DOMAIN = "domain"          # the data type the measure needs is absent
COMPUTATION = "computation"  # the formula is undefined on these values


class EmptyInput(ValueError):
    """A measure produced no values without flagging an exception."""


class NoDefault(LookupError):
    """No substitute value exists for the failing measure."""


@dataclass(frozen=True)
class MeasureResult:
    """Raw output of one characterization measure.

    ``failed`` lists element positions whose value could not be computed
    (they hold NaN). ``exception`` marks the whole measure as failed, in
    which case ``values`` is empty. ``context`` carries what a default
    substitution needs, e.g. ``d`` or per-attribute means.
    """

    name: str
    values: np.ndarray = field(default_factory=lambda: np.empty(0))
    exception: str | None = None
    failed: tuple = ()
    context: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "failed", tuple(int(i) for i in self.failed))
        if self.exception is not None and vals.size:
            raise ValueError("a failed measure carries no values")

    @classmethod
    def fail(cls, name, kind=COMPUTATION, **context):
        return cls(name, np.empty(0), exception=kind, context=context)


@dataclass(frozen=True)
class SummarizerSpec:
    functions: tuple = DEFAULT_SUMMARIZERS
    histogram_bins: int = 10

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise ValueError("at least one summarization function is required")
        unknown = [f for f in self.functions if f not in SUMMARIZERS and f != IDENTITY]
        if unknown:
            raise ValueError(f"unknown summarization functions: {unknown}")
        if self.histogram_bins < 2:
            raise ValueError("histogram_bins must be >= 2")

    def keys(self, measure: str) -> list:
        """Output keys for ``measure``, independent of the values."""
        if self.functions == (IDENTITY,):
            return [measure]
        out = []
        for fn in self.functions:
            if fn == "quartiles":
                out += [f"{measure}.quartiles.{i}" for i in range(5)]
            elif fn == "histogram":
                out += [f"{measure}.histogram.{i}" for i in range(self.histogram_bins)]
            else:
                out.append(f"{measure}.{fn}")
        return out


def _sd(x):
    if x.size < 2:
        return 0.0
    return float(np.std(x, ddof=1))


def _moment_shape(x, order):
    # population central moment over sample sd (n - 1)
    if x.size < 2:
        return 0.0
    sd = np.std(x, ddof=1)
    centered = x - x.mean()
    if sd == 0 or np.all(centered == 0):
        return 0.0
    m = np.mean(centered ** order)
    return float(m / sd ** order)


def kurtosis(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 2 or np.ptp(x) == 0:
        return 0.0
    return _moment_shape(x, 4) - 3.0


def skewness(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 2 or np.ptp(x) == 0:
        return 0.0
    return _moment_shape(x, 3)


def histogram(x, bins: int = 10) -> np.ndarray:
    """Proportions in equal-width bins spanning [min, max]."""
    x = np.asarray(x, dtype=float)
    lo, hi = x.min(), x.max()
    if hi == lo:
        out = np.zeros(bins)
        out[0] = 1.0
        return out
    try:
        counts, _ = np.histogram(x, bins=bins, range=(lo, hi))
    except ValueError:
        # span of a few ulps: edges collapse, so bin by position directly
        idx = np.minimum(((x - lo) / (hi - lo) * bins).astype(int), bins - 1)
        counts = np.bincount(idx, minlength=bins)
    return counts / x.size


def summarize(result: MeasureResult, spec: SummarizerSpec) -> dict:
    """Reduce a measure's values to the fixed set of keys from ``spec.keys``.

    Failed measures map every key to ``None``.
    """
    keys = spec.keys(result.name)
    if result.exception is not None:
        return dict.fromkeys(keys)
    x = result.values
    if x.size == 0:
        raise EmptyInput(f"{result.name} produced no values")
    if spec.functions == (IDENTITY,):
        if x.size != 1:
            raise ValueError(f"identity summary needs one value, {result.name} has {x.size}")
        return {result.name: float(x[0])}

    out = {}
    for fn in spec.functions:
        if fn == "quartiles":
            qs = np.quantile(x, [0.0, 0.25, 0.5, 0.75, 1.0])
            out.update({f"{result.name}.quartiles.{i}": float(v) for i, v in enumerate(qs)})
        elif fn == "histogram":
            props = histogram(x, spec.histogram_bins)
            out.update({f"{result.name}.histogram.{i}": float(v) for i, v in enumerate(props)})
        else:
            out[f"{result.name}.{fn}"] = float(_SCALAR[fn](x))
    return out


_SCALAR = {
    "mean": np.mean,
    "sd": _sd,
    "min": np.min,
    "max": np.max,
    "median": np.median,
    "iqRange": lambda x: np.subtract(*np.quantile(x, [0.75, 0.25])),
    "range": np.ptp,
    "kurtosis": kurtosis,
    "skewness": skewness,
    "count": lambda x: x.size,
}


# single-valued measures: default replaces the whole result
_SCALAR_DEFAULTS = {
    "catToNum": lambda ctx: ctx["d"],
    "numToCat": lambda ctx: ctx["d"],
    "nrCorAttr": lambda ctx: 0.0,
    "sdRatio": lambda ctx: -1.0,
}

# multi-valued measures: default replaces each failing element
_ELEMENT_DEFAULTS = {
    "cor": lambda ctx, i: 0.0,
    "gMean": lambda ctx, i: ctx["mean"][i],
    "kurtosis": lambda ctx, i: 0.0,
    "skewness": lambda ctx, i: 0.0,
    "linearDiscr": lambda ctx, i: 0.0,
}


def has_default(name: str) -> bool:
    return name in _SCALAR_DEFAULTS or name in _ELEMENT_DEFAULTS


def apply_measure_default(result: MeasureResult) -> MeasureResult:
    """Substitute the suggested default for a failed measure or failed elements.

    Raises :class:`NoDefault` when the measure has no suggested default or
    failed because its input domain was absent.
    """
    if result.exception is None and not result.failed:
        return result
    if result.exception == DOMAIN:
        raise NoDefault(f"{result.name}: input domain absent")
    name = result.name
    if result.exception is not None:
        if name in _SCALAR_DEFAULTS:
            return MeasureResult(name, [_SCALAR_DEFAULTS[name](result.context)], context=result.context)
        if name in _ELEMENT_DEFAULTS and "size" in result.context:
            size = result.context["size"]
            vals = [_ELEMENT_DEFAULTS[name](result.context, i) for i in range(size)]
            return MeasureResult(name, vals, context=result.context)
        raise NoDefault(name)
    if name not in _ELEMENT_DEFAULTS:
        raise NoDefault(name)
    vals = result.values.copy()
    for i in result.failed:
        vals[i] = _ELEMENT_DEFAULTS[name](result.context, i)
    return replace(result, values=vals, failed=())


def drop_failed(result: MeasureResult) -> MeasureResult:
    """Discard failing elements; a measure left with nothing becomes a failure."""
    if not result.failed:
        return result
    keep = np.setdiff1d(np.arange(result.values.size), result.failed)
    if keep.size == 0:
        return MeasureResult.fail(result.name, COMPUTATION)
    return MeasureResult(result.name, result.values[keep], context=result.context)
