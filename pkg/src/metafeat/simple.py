"""Simple measures: counts and ratios of attributes, instances and classes."""

import numpy as np

from .summary import MeasureResult

SCALAR_MEASURES = (
    "attrToInst", "catToNum", "instToAttr", "nrAttr", "nrBin",
    "nrCat", "nrClass", "nrInst", "nrNum", "numToCat",
)
VECTOR_MEASURES = ("freqClass",)


def extract_simple(dataset) -> list:
    n, d, q = dataset.n, dataset.d, dataset.q
    nr_num = len(dataset.numeric_columns)
    nr_cat = d - nr_num
    nr_bin = sum(1 for c in dataset.columns if c.distinct_count == 2)

    def ratio(name, num, den):
        if den == 0:
            return MeasureResult.fail(name, d=d)
        return MeasureResult(name, [num / den])

    def type_ratio(name, num, den):
        # either type missing makes both type ratios undefined
        if nr_num == 0 or nr_cat == 0:
            return MeasureResult.fail(name, d=d)
        return MeasureResult(name, [num / den])

    freq = np.bincount(dataset.y, minlength=q) / n
    return [
        ratio("attrToInst", d, n),
        type_ratio("catToNum", nr_cat, nr_num),
        ratio("instToAttr", n, d),
        MeasureResult("nrAttr", [d]),
        MeasureResult("nrBin", [nr_bin]),
        MeasureResult("nrCat", [nr_cat]),
        MeasureResult("nrClass", [q]),
        MeasureResult("nrInst", [n]),
        MeasureResult("nrNum", [nr_num]),
        type_ratio("numToCat", nr_num, nr_cat),
        MeasureResult("freqClass", freq),
    ]
