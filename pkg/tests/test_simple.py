import numpy as np
import pytest
from hypothesis import given, settings

from metafeat.dataset import from_arrays
from metafeat.simple import extract_simple
from metafeat.summary import apply_measure_default
from test_dataset import datasets


def by_name(results):
    return {r.name: r for r in results}


def test_all_numeric_cat_to_num_defaults_to_d():
    ds = from_arrays(np.arange(12, dtype=float).reshape(4, 3), ["p", "q", "p", "q"])
    res = by_name(extract_simple(ds))
    assert res["catToNum"].exception is not None
    assert apply_measure_default(res["catToNum"]).values.tolist() == [3.0]
    assert apply_measure_default(res["numToCat"]).values.tolist() == [3.0]


def test_balanced_freq_class():
    ds = from_arrays(np.arange(10, dtype=float), ["p", "q"] * 5)
    assert by_name(extract_simple(ds))["freqClass"].values.tolist() == [0.5, 0.5]


def test_ratios():
    ds = from_arrays(np.ones((8, 4)) * np.arange(8)[:, None], ["p", "q"] * 4)
    res = by_name(extract_simple(ds))
    assert res["attrToInst"].values[0] == 0.5
    assert res["instToAttr"].values[0] == 2.0


def test_counts_on_mixed(mixed):
    res = by_name(extract_simple(mixed))
    assert res["nrNum"].values[0] == 2 and res["nrCat"].values[0] == 2
    assert res["nrBin"].values[0] == 1  # the u/v column
    assert res["catToNum"].values[0] == 1.0 and res["numToCat"].values[0] == 1.0


def test_nr_bin_counts_two_valued_numeric_columns():
    X = np.array([[0.0, 1.0], [1.0, 2.0], [0.0, 3.0], [1.0, 4.0]])
    res = by_name(extract_simple(from_arrays(X, ["p", "q", "p", "q"])))
    assert res["nrBin"].values[0] == 1


@settings(max_examples=80, deadline=None)
@given(datasets())
def test_simple_invariants(ds):
    res = by_name(extract_simple(ds))
    freq = res["freqClass"].values
    assert len(freq) == ds.q and abs(freq.sum() - 1) <= 1e-12
    assert res["nrCat"].values[0] + res["nrNum"].values[0] == ds.d
    assert res["nrBin"].values[0] <= ds.d
    assert res["attrToInst"].values[0] * res["instToAttr"].values[0] == pytest.approx(1, abs=1e-12)
