import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from metafeat.analysis import (
    MetaBase, compare_metabases, correlation_matrix, format_table, missing_report,
    redundancy_filter, spearman, timing_report,
)


def metabase(columns, n=None, meta=None):
    n = n or len(next(iter(columns.values())))
    return MetaBase([f"d{i}" for i in range(n)], {k: np.asarray(v, float) for k, v in columns.items()}, meta or {})


def random_metabase(k=8, n=20, seed=0):
    rng = np.random.default_rng(seed)
    return metabase({f"statistical.f{j}.mean": rng.normal(size=n) for j in range(k)})


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=20, max_size=20))
def test_spearman_matches_oracle(pairs):
    x = np.array([p[0] for p in pairs], float)
    y = np.array([p[1] for p in pairs], float)
    expected = oracles.spearman(list(x), list(y))
    got = spearman(x, y)
    if np.isnan(expected):
        assert np.isnan(got)
    else:
        assert got == pytest.approx(expected, abs=1e-12)


def test_spearman_pairwise_complete():
    x = np.array([1.0, 2, np.nan, 4, 5])
    y = np.array([2.0, 4, 1, np.nan, 10])
    assert spearman(x, y) == pytest.approx(oracles.spearman([1, 2, 5], [2, 4, 10]))


def test_bulk_matrix_matches_pairwise():
    mb = random_metabase(k=5)
    mb.columns["statistical.f1.mean"][[2, 7]] = np.nan
    mb.columns["statistical.const.mean"] = np.ones(20)
    names, C = correlation_matrix(mb)
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i != j:
                expected = abs(spearman(mb.columns[a], mb.columns[b]))
                assert (np.isnan(C[i, j]) and np.isnan(expected)) or C[i, j] == pytest.approx(expected, abs=1e-12)


def test_duplicate_removed_at_one():
    mb = random_metabase()
    mb.columns["statistical.f3_dup.mean"] = mb.columns["statistical.f3.mean"].copy()
    rep = redundancy_filter(mb, 1.0)
    assert rep.removed == {"statistical.f3_dup.mean": "statistical.f3.mean"}
    assert rep.proportion_removed == pytest.approx(1 / 9)


def test_orthogonal_features_survive():
    # columns built from independent permutations stay well below 0.95
    mb = random_metabase(k=6, n=40, seed=3)
    names, C = correlation_matrix(mb)
    assert np.all(C[~np.eye(len(names), dtype=bool)] < 0.95)
    assert redundancy_filter(mb, 0.95).removed == {}


def test_threshold_one_removes_perfectly_correlated_fraction():
    rng = np.random.default_rng(4)
    base = rng.normal(size=20)
    mb = metabase({
        "simple.a": base, "simple.b": np.exp(base), "simple.c": -base ** 3,
        "simple.d": rng.normal(size=20), "simple.e": rng.normal(size=20),
    })
    names, C = correlation_matrix(mb)
    perfect = {names[j] for i in range(5) for j in range(i + 1, 5) if C[i, j] == pytest.approx(1)}
    rep = redundancy_filter(mb, 1.0)
    assert len(rep.removed) == len(perfect) == 2
    assert rep.proportion_removed == pytest.approx(2 / 5)


def test_constant_features_excluded():
    mb = random_metabase(k=3)
    mb.columns["simple.nrClass"] = np.full(20, 2.0)
    rep = redundancy_filter(mb, 0.9)
    assert rep.constant == ["simple.nrClass"] and rep.total == 3


def test_filter_preconditions():
    with pytest.raises(ValueError):
        redundancy_filter(random_metabase(), 0.0)
    with pytest.raises(ValueError):
        redundancy_filter(metabase({"simple.a": [1.0]}), 0.9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_filter_partition_and_determinism(seed):
    rng = np.random.default_rng(seed)
    base = rng.normal(size=(20, 3))
    cols = {f"model.m{j}.mean": base[:, j % 3] + rng.normal(size=20) * rng.uniform(0, 1) for j in range(9)}
    mb = metabase(cols)
    rep = redundancy_filter(mb, 0.9)
    assert set(rep.kept) | set(rep.removed) == set(mb.features) - set(rep.constant)
    assert not set(rep.kept) & set(rep.removed)
    assert redundancy_filter(mb, 0.9).to_dict() == rep.to_dict()


def test_missing_report_counts():
    mb = metabase({
        "statistical.a.mean": [1.0, np.nan, 3.0],
        "statistical.a.sd": [np.nan, np.nan, 1.0],
        "simple.nrAttr": [1.0, 2.0, 3.0],
    })
    rep = missing_report(mb)
    assert rep["by_group"]["statistical"]["missing"] == 3
    assert rep["by_group"]["simple"]["missing"] == 0
    assert rep["by_summary"]["sd"]["missing"] == 2
    assert rep["cells"] == 9 and rep["percent"] == pytest.approx(100 * 3 / 9)


def test_missing_report_zero():
    rep = missing_report(random_metabase())
    assert rep["missing"] == 0 and all(v["percent"] == 0 for v in rep["by_group"].values())


def test_missing_report_skips_error_rows():
    mb = metabase({"simple.nrAttr": [1.0, np.nan]}, meta={"error": ["", "ParseError: x"]})
    assert missing_report(mb)["missing"] == 0


def test_timing_report_rows():
    meta = {"n": ["300", "100"], "d": ["3", "3"], "q": ["2", "2"],
            "time.simple": ["0.001", "0.002"], "time.landmarking": ["0.2", ""]}
    mb = metabase({"simple.nrAttr": [3.0, 3.0]}, meta=meta)
    rows = timing_report(mb)
    assert [r["dataset"] for r in rows] == ["d1", "d0"]
    assert rows[0]["flagged"] and not rows[1]["flagged"]
    single = timing_report(metabase({"simple.nrAttr": [3.0]}, meta={"n": ["5"], "time.simple": ["0.1"]}))
    assert len(single) == 1


def test_landmarking_time_grows_with_n():
    from conftest import mixed_dataset
    from metafeat.engine import run_extraction

    small = min(run_extraction(mixed_dataset(n=100, seed=0)).timings["landmarking"] for _ in range(3))
    large = min(run_extraction(mixed_dataset(n=1500, seed=0)).timings["landmarking"] for _ in range(3))
    assert large >= small


def test_compare_aligns_shared_keys():
    a = metabase({"simple.x": [1.0, 2, 3, 4], "landmarking.oneNN.9": [1.0, 2, 3, 4]})
    b = MetaBase(["d3", "d2", "d1", "d0"], {"simple.x": np.array([8.0, 6, 4, 2])})
    rep = compare_metabases(a, b)
    assert rep["correlation"]["simple.x"] == pytest.approx(1.0)
    assert rep["skipped"]["only_first"] == ["landmarking.oneNN.9"]


def test_format_table_alignment():
    out = format_table(["a", "bb"], [[1.5, None], ["xyz", 2]]).splitlines()
    assert len({len(line) for line in out}) == 1
