import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from metafeat.dataset import from_arrays
from metafeat.infotheo import concentration, entropy, extract_infotheo, joint_entropy
from metafeat.summary import COMPUTATION, DOMAIN


def by_name(results):
    return {r.name: r for r in results}


def categorical(*columns, y):
    return from_arrays(np.array(columns, dtype=object).T, y,
                       kinds=["categorical"] * len(columns))


@pytest.mark.parametrize("values,expected", [
    (["a", "b"] * 4, 1.0),
    (["a"] * 5, 0.0),
    (["a", "a", "b", "c"], 1.5),
])
def test_entropy_examples(values, expected):
    assert entropy(np.array(values, dtype=object)) == pytest.approx(expected)


def test_concentration_identity_and_independence():
    x = np.array(list("aabbcc"), dtype=object)
    assert concentration(x, x) == pytest.approx(1.0)
    a = np.array(list("aabb"), dtype=object)
    b = np.array(list("xyxy"), dtype=object)
    assert concentration(a, b) == pytest.approx(0.0)


def test_concentration_three_by_two_oracle():
    x = list("aaabbbbccc")
    y = list("xxyxyyyxxy")
    assert concentration(np.array(x, dtype=object), np.array(y, dtype=object)) == \
        pytest.approx(oracles.concentration(x, y), rel=1e-12)


def test_concentration_is_asymmetric():
    x = list("aabbccdd")
    y = list("xxxxyyyy")
    ax, ay = np.array(x, dtype=object), np.array(y, dtype=object)
    assert concentration(ax, ay) == pytest.approx(1.0)
    assert concentration(ay, ax) == pytest.approx(oracles.concentration(y, x))
    assert concentration(ay, ax) < 1.0


def test_concentration_constant_target_is_undefined():
    assert concentration(np.array(list("ab"), dtype=object), np.array(list("xx"), dtype=object)) is None


def test_attribute_identical_to_class():
    y = list("ppqqrrpq")
    res = by_name(extract_infotheo(categorical(y, y=y)))
    assert res["mutInf"].values[0] == pytest.approx(res["classEnt"].values[0])
    assert res["eqNumAttr"].values[0] == pytest.approx(1.0)
    assert res["nsRatio"].values[0] == pytest.approx(0.0, abs=1e-12)


def test_independent_attribute_has_zero_information():
    res = by_name(extract_infotheo(categorical(list("aabb"), list("abab"), y=list("xyxy"))))
    assert res["mutInf"].values[0] == pytest.approx(0.0, abs=1e-12)
    assert res["mutInf"].values[1] == pytest.approx(1.0)


def test_zero_mean_information_is_missing():
    res = by_name(extract_infotheo(categorical(list("aabb"), y=list("xyxy"))))
    assert res["eqNumAttr"].exception == COMPUTATION
    assert res["nsRatio"].exception == COMPUTATION


def test_hand_table_joint_quantities():
    # two attributes over a 2x2x2 table
    a1 = list("00001111")
    a2 = list("01010011")
    y = list("00110111")
    res = by_name(extract_infotheo(categorical(a1, a2, y=y)))
    for i, a in enumerate((a1, a2)):
        assert res["jointEnt"].values[i] == pytest.approx(oracles.joint_entropy(a, y), rel=1e-12)
        assert res["mutInf"].values[i] == pytest.approx(oracles.mutual_information(a, y), abs=1e-12)


def test_attr_conc_covers_ordered_pairs():
    cols = [list("aabbccdd"), list("xyxyxyxy"), list("mmmmnnnn")]
    res = by_name(extract_infotheo(categorical(*cols, y=list("pqpqpqpq"))))
    assert res["attrConc"].values.size == 6


def test_constant_attribute_conc_elements_fail():
    res = by_name(extract_infotheo(categorical(list("aabb"), list("cccc"), y=list("xyxy"))))
    # conc(a0, a1) has a constant target side
    assert res["attrConc"].failed == (0,)


def test_no_categorical_columns_is_domain_failure():
    ds = from_arrays(np.arange(6, dtype=float), list("pqpqpq"))
    assert all(r.exception == DOMAIN for r in extract_infotheo(ds))


@st.composite
def categorical_problems(draw):
    n = draw(st.integers(4, 40))
    d = draw(st.integers(1, 4))
    cols = [draw(st.lists(st.sampled_from("abcde"), min_size=n, max_size=n)) for _ in range(d)]
    y = draw(st.lists(st.sampled_from("xyz"), min_size=n, max_size=n).filter(lambda v: len(set(v)) > 1))
    return cols, y


@settings(max_examples=100, deadline=None)
@given(categorical_problems())
def test_information_invariants(problem):
    cols, y = problem
    n = len(y)
    ds = categorical(*cols, y=y)
    res = by_name(extract_infotheo(ds))
    H, Hy, J, MI = (res[k].values for k in ("attrEnt", "classEnt", "jointEnt", "mutInf"))
    assert np.all(MI >= 0)
    assert np.all(MI <= np.minimum(H, Hy[0]) + 1e-12)
    for i, c in enumerate(cols):
        assert J[i] == pytest.approx(oracles.joint_entropy(c, y), abs=1e-12)
        assert J[i] == pytest.approx(H[i] + Hy[0] - MI[i], abs=1e-12)
    assert np.all(H <= math.log2(n) + 1e-12)
    assert Hy[0] <= math.log2(ds.q) + 1e-12
    for name in ("attrConc", "classConc"):
        v = res[name].values
        v = v[~np.isnan(v)]
        assert np.all((v >= -1e-12) & (v <= 1 + 1e-12))


def test_joint_entropy_symmetric():
    x = np.array(list("aabbc"), dtype=object)
    y = np.array(list("xyxyy"), dtype=object)
    assert joint_entropy(x, y) == pytest.approx(joint_entropy(y, x))
