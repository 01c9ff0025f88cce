"""Information-theoretic measures over categorical attributes (log base 2)."""

import numpy as np

from .summary import COMPUTATION, DOMAIN, MeasureResult

MEASURES = ("attrConc", "attrEnt", "classConc", "classEnt", "eqNumAttr", "jointEnt", "mutInf", "nsRatio")
SCALAR_MEASURES = ("classEnt", "eqNumAttr", "nsRatio")

# mean mutual information below this is treated as zero
_MI_EPS = 1e-12


def _codes(x):
    if hasattr(x, "codes"):
        return x.codes
    _, inv = np.unique(np.asarray(x, dtype=object).astype(str), return_inverse=True)
    return inv


def _entropy_from_counts(counts) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def entropy(column) -> float:
    """Shannon entropy in bits of a categorical column (a Column or array)."""
    return _entropy_from_counts(np.bincount(_codes(column)))


def contingency(x_codes, y_codes) -> np.ndarray:
    rows, cols = x_codes.max() + 1, y_codes.max() + 1
    return np.bincount(x_codes * cols + y_codes, minlength=rows * cols).reshape(rows, cols)


def joint_entropy(x, y) -> float:
    return _entropy_from_counts(contingency(_codes(x), _codes(y)).ravel())


def _conc_from_table(table):
    pi = table / table.sum()
    row = pi.sum(axis=1)
    col = pi.sum(axis=0)
    denom = 1.0 - np.sum(col ** 2)
    if denom <= 0:
        return None
    nz = row > 0
    num = np.sum(pi[nz] ** 2 / row[nz, None]) - np.sum(col ** 2)
    return float(num / denom)


def concentration(x, y):
    """Goodman-Kruskal tau of ``y`` given ``x``: how well x predicts y.

    Returns None when ``y`` is constant.
    """
    return _conc_from_table(contingency(_codes(x), _codes(y)))


def extract_infotheo(dataset) -> list:
    cols = dataset.categorical_columns
    if not cols:
        return [MeasureResult.fail(name, DOMAIN) for name in MEASURES]
    y = dataset.y
    d = len(cols)
    class_ent = entropy(y)
    attr_ent = np.array([entropy(c) for c in cols])
    joint_ent = np.array([joint_entropy(c, y) for c in cols])
    mut_inf = np.maximum(attr_ent + class_ent - joint_ent, 0.0)

    conc_pairs = []
    for i in range(d):
        for j in range(d):
            if i != j:
                conc_pairs.append(concentration(cols[i], cols[j]))
    attr_conc = np.array([np.nan if v is None else v for v in conc_pairs], dtype=float)
    class_conc = np.array([np.nan if (v := concentration(c, y)) is None else v for c in cols], dtype=float)

    out = []
    if attr_conc.size:
        out.append(MeasureResult("attrConc", attr_conc, failed=tuple(np.flatnonzero(np.isnan(attr_conc)))))
    else:
        out.append(MeasureResult.fail("attrConc", DOMAIN))
    out += [
        MeasureResult("attrEnt", attr_ent),
        MeasureResult("classConc", class_conc, failed=tuple(np.flatnonzero(np.isnan(class_conc)))),
        MeasureResult("classEnt", [class_ent]),
    ]
    mean_mi = mut_inf.mean()
    if mean_mi < _MI_EPS:
        out.append(MeasureResult.fail("eqNumAttr", COMPUTATION))
    else:
        out.append(MeasureResult("eqNumAttr", [class_ent / mean_mi]))
    out += [MeasureResult("jointEnt", joint_ent), MeasureResult("mutInf", mut_inf)]
    if mean_mi < _MI_EPS:
        out.append(MeasureResult.fail("nsRatio", COMPUTATION))
    else:
        out.append(MeasureResult("nsRatio", [(attr_ent.mean() - mean_mi) / mean_mi]))
    return out
