"""Brute-force reference implementations in plain Python.

Nothing here touches numpy or the package under test: every quantity is
evaluated straight from its defining sum over plain lists.
"""

import math
from collections import Counter
from itertools import combinations, permutations


def mean(x):
    return sum(x) / len(x)


def median(x):
    s = sorted(x)
    n = len(s)
    return s[n // 2] if n % 2 else (s[n // 2 - 1] + s[n // 2]) / 2


def quantile7(x, p):
    s = sorted(x)
    h = (len(s) - 1) * p
    lo = math.floor(h)
    hi = min(lo + 1, len(s) - 1)
    return s[lo] + (h - lo) * (s[hi] - s[lo])


def sd(x):
    m = mean(x)
    return math.sqrt(sum((v - m) ** 2 for v in x) / (len(x) - 1))


def var(x):
    return sd(x) ** 2


def moment(x, j):
    m = mean(x)
    return sum((v - m) ** j for v in x) / len(x)


def kurtosis(x):
    s = sd(x)
    return math.nan if s == 0 else moment(x, 4) / s ** 4 - 3


def skewness(x):
    s = sd(x)
    return math.nan if s == 0 else moment(x, 3) / s ** 3


def gmean(x):
    if any(v <= 0 for v in x):
        return math.nan
    prod = 1.0
    for v in x:
        prod *= v
    return prod ** (1 / len(x))


def hmean(x):
    if any(v == 0 for v in x):
        return 0.0
    return len(x) / sum(1 / v for v in x)


def tmean(x, alpha=0.2):
    s = sorted(x)
    n = len(s)
    i = min(math.ceil(n * alpha), (n - 1) // 2)
    kept = s[i:n - i]
    return sum(kept) / len(kept)


def mad(x):
    m = median(x)
    return median([abs(v - m) for v in x])


def sparsity(x):
    n = len(x)
    return (n / len(set(x)) - 1) / (n - 1)


def pearson(x, y):
    mx, my = mean(x), mean(y)
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        return math.nan
    return sxy / math.sqrt(sxx * syy)


def cov(x, y):
    mx, my = mean(x), mean(y)
    return sum((a - mx) * (b - my) for a, b in zip(x, y)) / (len(x) - 1)


def ranks(x):
    """Average ranks, 1-based."""
    out = []
    for v in x:
        below = sum(1 for u in x if u < v)
        equal = sum(1 for u in x if u == v)
        out.append(below + (equal + 1) / 2)
    return out


def spearman(x, y):
    return pearson(ranks(x), ranks(y))


def has_outlier(x):
    q1, q3 = quantile7(x, 0.25), quantile7(x, 0.75)
    iqr = q3 - q1
    return any(v < q1 - 1.5 * iqr or v > q3 + 1.5 * iqr for v in x)


def entropy(x):
    n = len(x)
    return -sum((c / n) * math.log2(c / n) for c in Counter(x).values())


def joint_entropy(x, y):
    return entropy(list(zip(x, y)))


def mutual_information(x, y):
    # sum over the joint distribution, not via the entropy identity
    n = len(x)
    px, py, pxy = Counter(x), Counter(y), Counter(zip(x, y))
    return sum((c / n) * math.log2((c / n) / ((px[a] / n) * (py[b] / n))) for (a, b), c in pxy.items())


def concentration(x, y):
    n = len(x)
    xs, ys = sorted(set(x)), sorted(set(y))
    pi = {(a, b): 0.0 for a in xs for b in ys}
    for a, b in zip(x, y):
        pi[a, b] += 1 / n
    row = {a: sum(pi[a, b] for b in ys) for a in xs}
    col = {b: sum(pi[a, b] for a in xs) for b in ys}
    denom = 1 - sum(v * v for v in col.values())
    if denom == 0:
        return math.nan
    num = sum(pi[a, b] ** 2 / row[a] for a in xs for b in ys) - sum(v * v for v in col.values())
    return num / denom


def one_hot(column):
    cats = list(dict.fromkeys(column))
    return [[1.0 if v == c else 0.0 for v in column] for c in cats]


def equal_frequency(column, bins):
    """Label = floor(rank_of_first_tie * bins / n) with 0-based ranks."""
    n = len(column)
    return [str(sum(1 for u in column if u < v) * bins // n) for v in column]


def simple_measures(columns, kinds, y):
    n, d = len(y), len(columns)
    nr_num = sum(k == "numeric" for k in kinds)
    nr_cat = d - nr_num
    counts = Counter(y)
    order = list(dict.fromkeys(y))
    return {
        "attrToInst": [d / n],
        "catToNum": [nr_cat / nr_num if nr_num else math.nan],
        "instToAttr": [n / d],
        "nrAttr": [d],
        "nrBin": [sum(len(set(c)) == 2 for c in columns)],
        "nrCat": [nr_cat],
        "nrClass": [len(counts)],
        "nrInst": [n],
        "nrNum": [nr_num],
        "numToCat": [nr_num / nr_cat if nr_cat else math.nan],
        "freqClass": [counts[c] / n for c in order],
    }


def statistical_measures(numeric_columns, tau=0.5):
    """Per-attribute and pairwise statistical measures (NaN marks a failed element)."""
    cols = numeric_columns
    per = {
        "mean": mean, "median": median, "min": min, "max": max,
        "range": lambda x: max(x) - min(x),
        "iqRange": lambda x: quantile7(x, 0.75) - quantile7(x, 0.25),
        "sd": sd, "var": var, "mad": mad, "gMean": gmean, "hMean": hmean,
        "tMean": tmean, "kurtosis": kurtosis, "skewness": skewness, "sparsity": sparsity,
    }
    out = {name: [fn(c) for c in cols] for name, fn in per.items()}
    pairs = list(combinations(range(len(cols)), 2))
    out["cor"] = [abs(pearson(cols[i], cols[j])) for i, j in pairs]
    out["cov"] = [abs(cov(cols[i], cols[j])) for i, j in pairs]
    out["nrCorAttr"] = [sum(1 for v in out["cor"] if not math.isnan(v) and v >= tau) / len(pairs)]
    out["nrOutliers"] = [sum(has_outlier(c) for c in cols)]
    return out


def infotheo_measures(columns, y):
    d = len(columns)
    attr_ent = [entropy(c) for c in columns]
    class_ent = entropy(y)
    mi = [mutual_information(c, y) for c in columns]
    mean_mi = mean(mi)
    return {
        "attrConc": [concentration(columns[i], columns[j]) for i, j in permutations(range(d), 2)],
        "attrEnt": attr_ent,
        "classConc": [concentration(c, y) for c in columns],
        "classEnt": [class_ent],
        "eqNumAttr": [class_ent / mean_mi],
        "jointEnt": [joint_entropy(c, y) for c in columns],
        "mutInf": mi,
        "nsRatio": [(mean(attr_ent) - mean_mi) / mean_mi],
    }


def weighted_gini(labels):
    n = len(labels)
    if n == 0:
        return 0.0
    return n - sum(c * c for c in Counter(labels).values()) / n


def exhaustive_best_split(rows, y):
    """Best (decrease, attr, threshold) over every midpoint of every numeric attribute.

    Ties keep the earliest candidate in (attribute, threshold) order.
    """
    parent = weighted_gini(y)
    best = None
    for j in range(len(rows[0])):
        values = sorted(set(r[j] for r in rows))
        for a, b in zip(values, values[1:]):
            thr = (a + b) / 2
            left = [c for r, c in zip(rows, y) if r[j] <= thr]
            right = [c for r, c in zip(rows, y) if r[j] > thr]
            dec = parent - weighted_gini(left) - weighted_gini(right)
            if best is None or dec > best[0] + 1e-12:
                best = (dec, j, thr)
    return best
