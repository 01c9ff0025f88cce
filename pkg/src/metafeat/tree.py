"""Binary CART induction with Gini impurity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class TreeElement:
    """A split node (``attr`` set) or a leaf (``prediction`` set)."""

    level: int
    inst: int
    counts: np.ndarray
    attr: int | None = None
    threshold: float | None = None
    category: str | None = None
    left: "TreeElement | None" = None
    right: "TreeElement | None" = None
    prediction: int | None = None
    decrease: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.attr is None

    def goes_left(self, value) -> bool:
        if self.category is not None:
            return value == self.category
        return value <= self.threshold


@dataclass
class TreeModel:
    root: TreeElement
    n_attributes: int
    n_classes: int

    def elements(self) -> list:
        """Every element in pre-order."""
        out, stack = [], [self.root]
        while stack:
            el = stack.pop()
            out.append(el)
            if not el.is_leaf:
                stack.append(el.right)
                stack.append(el.left)
        return out

    @property
    def nodes(self) -> list:
        return [e for e in self.elements() if not e.is_leaf]

    @property
    def leaves(self) -> list:
        return [e for e in self.elements() if e.is_leaf]

    @property
    def importance(self) -> np.ndarray:
        """Gini decrease per attribute, normalized to sum 1 (all zeros without splits)."""
        raw = np.zeros(self.n_attributes)
        for node in self.nodes:
            raw[node.attr] += node.decrease
        total = raw.sum()
        return raw / total if total > 0 else np.zeros_like(raw)

    def predict_one(self, row) -> int:
        el = self.root
        while not el.is_leaf:
            el = el.left if el.goes_left(row[el.attr]) else el.right
        return el.prediction

    def predict(self, columns) -> np.ndarray:
        """``columns`` is a list of per-attribute value arrays."""
        n = len(columns[0]) if columns else 0
        return np.array([self.predict_one([c[i] for c in columns]) for i in range(n)], dtype=int)

    def dump(self) -> str:
        lines = []

        def walk(el, indent):
            pad = "  " * indent
            if el.is_leaf:
                lines.append(f"{pad}leaf class={el.prediction} inst={el.inst} level={el.level}")
                return
            cond = f"== {el.category!r}" if el.category is not None else f"<= {el.threshold:.6g}"
            lines.append(f"{pad}a{el.attr} {cond} inst={el.inst} level={el.level}")
            walk(el.left, indent + 1)
            walk(el.right, indent + 1)

        walk(self.root, 0)
        return "\n".join(lines)


def gini(counts) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.sum(p * p))


def _weighted_gini(counts):
    # n * gini = n - sum(c^2) / n, row-wise
    n = counts.sum(axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(n > 0, n - np.sum(counts * counts, axis=-1) / np.where(n > 0, n, 1), 0.0)


def numeric_splits(values, y, q):
    """Candidate thresholds (midpoints) and the weighted impurity decrease of each."""
    if len(values) < 2:
        return np.empty(0), np.empty(0)
    order = np.argsort(values, kind="stable")
    v = values[order]
    onehot = np.zeros((len(v), q))
    onehot[np.arange(len(v)), y[order]] = 1.0
    left = np.cumsum(onehot, axis=0)[:-1]
    total = onehot.sum(axis=0)
    right = total - left
    valid = v[1:] > v[:-1]
    if not np.any(valid):
        return np.empty(0), np.empty(0)
    parent = _weighted_gini(total)
    decrease = parent - _weighted_gini(left[valid]) - _weighted_gini(right[valid])
    thresholds = (v[:-1][valid] + v[1:][valid]) / 2.0
    return thresholds, decrease


def categorical_splits(values, y, q):
    """One-category-vs-rest candidates in sorted category order."""
    cats = sorted(set(values.tolist()))
    if len(cats) < 2:
        return [], np.empty(0)
    total = np.bincount(y, minlength=q).astype(float)
    parent = _weighted_gini(total)
    decrease = []
    for cat in cats:
        mask = values == cat
        left = np.bincount(y[mask], minlength=q).astype(float)
        decrease.append(parent - _weighted_gini(left) - _weighted_gini(total - left))
    return cats, np.array(decrease)


def best_split(columns, y, q, attrs=None):
    """Exhaustive search; ties go to the lowest attribute then lowest threshold.

    Returns ``(decrease, attr, threshold, category)`` or None.
    """
    best = None
    for j in (range(len(columns)) if attrs is None else attrs):
        col = columns[j]
        if col.dtype == object:
            cats, dec = categorical_splits(col, y, q)
            for cat, g in zip(cats, dec):
                if best is None or g > best[0] + 1e-12:
                    best = (float(g), j, None, cat)
        else:
            thr, dec = numeric_splits(col, y, q)
            if dec.size == 0:
                continue
            k = int(np.argmax(dec))  # first maximum = lowest threshold
            if best is None or dec[k] > best[0] + 1e-12:
                best = (float(dec[k]), j, float(thr[k]), None)
    return best


def _majority(counts) -> int:
    return int(np.argmax(counts))  # ties: lowest class index


def induce_cart(columns, y, q, min_split: int = 20, complexity: float = 0.01,
                max_depth: int | None = None, seed: int = 0) -> TreeModel:
    """Grow an unpruned binary tree.

    ``columns`` holds one array per attribute: float arrays are numeric,
    object arrays categorical. A node is not split when it is pure, holds
    fewer than ``min_split`` instances, or its best split lowers the
    weighted Gini impurity by less than ``complexity`` times that of the
    root. ``seed`` is accepted for interface stability; ties are broken
    deterministically.
    """
    y = np.asarray(y, dtype=int)
    d = len(columns)
    root_counts = np.bincount(y, minlength=q).astype(float)
    min_decrease = complexity * _weighted_gini(root_counts)

    def grow(idx, level):
        yy = y[idx]
        counts = np.bincount(yy, minlength=q).astype(float)
        el = TreeElement(level=level, inst=len(idx), counts=counts)
        stop = (
            np.count_nonzero(counts) <= 1
            or len(idx) < min_split
            or (max_depth is not None and level >= max_depth)
        )
        split = None if stop else best_split([c[idx] for c in columns], yy, q)
        if split is None or split[0] <= 1e-12 or split[0] < min_decrease:
            el.prediction = _majority(counts)
            return el
        dec, attr, thr, cat = split
        col = columns[attr][idx]
        mask = (col == cat) if cat is not None else (col <= thr)
        el.attr, el.threshold, el.category = attr, thr, cat
        el.decrease = dec
        el.left = grow(idx[mask], level + 1)
        el.right = grow(idx[~mask], level + 1)
        return el

    root = grow(np.arange(len(y)), 0)
    return TreeModel(root, d, q)


def dataset_columns(dataset) -> list:
    return [c.values for c in dataset.columns]


def induce_from_dataset(dataset, **kwargs) -> TreeModel:
    return induce_cart(dataset_columns(dataset), dataset.y, dataset.q, **kwargs)
