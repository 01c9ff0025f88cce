"""Model-based measures: structure of a decision tree induced on the dataset."""

import numpy as np

from .summary import MeasureResult
from .tree import TreeModel, induce_from_dataset

MEASURES = (
    "leaves", "leavesBranch", "leavesCorrob", "leavesHomo", "leavesPerClass",
    "nodes", "nodesPerAttr", "nodesPerInst", "nodesPerLevel", "nodesRepeated",
    "treeDepth", "treeImbalance", "treeShape", "varImportance",
)
SCALAR_MEASURES = ("leaves", "nodes", "nodesPerAttr", "nodesPerInst")


def _shape(prob):
    return -prob * np.log2(prob)


def extract_model_based(tree: TreeModel, n: int, d: int | None = None) -> list:
    """All fourteen tree-structure measures for ``tree`` trained on ``n`` instances."""
    d = tree.n_attributes if d is None else d
    leaves = tree.leaves
    nodes = tree.nodes
    leaf_levels = np.array([leaf.level for leaf in leaves], dtype=float)
    prob = 2.0 ** -leaf_levels
    shape = _shape(prob)

    out = [
        MeasureResult("leaves", [len(leaves)]),
        MeasureResult("leavesBranch", leaf_levels),
        MeasureResult("leavesCorrob", [leaf.inst / n for leaf in leaves]),
    ]
    if np.any(shape == 0):
        # a single leaf at the root has shape 0
        out.append(MeasureResult.fail("leavesHomo"))
    else:
        out.append(MeasureResult("leavesHomo", len(leaves) / shape))
    per_class = np.bincount([leaf.prediction for leaf in leaves], minlength=tree.n_classes)
    out.append(MeasureResult("leavesPerClass", per_class / len(leaves)))

    out.append(MeasureResult("nodes", [len(nodes)]))
    if d > 0:
        out.append(MeasureResult("nodesPerAttr", [len(nodes) / d]))
    else:
        out.append(MeasureResult.fail("nodesPerAttr"))
    out.append(MeasureResult("nodesPerInst", [len(nodes) / n]))
    if nodes:
        node_levels = np.array([node.level for node in nodes])
        out.append(MeasureResult("nodesPerLevel", np.bincount(node_levels)))
        repeated = np.bincount([node.attr for node in nodes], minlength=tree.n_attributes)
        out.append(MeasureResult("nodesRepeated", repeated[repeated > 0]))
    else:
        out.append(MeasureResult("nodesPerLevel", [0]))
        out.append(MeasureResult("nodesRepeated", [0]))

    out.append(MeasureResult("treeDepth", [el.level for el in tree.elements()]))
    same = np.array([np.sum(prob == p) for p in prob])
    z = prob * same
    out.append(MeasureResult("treeImbalance", _shape(z)))
    out.append(MeasureResult("treeShape", shape))
    out.append(MeasureResult("varImportance", tree.importance))
    return out


def extract_model(dataset, min_split: int = 20, complexity: float = 0.01, seed: int = 0):
    """Induce the tree on ``dataset``; return ``(tree, measures)``."""
    tree = induce_from_dataset(dataset, min_split=min_split, complexity=complexity, seed=seed)
    return tree, extract_model_based(tree, dataset.n, dataset.d)
