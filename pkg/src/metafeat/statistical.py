"""Statistical measures over the numeric attributes of a dataset."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, stats

from .normality import is_normal
from .summary import DOMAIN, MeasureResult

DESCRIPTIVE = (
    "gMean", "hMean", "iqRange", "kurtosis", "mad", "max", "mean", "median",
    "min", "range", "sd", "skewness", "sparsity", "tMean", "var",
)
CORRELATION = ("cor", "cov", "nrCorAttr")
COUNTS = ("nrNorm", "nrOutliers")
PROPORTIONS = ("propNorm", "propOutliers")
DISCRIMINANT = ("canCor", "nrDisc", "wLambda", "sdRatio", "gravity", "eigenvalues")

SCALAR_MEASURES = ("nrCorAttr", "nrNorm", "nrOutliers", "propNorm", "propOutliers",
                   "nrDisc", "wLambda", "sdRatio", "gravity")

TRIM = 0.2


def _per_attribute(name, X, fn, **context):
    """Apply ``fn`` to each column; NaN results become failed elements."""
    vals = np.array([fn(X[:, j]) for j in range(X.shape[1])], dtype=float)
    failed = tuple(np.flatnonzero(~np.isfinite(vals)))
    return MeasureResult(name, vals, failed=failed, context=dict(context, size=len(vals)))


def _sd(x):
    return float(np.std(x, ddof=1)) if x.size > 1 else math.nan


def _var(x):
    return float(np.var(x, ddof=1)) if x.size > 1 else math.nan


def _moment(x, order):
    return float(np.mean((x - x.mean()) ** order))


def _kurtosis(x):
    sd = _sd(x)
    if not sd > 0:
        return math.nan
    return _moment(x, 4) / sd ** 4 - 3.0


def _skewness(x):
    sd = _sd(x)
    if not sd > 0:
        return math.nan
    return _moment(x, 3) / sd ** 3


def _gmean(x):
    if np.any(x <= 0):
        return math.nan
    return float(np.exp(np.mean(np.log(x))))


def _hmean(x):
    with np.errstate(divide="ignore"):
        total = np.sum(1.0 / x)
    # a zero value drives the reciprocal sum to infinity and the mean to 0
    if np.isinf(total):
        return 0.0
    if total == 0:
        return math.nan
    return float(x.size / total)


def trimmed_mean(x, alpha: float = TRIM) -> float:
    """Mean after dropping ``ceil(n * alpha)`` order statistics from each end."""
    xs = np.sort(x)
    n = xs.size
    k = min(math.ceil(n * alpha), (n - 1) // 2)
    return float(np.mean(xs[k: n - k]))


def _mad(x):
    med = np.median(x)
    return float(np.median(np.abs(x - med)))


def _iqr(x):
    q1, q3 = np.quantile(x, [0.25, 0.75])
    return float(q3 - q1)


def sparsity(values) -> float:
    values = np.asarray(values)
    n = values.size
    if n < 2:
        return 0.0
    phi = len(set(values.tolist()))
    return (n / phi - 1.0) / (n - 1.0)


_DESCRIPTIVE_FNS = {
    "gMean": _gmean,
    "hMean": _hmean,
    "iqRange": _iqr,
    "kurtosis": _kurtosis,
    "mad": _mad,
    "max": lambda x: float(np.max(x)),
    "mean": lambda x: float(np.mean(x)),
    "median": lambda x: float(np.median(x)),
    "min": lambda x: float(np.min(x)),
    "range": lambda x: float(np.ptp(x)),
    "sd": _sd,
    "skewness": _skewness,
    "tMean": trimmed_mean,
    "var": _var,
}


def extract_descriptive(dataset) -> list:
    """Per-attribute central tendency, dispersion and shape measures."""
    X = dataset.numeric_matrix()
    out = []
    for name in DESCRIPTIVE:
        if name == "sparsity":
            if dataset.d == 0:
                out.append(MeasureResult.fail(name, DOMAIN))
            else:
                out.append(MeasureResult(name, [sparsity(c.values) for c in dataset.columns]))
            continue
        if X.shape[1] == 0:
            out.append(MeasureResult.fail(name, DOMAIN))
            continue
        context = {"mean": X.mean(axis=0)} if name == "gMean" else {}
        out.append(_per_attribute(name, X, _DESCRIPTIVE_FNS[name], **context))
    return out


def correlation_matrix(X, method: str = "pearson") -> np.ndarray:
    """Pairwise correlation; entries involving a constant column are NaN."""
    d = X.shape[1]
    constant = np.ptp(X, axis=0) == 0
    if method == "spearman":
        X = np.apply_along_axis(stats.rankdata, 0, X)
        method = "pearson"
    if method == "pearson":
        with np.errstate(invalid="ignore", divide="ignore"):
            C = np.atleast_2d(np.corrcoef(X, rowvar=False))
    elif method == "kendall":
        C = np.eye(d)
        for i in range(d):
            for j in range(i + 1, d):
                if constant[i] or constant[j]:
                    continue
                C[i, j] = C[j, i] = stats.kendalltau(X[:, i], X[:, j]).statistic
    else:
        raise ValueError(f"unknown correlation method {method!r}")
    C = np.clip(C, -1.0, 1.0)
    C[constant, :] = np.nan
    C[:, constant] = np.nan
    return C


def extract_correlation(dataset, method: str = "pearson", tau: float = 0.5) -> list:
    X = dataset.numeric_matrix()
    d = X.shape[1]
    if d < 2 or X.shape[0] < 2:
        return [MeasureResult.fail(name, DOMAIN) for name in CORRELATION]
    iu = np.triu_indices(d, k=1)
    cor = np.abs(correlation_matrix(X, method)[iu])
    cov = np.abs(np.atleast_2d(np.cov(X, rowvar=False, ddof=1))[iu])
    failed = tuple(np.flatnonzero(np.isnan(cor)))
    defined = cor[~np.isnan(cor)]
    if defined.size:
        # undefined pairs count as uncorrelated
        nr_cor = MeasureResult("nrCorAttr", [np.sum(defined >= tau) / cor.size])
    else:
        nr_cor = MeasureResult.fail("nrCorAttr")
    return [
        MeasureResult("cor", cor, failed=failed, context={"size": cor.size}),
        MeasureResult("cov", cov),
        nr_cor,
    ]


def has_outlier(x) -> bool:
    q1, q3 = np.quantile(x, [0.25, 0.75])
    iqr = q3 - q1
    return bool(np.any((x < q1 - 1.5 * iqr) | (x > q3 + 1.5 * iqr)))


def extract_distribution_counts(dataset, seed: int = 0, proportions: bool = False) -> list:
    X = dataset.numeric_matrix()
    names = COUNTS + (PROPORTIONS if proportions else ())
    if X.shape[1] == 0:
        return [MeasureResult.fail(name, DOMAIN) for name in names]
    rng = np.random.default_rng(seed)
    nr_norm = sum(is_normal(X[:, j], rng=rng) for j in range(X.shape[1]))
    nr_out = sum(has_outlier(X[:, j]) for j in range(X.shape[1]))
    out = [MeasureResult("nrNorm", [nr_norm]), MeasureResult("nrOutliers", [nr_out])]
    if proportions:
        out += [MeasureResult("propNorm", [nr_norm / X.shape[1]]),
                MeasureResult("propOutliers", [nr_out / X.shape[1]])]
    return out


@dataclass(frozen=True)
class DiscriminantBasis:
    eigenvalues: np.ndarray  # descending, non-negative

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)

    @property
    def canonical_correlations(self) -> np.ndarray:
        lam = self.eigenvalues
        return np.sqrt(lam / (1.0 + lam))

    @property
    def wilks_lambda(self) -> float:
        return float(np.prod(1.0 / (1.0 + self.eigenvalues)))


def scatter_matrices(X, y, q):
    """Within-class and between-class scatter matrices."""
    mu = X.mean(axis=0)
    d = X.shape[1]
    W = np.zeros((d, d))
    B = np.zeros((d, d))
    for k in range(q):
        Xk = X[y == k]
        if len(Xk) == 0:
            continue
        mk = Xk.mean(axis=0)
        Dk = Xk - mk
        W += Dk.T @ Dk
        diff = (mk - mu)[:, None]
        B += len(Xk) * diff @ diff.T
    return W, B


def discriminant_basis(X, y, q) -> DiscriminantBasis:
    """Eigenvalues of W^-1 B via the symmetric generalized eigenproblem.

    A small ridge keeps W positive definite when it is singular.
    """
    W, B = scatter_matrices(X, y, q)
    d = X.shape[1]
    rank = np.linalg.matrix_rank(X - X.mean(axis=0))
    z = min(q - 1, rank)
    if z <= 0:
        return DiscriminantBasis(np.empty(0))
    w_eig = np.linalg.eigvalsh(W)
    scale = np.trace(W) / d if np.trace(W) > 0 else 1.0
    if w_eig.min() <= 1e-12 * max(w_eig.max(), 1.0):
        W = W + 1e-10 * scale * np.eye(d)
    lam = linalg.eigh(B, W, eigvals_only=True)[::-1]
    return DiscriminantBasis(np.clip(lam[:z], 0.0, None))


def sd_ratio(X, y, q):
    """Box's M based homogeneity statistic; None when a log-determinant is undefined."""
    n, d = X.shape
    sizes = np.bincount(y, minlength=q)
    if np.any(sizes < 2) or n - q <= 0:
        return None
    covs = [np.atleast_2d(np.cov(X[y == k], rowvar=False, ddof=1)) for k in range(q)]
    pooled = sum((sizes[k] - 1) * covs[k] for k in range(q)) / (n - q)
    sign, logdet_pooled = np.linalg.slogdet(pooled)
    if sign <= 0:
        return None
    total = 0.0
    for k in range(q):
        sign_k, logdet_k = np.linalg.slogdet(covs[k])
        if sign_k <= 0 or not np.isfinite(logdet_k):
            return None
        # log|S_k^-1 S| = log|S| - log|S_k|
        total += (sizes[k] - 1) * (logdet_pooled - logdet_k)
    gamma = 1.0 - (2 * d ** 2 + 3 * d - 1) / (6.0 * (d + 1) * (q - 1)) * (
        np.sum(1.0 / (sizes - 1)) - 1.0 / (n - q))
    M = gamma * total
    return float(np.exp(M / (d * np.sum(sizes - 1))))


def gravity(X, y, q) -> float:
    counts = np.bincount(y, minlength=q)
    present = np.flatnonzero(counts)
    major = present[np.argmax(counts[present])]
    minor = present[np.argmin(counts[present])]
    return float(np.linalg.norm(X[y == major].mean(axis=0) - X[y == minor].mean(axis=0)))


def covariance_eigenvalues(X) -> np.ndarray:
    S = np.atleast_2d(np.cov(X, rowvar=False, ddof=1))
    return np.linalg.eigvalsh(S)[::-1]


def extract_discriminant(dataset) -> list:
    X = dataset.numeric_matrix()
    if X.shape[1] == 0:
        return [MeasureResult.fail(name, DOMAIN) for name in DISCRIMINANT]
    y, q = dataset.y, dataset.q
    basis = discriminant_basis(X, y, q)
    out = []
    if basis.rank:
        out.append(MeasureResult("canCor", basis.canonical_correlations))
    else:
        out.append(MeasureResult.fail("canCor"))
    out.append(MeasureResult("nrDisc", [basis.rank]))
    out.append(MeasureResult("wLambda", [basis.wilks_lambda]))
    ratio = sd_ratio(X, y, q)
    out.append(MeasureResult.fail("sdRatio") if ratio is None or not np.isfinite(ratio)
               else MeasureResult("sdRatio", [ratio]))
    out.append(MeasureResult("gravity", [gravity(X, y, q)]))
    if X.shape[0] < 2:
        out.append(MeasureResult.fail("eigenvalues"))
    else:
        out.append(MeasureResult("eigenvalues", covariance_eigenvalues(X)))
    return out
