"""Shapiro-Wilk W test using Royston's (1995) coefficient and p-value approximations."""

import math

import numpy as np
from scipy.special import ndtr, ndtri

MAX_N = 5000

_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)


def _poly(coefs, x):
    # ascending powers
    return sum(c * x ** i for i, c in enumerate(coefs))


def _half_coefficients(n: int) -> np.ndarray:
    """Positive weights for the lower half of the order statistics."""
    nn2 = n // 2
    if n == 3:
        return np.array([math.sqrt(0.5)])
    m = ndtri((np.arange(1, nn2 + 1) - 0.375) / (n + 0.25))
    summ2 = 2.0 * np.sum(m ** 2)
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a = np.empty(nn2)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt((summ2 - 2 * m[0] ** 2 - 2 * m[1] ** 2) / (1 - 2 * a1 ** 2 - 2 * a2 ** 2))
        a[1] = a2
        start = 2
    else:
        fac = math.sqrt((summ2 - 2 * m[0] ** 2) / (1 - 2 * a1 ** 2))
        start = 1
    a[0] = a1
    a[start:] = -m[start:] / fac
    return a


def shapiro_wilk(x):
    """Return ``(W, p_value)`` for a sample of size 3..5000.

    Raises ValueError for samples outside that range or with zero range.
    """
    x = np.sort(np.asarray(x, dtype=float))
    n = x.size
    if n < 3:
        raise ValueError("need at least 3 observations")
    if n > MAX_N:
        raise ValueError(f"at most {MAX_N} observations supported")
    rng = x[-1] - x[0]
    if rng <= 0:
        raise ValueError("zero range")

    half = _half_coefficients(n)
    coef = np.zeros(n)
    coef[: n // 2] = -half
    coef[n - n // 2:] = half[::-1]

    # W as the squared correlation between data and coefficients
    xs = x / rng
    xc = xs - xs.mean()
    ac = coef - coef.mean()
    ssa = np.dot(ac, ac)
    ssx = np.dot(xc, xc)
    sax = np.dot(ac, xc)
    ssassx = math.sqrt(ssa * ssx)
    w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx)
    w = 1.0 - w1

    if n == 3:
        p = (6.0 / math.pi) * (math.asin(math.sqrt(max(w, 0.75))) - math.pi / 3.0)
        return w, min(max(p, 0.0), 1.0)

    y = math.log(w1)
    lxx = math.log(n)
    if n <= 11:
        gamma = _poly(_G, n)
        if y >= gamma:
            return w, 1e-99
        y = -math.log(gamma - y)
        mean = _poly(_C3, n)
        sd = math.exp(_poly(_C4, n))
    else:
        mean = _poly(_C5, lxx)
        sd = math.exp(_poly(_C6, lxx))
    p = float(ndtr(-(y - mean) / sd))
    return w, p


def is_normal(x, alpha: float = 0.05, rng=None) -> bool:
    """Whether ``x`` passes the W test at level ``alpha``.

    Samples shorter than 3 or with zero range count as non-normal. Longer
    than 5000 values are subsampled uniformly with ``rng``.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 3 or np.ptp(x) == 0:
        return False
    if x.size > MAX_N:
        rng = rng if rng is not None else np.random.default_rng(0)
        x = rng.choice(x, size=MAX_N, replace=False)
    return shapiro_wilk(x)[1] > alpha
