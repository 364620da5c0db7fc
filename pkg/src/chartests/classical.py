"""Classical scale-free exponentiality statistics: Greenwood, Moran, Gini, Lilliefors."""

import math

import numpy as np

from .errors import DomainError
from .sample import Domain, Sample
from .uecdf import TestResult

EULER_GAMMA = 0.5772156649015329

_SPLITTER = 134217729.0  # 2**27 + 1


def _positive(sample, strict=False):
    if not isinstance(sample, Sample):
        sample = Sample(sample, Domain.NONNEGATIVE)
    sample = sample.require(Domain.NONNEGATIVE)
    if strict and np.any(sample.values <= 0):
        raise DomainError("statistic requires strictly positive observations")
    mean = math.fsum(sample.values) / sample.n
    if mean <= 0:
        raise DomainError("sample mean is zero")
    return sample, mean


def greenwood_value(xs):
    n = xs.size
    mean = math.fsum(xs) / n
    return 2.0 - math.fsum((xs / mean) ** 2) / n


def moran_value(xs):
    n = xs.size
    mean = math.fsum(xs) / n
    return math.fsum(np.log(xs / mean)) / n + EULER_GAMMA


def _split(x):
    t = x * _SPLITTER
    hi = t - (t - x)
    return hi, x - hi


def gini_numerator(xs):
    """Correctly rounded ``sum_{i<j} |x_i - x_j|`` for sorted ``xs``.

    Uses ``sum (2i - n + 1) x_(i)``; splitting each value into two 26-bit
    halves makes every product exact, and ``fsum`` rounds once at the end.
    """
    n = xs.size
    coef = np.arange(1 - n, n, 2, dtype=np.float64)
    hi, lo = _split(xs)
    return math.fsum(np.concatenate((coef * hi, coef * lo)))


def gini_numerator_quadratic(values):
    """Same quantity by direct summation over all pairs (error-free differences)."""
    x = np.asarray(values, dtype=np.float64)
    i, j = np.triu_indices(x.size, 1)
    a, b = x[i], x[j]
    s = a - b
    bb = s - a
    err = (a - (s - bb)) + (-b - bb)
    neg = s < 0
    s = np.where(neg, -s, s)
    err = np.where(neg, -err, err)
    return math.fsum(np.concatenate((s, err)))


def _gini_from_numerator(num, xs):
    n = xs.size
    mean = math.fsum(xs) / n
    # ordered-pair double sum is twice the unordered one
    return (2.0 * num) / (2.0 * n * (n - 1) * mean)


def gini_value(xs):
    return _gini_from_numerator(gini_numerator(xs), xs)


def lilliefors_value(xs):
    """``sup_{x>=0} |1 - F_n(x) - exp(-x / mean)|`` on sorted ``xs``.

    The survival step is constant between order statistics while the
    exponential is monotone, so both one-sided limits at each jump suffice.
    """
    n = xs.size
    mean = math.fsum(xs) / n
    u = np.unique(xs)
    e = np.exp(-u / mean)
    gt = (n - np.searchsorted(xs, u, side="right")) / n
    ge = (n - np.searchsorted(xs, u, side="left")) / n
    return float(max(np.max(np.abs(gt - e)), np.max(np.abs(ge - e))))


def greenwood(sample):
    """Greenwood statistic ``R_n = 2 - mean((X_i / Xbar)^2)``; close to 0 under exponentiality."""
    sample, _ = _positive(sample)
    return TestResult("integral", greenwood_value(sample.values), sample.n, "greenwood")


def moran(sample):
    """Moran statistic ``M_n = mean(log(X_i / Xbar)) + C``; requires positive data."""
    sample, _ = _positive(sample, strict=True)
    return TestResult("integral", moran_value(sample.values), sample.n, "moran")


def gini(sample):
    """Gini statistic ``sum_{i,j} |X_i - X_j| / (2 n (n-1) Xbar)``; about 1/2 under exponentiality.

    Notes
    -----
    The sorted O(n log n) route and :func:`gini_quadratic` both produce the
    correctly rounded numerator, so they agree bitwise.
    """
    sample, _ = _positive(sample)
    if sample.n < 2:
        raise DomainError("gini needs at least 2 observations")
    return TestResult("integral", gini_value(sample.sorted), sample.n, "gini")


def gini_quadratic(sample):
    """O(n^2) reference implementation of :func:`gini`."""
    sample, _ = _positive(sample)
    if sample.n < 2:
        raise DomainError("gini needs at least 2 observations")
    num = gini_numerator_quadratic(sample.values)
    return TestResult("integral", _gini_from_numerator(num, sample.values), sample.n, "gini")


def lilliefors(sample):
    """Lilliefors-type distance between the sample survival and a fitted exponential."""
    sample, _ = _positive(sample)
    return TestResult("kolmogorov", lilliefors_value(sample.sorted), sample.n, "lilliefors")
