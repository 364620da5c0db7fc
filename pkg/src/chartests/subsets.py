"""Subset statistics ``g(X_1, ..., X_r)`` and their jump data.

A subset statistic is evaluated on every r-subset of a sample.  When it is
not symmetric in its arguments, every ordering of the subset contributes
one value (so the induced indicator is averaged over orderings).

Three evaluation routes produce the same multiset of values:

* :meth:`SubsetStatistic.enumerate_values` walks ``itertools.combinations``;
  it is the reference for everything else;
* "linear" kinds (order statistics and scaled minima) have O(n) closed
  forms: each sorted observation is a value with a binomial multiplicity;
* "pair" and "triple" kinds delegate to the compiled (or NumPy) kernels.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._backend import kernels as _kernels

LINEAR_KINDS = ("identity", "min", "max", "absmin", "absmax")


@dataclass(frozen=True)
class SubsetStatistic:
    """A real statistic of ``degree`` observations.

    Attributes
    ----------
    name : str
    degree : int
    func : callable
        Reference evaluator on ``degree`` floats.
    symmetric : bool
        ``False`` means all ``degree!`` orderings are used.
    kind : str
        Fast-path kind: one of ``LINEAR_KINDS``, ``"pair"``, ``"triple"``,
        or ``"enumerate"`` (no fast path).
    params : tuple
        Kind parameters (``(k, factor)`` for minima, ``(k,)`` for maxima,
        ``(code, a, b)`` for pairs, ``(code,)`` for triples).
    """

    name: str
    degree: int
    func: Callable[..., float] = field(repr=False)
    symmetric: bool = True
    kind: str = "enumerate"
    params: tuple = ()

    @property
    def orderings(self):
        return 1 if self.symmetric else math.factorial(self.degree)

    def total(self, n):
        """Number of (subset, ordering) values for a sample of size ``n``."""
        return math.comb(n, self.degree) * self.orderings

    @property
    def is_linear(self):
        return self.kind in LINEAR_KINDS

    def enumerate_values(self, values):
        values = [float(v) for v in values]
        out = []
        for combo in itertools.combinations(values, self.degree):
            if self.symmetric:
                out.append(self.func(*combo))
            else:
                out.extend(self.func(*p) for p in itertools.permutations(combo))
        return np.array(out, dtype=np.float64)

    def linear_values(self, xs):
        """Values and integer multiplicities for linear kinds (sorted ``xs``)."""
        n = xs.size
        if self.kind == "identity":
            return xs.copy(), np.ones(n, dtype=np.int64)
        k = self.params[0]
        if self.kind in ("min", "absmin"):
            i = np.arange(n - k + 1)
            counts = np.array([math.comb(n - 1 - int(j), k - 1) for j in i], dtype=np.int64)
            base = xs[: n - k + 1]
            if self.kind == "min":
                factor = self.params[1]
                vals = base if factor == 1.0 else factor * base
            else:
                vals = np.abs(base)
            return vals, counts
        if self.kind in ("max", "absmax"):
            j = np.arange(k - 1, n)
            counts = np.array([math.comb(int(t), k - 1) for t in j], dtype=np.int64)
            base = xs[k - 1:]
            return (base if self.kind == "max" else np.abs(base)), counts
        raise ValueError(f"{self.name} has no linear fast path")

    def jump_values(self, xs):
        """Materialized values and multiplicities (``None`` means all ones)."""
        if self.is_linear:
            return self.linear_values(xs)
        if self.kind == "pair":
            code, a, b = self.params
            return _kernels.pair_values(xs, code, a, b)
        if self.kind == "triple":
            return _kernels.triple_values(xs, self.params[0]), None
        return self.enumerate_values(xs), None

    def counts_at(self, xs, q, backend=None):
        """Counts of values ``< q_k`` and ``<= q_k`` for sorted unique ``q``.

        Streams over the subsets without materializing them when the kind
        allows it.
        """
        kern = backend or _kernels
        if self.kind == "pair":
            code, a, b = self.params
            return kern.pair_counts(xs, code, a, b, q)
        if self.kind == "triple":
            return kern.triple_counts(xs, self.params[0], q)
        v, w = self.linear_values(xs) if self.is_linear else self.jump_values(xs)
        return kern.weighted_counts(v, w, q)


# -- reference evaluators ------------------------------------------------------

def _identity(x):
    return x


def _two_min(x, y):
    return 2.0 * min(x, y)


def _min(*args):
    return min(args)


def _max(*args):
    return max(args)


def _abs_min(*args):
    return abs(min(args))


def _abs_max(*args):
    return abs(max(args))


def _spacing(x, y, z):
    a, b, _ = sorted((x, y, z))
    return b - a


def _absdiff(x, y):
    return abs(x - y)


def _shepp(x, y):
    # continuous extension: the value tends to 0 at the origin
    r = math.sqrt(x * x + y * y)
    return 2.0 * x * y / r if r > 0.0 else 0.0


def _ratio_min(x, y):
    return min(x / y, y / x)


def _weighted_sum(*args):
    return sum(v / i for i, v in enumerate(args, 1))


def identity():
    return SubsetStatistic("X", 1, _identity, kind="identity")


def two_min():
    return SubsetStatistic("2min(X,Y)", 2, _two_min, kind="min", params=(2, 2.0))


def minimum(k=2):
    return SubsetStatistic(f"min_{k}", k, _min, kind="min", params=(k, 1.0))


def maximum(k):
    return SubsetStatistic(f"max_{k}", k, _max, kind="max", params=(k,))


def abs_minimum(k):
    return SubsetStatistic(f"|X_(1,{k})|", k, _abs_min, kind="absmin", params=(k,))


def abs_maximum(k):
    return SubsetStatistic(f"|X_({k},{k})|", k, _abs_max, kind="absmax", params=(k,))


def spacing():
    return SubsetStatistic("X_(2,3)-X_(1,3)", 3, _spacing, kind="pair", params=(1, 0.0, 0.0))


def absdiff():
    return SubsetStatistic("|X-Y|", 2, _absdiff, kind="pair", params=(0, 0.0, 0.0))


def shepp():
    return SubsetStatistic("2XY/sqrt(X^2+Y^2)", 2, _shepp, kind="pair", params=(3, 0.0, 0.0))


def ratio_min():
    return SubsetStatistic("min(X/Y,Y/X)", 2, _ratio_min, kind="pair", params=(4, 0.0, 0.0))


def linear_combination(a, b, name=None):
    a, b = float(a), float(b)

    def func(x, y):
        return a * x + b * y

    return SubsetStatistic(name or f"{a:g}X+{b:g}Y", 2, func, symmetric=False,
                           kind="pair", params=(2, a, b))


def weighted_sum(k):
    """``sum_i X_i / i`` over all orderings of a k-subset (k = 2 or 3)."""
    if k == 2:
        stat = linear_combination(1.0, 0.5)
        return SubsetStatistic("X+Y/2", 2, _weighted_sum, symmetric=False,
                               kind="pair", params=stat.params)
    if k == 3:
        return SubsetStatistic("X+Y/2+Z/3", 3, _weighted_sum, symmetric=False,
                               kind="triple", params=(0,))
    return SubsetStatistic(f"sum X_i/i (k={k})", k, _weighted_sum, symmetric=False)
