"""U-empirical distribution functions and the integral / Kolmogorov functionals.

Convention: ``L(t) = #{g < t} / N`` (strict inequality, left-continuous).
Statistics are formed from integer counts, so every evaluation route
returns the same correctly rounded float.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DegreeError
from .sample import Sample

_INT_SAFE = 2 ** 62


@dataclass(frozen=True)
class TestResult:
    """Value of a test statistic on one sample."""

    __test__ = False  # not a pytest class

    kind: str
    value: float
    n: int
    test_name: str

    def __post_init__(self):
        if self.kind not in ("integral", "kolmogorov"):
            raise ValueError(f"unknown statistic kind {self.kind!r}")
        if self.kind == "kolmogorov" and not 0.0 <= self.value <= 1.0:
            raise ValueError(f"Kolmogorov-type value {self.value} outside [0, 1]")


class UEmpiricalCDF:
    """Step function ``t -> #{subset values < t} / total``.

    Parameters
    ----------
    values : array_like
        Subset values (any order, repeats allowed).
    weights : array_like of int, optional
        Integer multiplicity of each value; ones by default.
    degree : int
        Subset size ``r``.
    total : int, optional
        Total multiplicity; defaults to ``sum(weights)``.
    source : str, optional
        Fingerprint of the sample the function was built from.
    n : int, optional
        Size of that sample.
    """

    def __init__(self, values, weights=None, *, degree, total=None, source=None, name="",
                 n=None):
        values = np.asarray(values, dtype=np.float64)
        if weights is None:
            jumps, counts = np.unique(values, return_counts=True)
        else:
            weights = np.asarray(weights, dtype=np.int64)
            order = np.argsort(values, kind="stable")
            sv, sw = values[order], weights[order]
            jumps, start = np.unique(sv, return_index=True)
            counts = np.add.reduceat(sw, start) if sv.size else np.empty(0, np.int64)
        counts = counts.astype(np.int64)
        keep = counts > 0
        self.jumps = jumps[keep]
        self.counts = counts[keep]
        self._cum0 = np.concatenate(([0], np.cumsum(self.counts)))
        self.total = int(self._cum0[-1]) if total is None else int(total)
        if self.total != int(self._cum0[-1]):
            raise ConsistencyError("weights do not sum to the declared total")
        self.degree = int(degree)
        self.source = source
        self.name = name
        self.n = n
        self.jumps.setflags(write=False)
        self.counts.setflags(write=False)

    @property
    def cumulative_weights(self):
        """``L`` just to the right of each jump."""
        return self._cum0[1:] / self.total

    def count_below(self, t):
        idx = np.searchsorted(self.jumps, t, side="left")
        return self._cum0[idx]

    def count_at_most(self, t):
        idx = np.searchsorted(self.jumps, t, side="right")
        return self._cum0[idx]

    def __call__(self, t):
        """Strict evaluation ``#{g < t} / N``."""
        out = self.count_below(t) / self.total
        return float(out) if np.ndim(out) == 0 else out

    def right(self, t):
        """Right-continuous evaluation ``#{g <= t} / N``."""
        out = self.count_at_most(t) / self.total
        return float(out) if np.ndim(out) == 0 else out

    def __eq__(self, other):
        if not isinstance(other, UEmpiricalCDF):
            return NotImplemented
        return (self.total == other.total and self.degree == other.degree
                and np.array_equal(self.jumps, other.jumps)
                and np.array_equal(self.counts, other.counts))

    def __repr__(self):
        return (f"UEmpiricalCDF({self.name or 'g'}, degree={self.degree}, "
                f"jumps={self.jumps.size}, total={self.total})")


def build_uecdf(sample, stat, *, method="auto"):
    """U-empirical df of subset statistic ``stat`` over ``sample``.

    ``method="enumerate"`` forces the itertools reference; ``"auto"`` uses
    the fast path of the statistic's kind.
    """
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    if sample.n < stat.degree:
        raise DegreeError(f"n={sample.n} is smaller than the degree {stat.degree} of {stat.name}")
    if method == "enumerate" or stat.kind == "enumerate":
        values, weights = stat.enumerate_values(sample.values), None
    else:
        values, weights = stat.jump_values(sample.sorted)
    return UEmpiricalCDF(values, weights, degree=stat.degree, total=stat.total(sample.n),
                         source=sample.fingerprint, name=stat.name, n=sample.n)


def integral_from_counts(below1, n1, below2, n2, n):
    """``(1/n) sum_k [L1(X_k) - L2(X_k)]`` from summed strict counts."""
    num = int(n2) * int(below1) - int(n1) * int(below2)
    return num / (int(n) * int(n1) * int(n2))


def sup_from_counts(c1, n1, c2, n2):
    """``max_k |c1_k/n1 - c2_k/n2|`` computed in integers when that is safe."""
    if c1.size == 0:
        return 0.0
    if n1 * n2 < _INT_SAFE:
        diff = np.abs(np.asarray(c1, np.int64) * n2 - np.asarray(c2, np.int64) * n1)
        return int(diff.max()) / (n1 * n2)
    return float(np.max(np.abs(c1 / n1 - c2 / n2)))


def _check_source(*objs):
    sources = {o.source for o in objs}
    if len(sources) != 1 or None in sources:
        raise ConsistencyError("U-empirical dfs were not built from the same sample")


def integral_statistic(L1, L2, sample, test_name="integral"):
    """``I_n = integral of (L1 - L2) dF_n`` with strict evaluation at each X_k."""
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    if L1.source != sample.fingerprint or L2.source != sample.fingerprint:
        raise ConsistencyError("U-empirical dfs do not come from this sample")
    s1 = int(np.sum(L1.count_below(sample.values)))
    s2 = int(np.sum(L2.count_below(sample.values)))
    value = integral_from_counts(s1, L1.total, s2, L2.total, sample.n)
    return TestResult("integral", value, sample.n, test_name)


def kolmogorov_statistic(L1, L2, test_name="kolmogorov"):
    """``D_n = sup_t |L1(t) - L2(t)|`` over the union of both jump sets.

    Between consecutive candidates both step functions are constant, so the
    right-limits at the candidates (together with 0 at minus infinity) give
    every value the difference takes.
    """
    if L1.total == 0 or L2.total == 0 or L1.jumps.size == 0 or L2.jumps.size == 0:
        raise ConsistencyError("empty U-empirical df")
    _check_source(L1, L2)
    cand = np.union1d(L1.jumps, L2.jumps)
    value = sup_from_counts(L1.count_at_most(cand), L1.total,
                            L2.count_at_most(cand), L2.total)
    return TestResult("kolmogorov", value, L1.n if L1.n is not None else -1, test_name)
