"""Registry of equidistribution characterizations and the generic test runner.

A characterization says ``g1(X_1..X_r)`` and ``g2(X_1..X_s)`` have the same
law exactly when the sample comes from the null family.  Its tests compare
the two U-empirical dfs through the integral or the Kolmogorov functional.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import subsets
from ._backend import kernels as _kernels
from .errors import DegreeError
from .sample import Domain, Sample
from .uecdf import (TestResult, build_uecdf, integral_from_counts, integral_statistic,
                    kolmogorov_statistic, sup_from_counts)

KINDS = ("integral", "kolmogorov")


class TiesWarning(UserWarning):
    """Sample has repeated values; strict comparisons decide them."""


def center(xs):
    return xs - xs.mean()


@dataclass(frozen=True)
class Characterization:
    name: str
    g1: subsets.SubsetStatistic
    g2: subsets.SubsetStatistic
    null: str
    domain: Domain
    pre_transform: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @property
    def min_n(self):
        return max(self.g1.degree, self.g2.degree)

    def prepare(self, values):
        """Apply the pre-transform and return a sorted float64 array."""
        xs = np.asarray(values, dtype=np.float64)
        if self.pre_transform is not None:
            xs = self.pre_transform(xs)
        return np.sort(xs)


# -- fast evaluation on sorted arrays --------------------------------------------

def integral_value(char, xs, backend=None):
    """Integral statistic of a sorted, already transformed sample."""
    n = xs.size
    q, mult = np.unique(xs, return_counts=True)
    lt1, _ = char.g1.counts_at(xs, q, backend)
    lt2, _ = char.g2.counts_at(xs, q, backend)
    s1 = int(np.dot(lt1, mult))
    s2 = int(np.dot(lt2, mult))
    return integral_from_counts(s1, char.g1.total(n), s2, char.g2.total(n), n)


def kolmogorov_value(char, xs, backend=None):
    """Kolmogorov statistic of a sorted, already transformed sample.

    Candidates are the jumps of one step function only: on every interval
    where that function is constant the other is monotone, so the largest
    gap sits at an endpoint (strict or non-strict count).
    """
    n = xs.size
    g1, g2 = char.g1, char.g2
    anchor = g1 if g1.is_linear or not g2.is_linear else g2
    v, _ = anchor.linear_values(xs) if anchor.is_linear else anchor.jump_values(xs)
    q = np.unique(v)
    lt1, le1 = g1.counts_at(xs, q, backend)
    lt2, le2 = g2.counts_at(xs, q, backend)
    n1, n2 = g1.total(n), g2.total(n)
    return max(sup_from_counts(le1, n1, le2, n2), sup_from_counts(lt1, n1, lt2, n2))


def statistic_value(char, xs, kind, backend=None):
    if kind == "integral":
        return integral_value(char, xs, backend)
    if kind == "kolmogorov":
        return kolmogorov_value(char, xs, backend)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def _coerce(sample, domain):
    if not isinstance(sample, Sample):
        sample = Sample(sample, domain)
    return sample.require(domain)


def run_characterization_test(char, sample, kind="integral", *, method="fast"):
    """Evaluate the integral or Kolmogorov statistic of a characterization.

    Parameters
    ----------
    char : Characterization or str
    sample : Sample or array_like
    kind : {"integral", "kolmogorov"}
    method : {"fast", "uecdf"}
        ``"uecdf"`` builds both U-empirical dfs explicitly; ``"fast"``
        streams counts.  Both give identical values.

    Raises
    ------
    DomainError
        Data outside the characterization's domain.
    DegreeError
        Fewer observations than the larger subset degree.
    """
    if isinstance(char, str):
        char = get_characterization(char)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    sample = _coerce(sample, char.domain)
    if sample.n < char.min_n:
        raise DegreeError(f"{char.name} needs at least {char.min_n} observations, got {sample.n}")
    if sample.has_ties:
        warnings.warn("sample contains ties; they are resolved by strict comparison",
                      TiesWarning, stacklevel=2)
    test_name = f"{char.name}-{kind}"
    if method == "fast":
        value = statistic_value(char, char.prepare(sample.values), kind)
        return TestResult(kind, value, sample.n, test_name)
    if method != "uecdf":
        raise ValueError(f"unknown method {method!r}")
    work = sample
    if char.pre_transform is not None:
        work = Sample(char.pre_transform(sample.values), Domain.REAL)
    L1 = build_uecdf(work, char.g1)
    L2 = build_uecdf(work, char.g2)
    if kind == "integral":
        return integral_statistic(L1, L2, work, test_name)
    return kolmogorov_statistic(L1, L2, test_name)


# -- Angus --------------------------------------------------------------------------

def angus_value(xs):
    """``sup_{x>=0} |S_n(2x) - S_n(x)^2|`` with ``S_n = 1 - F_n`` (sorted ``xs``)."""
    n = xs.size
    cand = np.unique(np.concatenate(([0.0], xs, 0.5 * xs)))
    a = n - np.searchsorted(xs, 2.0 * cand, side="right")
    b = n - np.searchsorted(xs, cand, side="right")
    diff = np.abs(n * a.astype(np.int64) - b.astype(np.int64) ** 2)
    return int(diff.max()) / (n * n)


def angus_statistic(sample):
    """Kolmogorov-type statistic of the functional equation S(2x) = S(x)^2."""
    sample = _coerce(sample, Domain.NONNEGATIVE)
    return TestResult("kolmogorov", angus_value(sample.sorted), sample.n, "angus")


# -- registry ------------------------------------------------------------------------

def polya(a=math.sqrt(0.5)):
    """Generalized Polya characterization ``X = aX + bY``, ``a^2 + b^2 = 1``."""
    a = float(a)
    if not 0.0 < a < 1.0:
        raise ValueError("a must lie in (0, 1)")
    b = math.sqrt(1.0 - a * a)
    name = "polya" if a == math.sqrt(0.5) else f"polya-{a:.6g}"
    return Characterization(name, subsets.identity(),
                            subsets.linear_combination(a, b, f"{a:.4g}X+{b:.4g}Y"),
                            "normal", Domain.REAL, center)


def arnold_villasenor(k):
    if k not in (2, 3):
        raise ValueError("arnold-villasenor is implemented for k = 2, 3")
    return Characterization(f"arnold-villasenor-{k}", subsets.maximum(k),
                            subsets.weighted_sum(k), "exponential", Domain.NONNEGATIVE)


def ahsanullah_symmetry(k):
    if k not in (2, 3, 4):
        raise ValueError("ahsanullah-symmetry is implemented for k = 2, 3, 4")
    return Characterization(f"ahsanullah-symmetry-{k}", subsets.abs_minimum(k),
                            subsets.abs_maximum(k), "symmetric", Domain.REAL)


def _build_registry():
    reg = [
        Characterization("desu", subsets.identity(), subsets.two_min(), "exponential",
                         Domain.NONNEGATIVE),
        Characterization("rossberg", subsets.spacing(), subsets.minimum(2), "exponential",
                         Domain.NONNEGATIVE),
        Characterization("ahsanullah-exp", subsets.absdiff(), subsets.two_min(), "exponential",
                         Domain.NONNEGATIVE),
        arnold_villasenor(2),
        arnold_villasenor(3),
        polya(),
        Characterization("shepp", subsets.identity(), subsets.shepp(), "normal", Domain.REAL,
                         center),
        Characterization("puri-rubin", subsets.identity(), subsets.ratio_min(), "power",
                         Domain.UNIT),
        Characterization("cauchy-rr", subsets.identity(),
                         subsets.linear_combination(1.0 / 3.0, -2.0 / 3.0, "X/3-2Y/3"),
                         "cauchy", Domain.REAL),
        Characterization("bh-symmetry", subsets.SubsetStatistic("|X|", 1, abs, kind="absmax",
                                                                params=(1,)),
                         subsets.abs_maximum(2), "symmetric", Domain.REAL),
        ahsanullah_symmetry(2),
        ahsanullah_symmetry(3),
        ahsanullah_symmetry(4),
    ]
    return {c.name: c for c in reg}


REGISTRY = _build_registry()


def get_characterization(name):
    """Look up a characterization; ``polya-<a>`` builds the family member."""
    if name in REGISTRY:
        return REGISTRY[name]
    if name.startswith("polya-"):
        return polya(float(name[len("polya-"):]))
    raise KeyError(f"unknown characterization {name!r}; known: {sorted(REGISTRY)}")
