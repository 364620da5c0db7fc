"""Kernels, U-statistics, projections and projection variances."""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import quadrature
from .errors import DegeneracyError, DegreeError, DomainError, EvaluationError
from .nulls import get_null
from .sample import Sample

#: projection variances below this are treated as exact zeros
DEGENERACY_THRESHOLD = 1e-13


@dataclass(frozen=True)
class Kernel:
    """A symmetric kernel of ``degree`` real arguments.

    ``fast`` takes the *sorted* sample values and must return exactly what
    full enumeration returns.  ``projection`` is the closed-form
    one-dimensional projection under the null family, when known;
    ``breakpoints`` lists where it jumps or kinks.
    """

    name: str
    degree: int
    func: Callable[..., float]
    null: str
    centered: bool = False
    fast: Optional[Callable[[np.ndarray], float]] = None
    projection: Optional[Callable[[float], float]] = None
    breakpoints: tuple = ()

    def __call__(self, *args):
        if len(args) != self.degree:
            raise DegreeError(f"{self.name} takes {self.degree} arguments, got {len(args)}")
        return self.func(*args)


@dataclass(frozen=True)
class ProjectionProfile:
    psi: Callable[[float], float]
    delta2: float
    mean: float = 0.0


def _as_sample(sample):
    return sample if isinstance(sample, Sample) else Sample(sample)


def _enumerate(values, kernel):
    total = []
    for idx in itertools.combinations(range(values.size), kernel.degree):
        v = kernel.func(*(float(values[i]) for i in idx))
        if not math.isfinite(v):
            raise EvaluationError(f"kernel {kernel.name} returned {v} on subset {idx}", idx)
        total.append(v)
    return math.fsum(total) / math.comb(values.size, kernel.degree)


def evaluate_u_statistic(sample, kernel, *, method="auto"):
    """Average ``kernel`` over all unordered ``kernel.degree``-subsets.

    Parameters
    ----------
    sample : Sample or array_like
    kernel : Kernel
    method : {"auto", "enumerate", "fast"}
        ``"enumerate"`` always walks all C(n, m) subsets; ``"auto"`` uses the
        kernel's fast path when it has one.
    """
    sample = _as_sample(sample)
    if sample.n < kernel.degree:
        raise DegreeError(f"n={sample.n} is smaller than the kernel degree {kernel.degree}")
    if method == "enumerate" or kernel.fast is None:
        if method == "fast":
            raise ValueError(f"kernel {kernel.name} has no fast path")
        return _enumerate(sample.values, kernel)
    return kernel.fast(sample.sorted)


# -- Desu kernel -------------------------------------------------------------

def _desu_func(x, y, z):
    k = (2.0 * min(x, y) < z) + (2.0 * min(y, z) < x) + (2.0 * min(x, z) < y)
    return 0.5 - k / 3.0


_DESU_LEVELS = tuple(Fraction(0.5 - k / 3.0) for k in range(4))


def _desu_fast(xs):
    n = xs.size
    if n and xs[0] < 0.0:
        return _enumerate(xs, DESU)
    # for a sorted triple a <= b <= c of nonnegative reals the indicator
    # count is 1{2a < b} + 1{2a < c}
    m = n - np.searchsorted(xs, 2.0 * xs, side="right")
    rest = np.arange(n - 1, -1, -1)
    n2 = int(np.sum(m * (m - 1) // 2))
    n1 = int(np.sum(m * (rest - m)))
    n0 = math.comb(n, 3) - n1 - n2
    exact = n0 * _DESU_LEVELS[0] + n1 * _DESU_LEVELS[1] + n2 * _DESU_LEVELS[2]
    return float(exact) / math.comb(n, 3)


def desu_projection(s):
    """Projection of the Desu kernel under the standard exponential.

    ``psi(s) = exp(-s)/3 - 1/18 - 4 exp(-3 s)/9`` for ``s >= 0``.
    """
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("the Desu projection is defined for s >= 0")
    out = np.exp(-arr) / 3.0 - 1.0 / 18.0 - 4.0 * np.exp(-3.0 * arr) / 9.0
    return float(out) if out.ndim == 0 else out


DESU = Kernel("desu", 3, _desu_func, "exponential", centered=True, fast=_desu_fast,
              projection=desu_projection)


# -- other registered kernels -------------------------------------------------

def _absdiff(x, y):
    return abs(x - y)


def _absdiff_fast(xs):
    # vectorized over the same rounded differences enumeration sums; fsum is order-free
    i, j = np.triu_indices(xs.size, 1)
    return math.fsum(xs[j] - xs[i]) / math.comb(xs.size, 2)


GINI = Kernel("gini", 2, _absdiff, "exponential", fast=_absdiff_fast,
              projection=lambda x: x - 1.0 + 2.0 * math.exp(-x))


def desu_family_kernel(t):
    """Kernel of the difference F_n(t) - H_n(t) at a fixed level ``t``."""
    t = float(t)

    def func(x, y):
        return 0.5 * ((x < t) + (y < t)) - (2.0 * min(x, y) < t)

    def fast(xs):
        n = xs.size
        k = int(np.searchsorted(xs, t, side="left"))
        q = int(np.searchsorted(xs, 0.5 * t, side="left"))
        pairs = math.comb(n, 2)
        exact = Fraction((n - 1) * k, 2) - (pairs - math.comb(n - q, 2))
        return float(exact) / pairs

    s = math.exp(-0.5 * t) if t > 0 else 1.0

    def psi(x):
        # E[Xi | X = x] under Exp(1)
        a = 0.5 * ((x < t) + (1.0 - math.exp(-t) if t > 0 else 0.0))
        b = 1.0 if 2.0 * x < t else 1.0 - s
        return a - b

    return Kernel(f"desu-family[t={t:g}]", 2, func, "exponential", centered=True,
                  fast=fast, projection=psi, breakpoints=(0.5 * t, t) if t > 0 else ())


def polya_kernel(a=math.sqrt(0.5)):
    """Degree-3 integral kernel of the generalized Polya characterization."""
    a = float(a)
    b = math.sqrt(1.0 - a * a)

    def h(x, y, w):
        return 0.5 * ((x < w) + (y < w)) - 0.5 * ((a * x + b * y < w) + (b * x + a * y < w))

    def func(x, y, z):
        return (h(x, y, z) + h(y, z, x) + h(x, z, y)) / 3.0

    ca = a / math.sqrt(1.0 + b * b)
    cb = b / math.sqrt(1.0 + a * a)

    def psi(x):
        ncdf = get_null("normal").cdf
        return (ncdf(ca * x) + ncdf(cb * x) - ncdf(x) - 0.5) / 3.0

    return Kernel(f"polya[a={a:.6g}]", 3, func, "normal", centered=True, projection=psi)


def constant_kernel(c=1.0):
    c = float(c)
    return Kernel("constant", 1, lambda x: c, "exponential", fast=lambda xs: c,
                  projection=lambda x: c)


KERNELS = {
    "desu": DESU,
    "gini": GINI,
    "polya": polya_kernel(),
    "desu-family": desu_family_kernel(math.log(2.0)),
    "constant": constant_kernel(),
}


# -- projections ---------------------------------------------------------------

def _numeric_projection(kernel, fam):
    if kernel.degree == 1:
        return kernel.func
    if kernel.degree == 2:
        def psi(x):
            return quadrature.expectation(lambda y: kernel.func(x, y), fam.pdf, fam.support,
                                          points=(x, 0.5 * x, 2.0 * x), tail=fam.tail,
                                          epsabs=1e-13)
        return psi
    raise DegreeError(f"kernel {kernel.name} of degree {kernel.degree} needs a closed-form projection")


def projection_profile(kernel, null=None):
    """Projection ``psi`` and its variance under the null family."""
    fam = get_null(null or kernel.null)
    psi = kernel.projection or _numeric_projection(kernel, fam)
    kw = dict(tail=fam.tail, epsabs=1e-14, epsrel=1e-11, points=kernel.breakpoints)
    mean = quadrature.expectation(psi, fam.pdf, fam.support, **kw)
    second = quadrature.expectation(lambda x: psi(x) ** 2, fam.pdf, fam.support, **kw)
    delta2 = second - mean * mean
    if abs(delta2) < DEGENERACY_THRESHOLD:
        delta2 = 0.0
    return ProjectionProfile(psi, max(delta2, 0.0), mean)


def projection_variance(kernel, null=None):
    """Variance of the one-dimensional projection (Delta squared)."""
    return projection_profile(kernel, null).delta2


def clt_params(kernel, null=None):
    """Mean and variance of the normal limit of ``sqrt(n) * U_n``.

    Returns ``(theta, m**2 * Delta**2)``.

    Raises
    ------
    DegeneracyError
        If the projection variance is zero.
    """
    prof = projection_profile(kernel, null)
    if prof.delta2 == 0.0:
        raise DegeneracyError(f"kernel {kernel.name} is degenerate under the null")
    return prof.mean, kernel.degree ** 2 * prof.delta2
