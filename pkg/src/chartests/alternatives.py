"""Parametric alternatives to the null families and their distance to the null.

Every family is indexed by ``theta`` with ``theta = 0`` a member of its
null.  Densities are scalar functions (they feed adaptive quadrature);
samplers are vectorized and draw from an explicit generator.
"""

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy import optimize, special

from .errors import DomainError
from .nulls import get_null
from .quadrature import integrate
from .sample import Sample

_LOG_SQRT2PI = 0.5 * math.log(2.0 * math.pi)


class BoundaryWarning(UserWarning):
    """The nuisance minimizer sits on the edge of its search interval."""


@dataclass(frozen=True)
class AlternativeFamily:
    """A one-parameter family ``f(x, theta)`` reducing to the null at 0.

    Attributes
    ----------
    logpdf, cdf : callable
        Scalar ``(x, theta) -> float``.
    sampler : callable
        ``(theta, n, rng) -> ndarray``.
    score : callable
        ``d f(x, theta) / d theta`` at ``theta = 0``; drives local expansions.
    theta_domain : tuple
        Closed-open interval of admissible ``theta``.
    support : tuple
    tail : str
        Quadrature tail map.
    points : tuple
        Breakpoints worth handing to the integrator.
    """

    name: str
    null: str
    logpdf: Callable[[float, float], float]
    cdf: Callable[[float, float], float]
    sampler: Callable[[float, int, np.random.Generator], np.ndarray]
    score: Callable[[float], float]
    theta_domain: tuple
    support: tuple
    tail: str = "exp"
    points: tuple = ()
    survival: Optional[Callable[[float, float], float]] = None

    def pdf(self, x, theta):
        lp = self.logpdf(x, theta)
        return math.exp(lp) if lp > -745.0 else 0.0

    def sf(self, x, theta):
        if self.survival is not None:
            return self.survival(x, theta)
        return 1.0 - self.cdf(x, theta)

    def check_theta(self, theta):
        lo, hi = self.theta_domain
        if not lo <= theta < hi:
            raise DomainError(f"theta={theta} outside [{lo}, {hi}) for {self.name}")

    def sample(self, theta, n, rng):
        self.check_theta(theta)
        return self.sampler(theta, n, rng)


# -- exponential-null alternatives -------------------------------------------------

def _log0(x):
    return math.log(x) if x > 0.0 else -math.inf


def _weibull_logpdf(x, t):
    if x < 0.0:
        return -math.inf
    if x == 0.0:
        return 0.0 if t == 0.0 else -math.inf
    return math.log1p(t) + t * math.log(x) - x ** (1.0 + t)


def _weibull_cdf(x, t):
    return -math.expm1(-(x ** (1.0 + t))) if x > 0.0 else 0.0


def _weibull_sf(x, t):
    return math.exp(-(x ** (1.0 + t))) if x > 0.0 else 1.0


def _weibull_sampler(t, n, rng):
    return rng.standard_exponential(n) ** (1.0 / (1.0 + t))


def _weibull_score(x):
    if x <= 0.0:
        return 0.0
    lx = math.log(x)
    return math.exp(-x) * (1.0 + lx - x * lx)


def _makeham_hazard_int(x, t):
    return x + t * (math.expm1(-x) + x)


def _makeham_logpdf(x, t):
    if x < 0.0:
        return -math.inf
    return math.log1p(-t * math.expm1(-x)) - _makeham_hazard_int(x, t)


def _makeham_cdf(x, t):
    return -math.expm1(-_makeham_hazard_int(x, t)) if x > 0.0 else 0.0


def _makeham_sf(x, t):
    return math.exp(-_makeham_hazard_int(x, t)) if x > 0.0 else 1.0


def _makeham_sampler(t, n, rng):
    e = rng.standard_exponential(n)
    x = e.copy()
    # the cumulative hazard is convex and lies above the identity: Newton
    # from x = e approaches the root monotonically from the right
    for _ in range(100):
        h = x + t * (np.expm1(-x) + x) - e
        step = h / (1.0 - t * np.expm1(-x))
        x = x - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + x)):
            break
    return x


def _makeham_score(x):
    if x < 0.0:
        return 0.0
    return (2.0 + 2.0 * math.expm1(-x) - x) * math.exp(-x)


def _lfr_logpdf(x, t):
    if x < 0.0:
        return -math.inf
    return math.log1p(t * x) - x - 0.5 * t * x * x


def _lfr_cdf(x, t):
    return -math.expm1(-x - 0.5 * t * x * x) if x > 0.0 else 0.0


def _lfr_sf(x, t):
    return math.exp(-x - 0.5 * t * x * x) if x > 0.0 else 1.0


def _lfr_sampler(t, n, rng):
    e = rng.standard_exponential(n)
    # positive root of t x^2 / 2 + x - e = 0 without cancellation
    return 2.0 * e / (1.0 + np.sqrt(1.0 + 2.0 * t * e))


def _lfr_score(x):
    return (x - 0.5 * x * x) * math.exp(-x) if x >= 0.0 else 0.0


# -- location and skew alternatives ------------------------------------------------

def _norm_logpdf(x):
    return -0.5 * x * x - _LOG_SQRT2PI


def _norm_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _norm_sf(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def _cauchy_sf(x):
    return 0.5 - math.atan(x) / math.pi


def _cauchy_logpdf(x):
    return -math.log(math.pi) - math.log1p(x * x)


def _cauchy_cdf(x):
    return 0.5 + math.atan(x) / math.pi


_SHIFT_BASES = {
    "normal": (_norm_logpdf, _norm_cdf, _norm_sf, lambda rng, n: rng.standard_normal(n),
               lambda x: x * math.exp(_norm_logpdf(x)), "exp"),
    "cauchy": (_cauchy_logpdf, _cauchy_cdf, _cauchy_sf, lambda rng, n: rng.standard_cauchy(n),
               lambda x: 2.0 * x / (math.pi * (1.0 + x * x) ** 2), "algebraic"),
}


def shift(null="normal"):
    """Location family ``f0(x - theta)`` for a symmetric null.

    ``null`` is ``"normal"``, ``"cauchy"`` or ``"symmetric"`` (a shifted
    standard normal tested against symmetry about zero).
    """
    base = "normal" if null == "symmetric" else null
    if base not in _SHIFT_BASES:
        raise KeyError(f"no shift family for null {null!r}")
    lp, cdf, sf, draw, score, tail = _SHIFT_BASES[base]
    return AlternativeFamily(
        f"shift-{null}", null,
        lambda x, t: lp(x - t), lambda x, t: cdf(x - t),
        lambda t, n, rng: draw(rng, n) + t, score,
        (-math.inf, math.inf), (-math.inf, math.inf), tail,
        survival=lambda x, t: sf(x - t))


def _skew_logpdf(x, t):
    return math.log(2.0) + _norm_logpdf(x) + float(special.log_ndtr(t * x))


def _skew_cdf(x, t):
    return _norm_cdf(x) - 2.0 * float(special.owens_t(x, t))


def _skew_sf(x, t):
    return _norm_sf(x) + 2.0 * float(special.owens_t(x, t))


def _skew_sampler(t, n, rng):
    d = t / math.sqrt(1.0 + t * t)
    u0 = rng.standard_normal(n)
    u1 = rng.standard_normal(n)
    return d * np.abs(u0) + math.sqrt(1.0 - d * d) * u1


def _skew_score(x):
    return 2.0 * x * math.exp(_norm_logpdf(x)) / math.sqrt(2.0 * math.pi)


_INF = (0.0, math.inf)

FAMILIES = {
    "weibull": AlternativeFamily("weibull", "exponential", _weibull_logpdf, _weibull_cdf,
                                 _weibull_sampler, _weibull_score, (0.0, math.inf), _INF,
                                 survival=_weibull_sf),
    "makeham": AlternativeFamily("makeham", "exponential", _makeham_logpdf, _makeham_cdf,
                                 _makeham_sampler, _makeham_score, (0.0, math.inf), _INF,
                                 survival=_makeham_sf),
    "lfr": AlternativeFamily("lfr", "exponential", _lfr_logpdf, _lfr_cdf, _lfr_sampler,
                             _lfr_score, (0.0, math.inf), _INF, survival=_lfr_sf),
    "shift-normal": shift("normal"),
    "shift-cauchy": shift("cauchy"),
    "shift-symmetric": shift("symmetric"),
    "skew-normal": AlternativeFamily("skew-normal", "normal", _skew_logpdf, _skew_cdf,
                                     _skew_sampler, _skew_score, (-math.inf, math.inf),
                                     (-math.inf, math.inf), survival=_skew_sf),
}

# the plain "shift" name keeps its normal-null meaning
FAMILIES["shift"] = replace(FAMILIES["shift-normal"], name="shift")


def get_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown alternative {name!r}; known: {sorted(FAMILIES)}") from None


def sample_alternative(family, theta, n, stream):
    """Draw ``n`` observations from ``family`` at ``theta`` using generator ``stream``."""
    if isinstance(family, str):
        family = get_family(family)
    null = get_null(family.null)
    return Sample(family.sample(theta, n, stream), null.domain)


# -- Kullback-Leibler distance ----------------------------------------------------

def _kl_term(lf, lg):
    # f ln(f/g) - f + g, written to stay accurate when f ~ g
    if lf == -math.inf:
        return math.exp(lg) if lg > -745.0 else 0.0
    f = math.exp(lf)
    d = lf - lg
    if abs(d) < 0.5:
        return f * (d + math.expm1(-d))
    return f * d - f + math.exp(lg)


def _moment(family, theta, k):
    lo, hi = family.support
    return integrate(lambda x: x ** k * family.pdf(x, theta), lo, hi, tail=family.tail,
                     epsabs=1e-14, epsrel=1e-12)


def _nuisance_guess(family, null, theta):
    if null.name == "exponential":
        return 1.0 / _moment(family, theta, 1)
    if null.name == "normal":
        return math.sqrt(_moment(family, theta, 2))
    return 1.0


def _kl_fixed(family, theta, lg):
    lo, hi = family.support
    return integrate(lambda x: _kl_term(family.logpdf(x, theta), lg(x)), lo, hi,
                     points=family.points, tail=family.tail, epsabs=1e-16, epsrel=1e-11)


def kl_to_null(family, theta, *, xtol=1e-10):
    """Kullback-Leibler distance from ``f(., theta)`` to the composite null.

    The nuisance parameter (scale or shape) is profiled out by bounded
    golden-section/parabolic search around a moment-based starting value.
    Symmetry about zero is handled in closed form: the nearest symmetric
    density is ``(f(x) + f(-x)) / 2``.

    Returns
    -------
    float
        ``K(theta) >= 0``.

    Warns
    -----
    BoundaryWarning
        If the minimizer lies on the edge of the search interval.
    """
    if isinstance(family, str):
        family = get_family(family)
    family.check_theta(theta)
    if theta == 0.0:
        return 0.0
    null = get_null(family.null)
    if null.logpdf is None:
        def lg(x):
            return float(np.logaddexp(family.logpdf(x, theta), family.logpdf(-x, theta))) \
                - math.log(2.0)
        return max(_kl_fixed(family, theta, lg), 0.0)

    def objective(nu):
        return _kl_fixed(family, theta, lambda x: null.logpdf(x, nu))

    nu0 = _nuisance_guess(family, null, theta)
    lo, hi = 0.5 * nu0, 2.0 * nu0
    res = None
    for _ in range(3):
        res = optimize.minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                       options={"xatol": xtol * nu0})
        span = hi - lo
        if min(res.x - lo, hi - res.x) > 1e-6 * span:
            break
        lo, hi = 0.25 * lo, 4.0 * hi
    else:
        warnings.warn(f"nuisance minimizer at search boundary ({res.x:g}) for "
                      f"{family.name}, theta={theta}", BoundaryWarning, stacklevel=2)
    return max(float(res.fun), 0.0)
