"""Null families: standard members, log-densities with nuisance, samplers.

Each family is represented by its standard member (``scale = 1``); the
nuisance parameter enters only through :meth:`NullFamily.logpdf` and is
profiled out when computing Kullback-Leibler distances.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from .sample import Domain

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class NullFamily:
    """A composite null hypothesis with at most one nuisance parameter.

    Attributes
    ----------
    name : str
        Registry identifier.
    pdf, cdf, sf : callable
        Scalar functions of the standard member.
    logpdf : callable or None
        ``logpdf(x, nuisance)``; ``None`` for nonparametric nulls.
    nuisance : str or None
        ``"scale"`` or ``"shape"``; ``None`` when the null is simple or
        nonparametric.
    support : tuple of float
    domain : Domain
        Data domain required by tests of this null.
    tail : str
        Quadrature tail map suited to the family (see :mod:`.quadrature`).
    """

    name: str
    pdf: Callable[[float], float]
    cdf: Callable[[float], float]
    sf: Callable[[float], float]
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    support: tuple
    domain: Domain
    logpdf: Optional[Callable[[float, float], float]] = None
    nuisance: Optional[str] = None
    tail: str = "exp"

    def sample(self, rng, n):
        return self.sampler(rng, n)


def _exp_pdf(x):
    return math.exp(-x) if x >= 0.0 else 0.0


def _exp_cdf(x):
    return -math.expm1(-x) if x > 0.0 else 0.0


def _exp_sf(x):
    return math.exp(-x) if x > 0.0 else 1.0


def _exp_logpdf(x, lam):
    return math.log(lam) - lam * x


def _norm_pdf(x):
    return math.exp(-0.5 * x * x) / _SQRT2PI


def _norm_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _norm_sf(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def _norm_logpdf(x, sigma):
    z = x / sigma
    return -0.5 * z * z - math.log(sigma * _SQRT2PI)


def _cauchy_pdf(x):
    return 1.0 / (math.pi * (1.0 + x * x))


def _cauchy_cdf(x):
    return 0.5 + math.atan(x) / math.pi


def _cauchy_sf(x):
    return 0.5 - math.atan(x) / math.pi


def _cauchy_logpdf(x, s):
    return -math.log(math.pi * s) - math.log1p((x / s) ** 2)


def _unit_pdf(x):
    return 1.0 if 0.0 <= x <= 1.0 else 0.0


def _unit_cdf(x):
    return min(max(x, 0.0), 1.0)


def _power_logpdf(x, mu):
    return math.log(mu) + (mu - 1.0) * math.log(x)


def _sample_exp(rng, n):
    return rng.standard_exponential(n)


def _sample_norm(rng, n):
    return rng.standard_normal(n)


def _sample_cauchy(rng, n):
    return rng.standard_cauchy(n)


def _sample_unit(rng, n):
    # (0, 1]: the power-law domain excludes zero
    return 1.0 - rng.random(n)


NULLS = {
    "exponential": NullFamily(
        "exponential", _exp_pdf, _exp_cdf, _exp_sf, _sample_exp, (0.0, math.inf),
        Domain.NONNEGATIVE, _exp_logpdf, "scale"),
    "normal": NullFamily(
        "normal", _norm_pdf, _norm_cdf, _norm_sf, _sample_norm, (-math.inf, math.inf),
        Domain.REAL, _norm_logpdf, "scale"),
    "cauchy": NullFamily(
        "cauchy", _cauchy_pdf, _cauchy_cdf, _cauchy_sf, _sample_cauchy,
        (-math.inf, math.inf), Domain.REAL, _cauchy_logpdf, "scale", tail="algebraic"),
    "power": NullFamily(
        "power", _unit_pdf, _unit_cdf, lambda x: 1.0 - _unit_cdf(x), _sample_unit,
        (0.0, 1.0), Domain.UNIT, _power_logpdf, "shape"),
    # symmetry about zero; simulated and integrated through the standard normal
    "symmetric": NullFamily(
        "symmetric", _norm_pdf, _norm_cdf, _norm_sf, _sample_norm, (-math.inf, math.inf),
        Domain.REAL, None, None),
}


def get_null(name):
    try:
        return NULLS[name]
    except KeyError:
        raise KeyError(f"unknown null family {name!r}; known: {sorted(NULLS)}") from None
