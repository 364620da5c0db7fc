"""Scalar distribution handles fed to the slope computations."""

import math
from dataclasses import dataclass
from typing import Callable

from scipy import special

from ..alternatives import get_family
from ..nulls import get_null


@dataclass(frozen=True)
class Dist:
    pdf: Callable[[float], float]
    cdf: Callable[[float], float]
    sf: Callable[[float], float]
    support: tuple
    tail: str = "exp"
    label: str = ""


def _exp_ppf(p):
    return -math.log1p(-p)


_PPF = {
    "exponential": _exp_ppf,
    "normal": lambda p: float(special.ndtri(p)),
    "symmetric": lambda p: float(special.ndtri(p)),
    "cauchy": lambda p: math.tan(math.pi * (p - 0.5)),
}


def null_dist(name):
    nf = get_null(name)
    return Dist(nf.pdf, nf.cdf, nf.sf, nf.support, nf.tail, name)


def null_ppf(name):
    return _PPF[name]


def alt_dist(family, theta):
    """Distribution of ``family`` at ``theta`` (a name or an AlternativeFamily)."""
    fam = get_family(family) if isinstance(family, str) else family
    fam.check_theta(theta)
    return Dist(lambda x: fam.pdf(x, theta), lambda x: fam.cdf(x, theta),
                lambda x: fam.sf(x, theta), fam.support, fam.tail, f"{fam.name}({theta:g})")
