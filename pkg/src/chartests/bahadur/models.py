"""Asymptotic descriptions of each test: limiting functional and null influence.

Integral models expose ``functional(dist)`` (the in-probability limit of
the statistic) and ``influence(x)`` (its null influence function); the
local slope is driven by ``functional`` near the null and the large
deviation coefficient by ``E influence^2``.

Kolmogorov models expose ``difference(t, dist)``, the limit of the
difference of the two empirical dfs at ``t``, and ``variance(t)``, the null
variance of its influence function.
"""

import math
from functools import cached_property

from ..classical import EULER_GAMMA
from ..quadrature import integrate
from .dists import null_dist, null_ppf

# outer tolerances stay well above the noise floor of nested inner integrals
_TOL = dict(epsabs=1e-12, epsrel=1e-11)
# inner integrals may sit on square-root kinks; their error estimates are pessimistic
_INNER = dict(epsabs=1e-14, epsrel=1e-12, slack=1e4)
# derivative integrands jump where the conditional dfs do; used only as a cross-check
_DERIV = dict(epsabs=1e-12, epsrel=1e-10, slack=1e4)


def _on_support(func, d, points=(), **tol):
    lo, hi = d.support
    pts = []
    for p in sorted(p for p in points if lo < p < hi):
        if not pts or p - pts[-1] > 1e-12 * (1.0 + abs(p)):
            pts.append(p)
    return integrate(func, lo, hi, points=pts, tail=d.tail, **(tol or _TOL))


def _null_expect(func, d, points=()):
    return _on_support(lambda x: func(x) * d.pdf(x), d, points)


class IntegralModel:
    """Base class: subclasses implement ``functional`` and ``influence``."""

    kind = "integral"
    influence_points = ()

    def __init__(self, name, null):
        self.name = name
        self.null = null
        self.d0 = null_dist(null)

    def functional(self, d):
        raise NotImplementedError

    def influence(self, x):
        raise NotImplementedError

    def limit(self, d):
        """Limit under ``d`` minus the limit under the null."""
        return self.functional(d) - self.null_value

    @cached_property
    def null_value(self):
        return self.functional(self.d0)

    @cached_property
    def influence_mean(self):
        return _null_expect(self.influence, self.d0, self.influence_points)

    @cached_property
    def sigma2(self):
        """Null variance of the influence function."""
        m = self.influence_mean
        return _null_expect(lambda x: (self.influence(x) - m) ** 2, self.d0,
                            self.influence_points)

    def derivative(self, score):
        """Directional derivative of the limit along a density perturbation."""
        return _on_support(lambda x: self.influence(x) * score(x), self.d0,
                           self.influence_points, **_DERIV)


class SupModel:
    """Base class: subclasses implement ``difference`` and ``variance``."""

    kind = "sup"
    grid_size = 160

    def __init__(self, name, null):
        self.name = name
        self.null = null
        self.d0 = null_dist(null)
        self._ppf = null_ppf(null)

    def difference(self, t, d):
        raise NotImplementedError

    def variance(self, t):
        raise NotImplementedError

    def influence_t(self, x, t):
        raise NotImplementedError

    def t_grid(self):
        """Grid of null quantiles on which suprema are bracketed."""
        m = self.grid_size
        return [self._ppf((k + 0.5) / m) for k in range(m)]

    def derivative_t(self, t, score, points=()):
        return _on_support(lambda x: self.influence_t(x, t) * score(x), self.d0, points,
                           **_DERIV)


# -- U-empirical characterization models -------------------------------------------

class CharacterizationSpec:
    """Laws of ``g1``/``g2`` under any df and their null conditional dfs.

    ``L1(t, d)`` and ``L2(t, d)`` are ``P(g_i < t)`` under ``d``;
    ``cond1(x, t)`` and ``cond2(x, t)`` are ``P(g_i(x, other args) < t)``
    under the null with one argument fixed at ``x`` (averaged over its
    position).  ``xkinks(t)`` lists points in ``x`` where the conditional
    dfs are not smooth; ``wkinks(x)`` likewise in ``t``.
    """

    def __init__(self, name, null, r, s, L1, L2, cond1, cond2, xkinks, wkinks):
        self.name, self.null, self.r, self.s = name, null, r, s
        self.L1, self.L2, self.cond1, self.cond2 = L1, L2, cond1, cond2
        self.xkinks, self.wkinks = xkinks, wkinks
        self.d0 = null_dist(null)


class CharIntegralModel(IntegralModel):
    def __init__(self, spec):
        super().__init__(f"{spec.name}-integral", spec.null)
        self.spec = spec

    # both sub-statistics share one law under the null
    null_value = 0.0

    def functional(self, d):
        sp = self.spec
        return _on_support(lambda w: (sp.L1(w, d) - sp.L2(w, d)) * d.pdf(w), d)

    @cached_property
    def _T(self):
        sp, d0 = self.spec, self.d0
        t1 = _null_expect(lambda w: sp.L1(w, d0), d0)
        t2 = _null_expect(lambda w: sp.L2(w, d0), d0)
        return t1, t2

    def _A(self, cond, x):
        return _on_support(lambda w: cond(x, w) * self.d0.pdf(w), self.d0,
                           self.spec.wkinks(x), **_INNER)

    def influence(self, x):
        sp = self.spec
        t1, t2 = self._T
        return sp.r * (self._A(sp.cond1, x) - t1) - sp.s * (self._A(sp.cond2, x) - t2)


class CharSupModel(SupModel):
    def __init__(self, spec):
        super().__init__(f"{spec.name}-kolmogorov", spec.null)
        self.spec = spec

    def difference(self, t, d):
        return self.spec.L1(t, d) - self.spec.L2(t, d)

    def influence_t(self, x, t, _cache={}):
        sp = self.spec
        key = (id(self), t)
        if key not in _cache:
            _cache.clear()
            _cache[key] = (sp.L1(t, self.d0), sp.L2(t, self.d0))
        l1, l2 = _cache[key]
        return sp.r * (sp.cond1(x, t) - l1) - sp.s * (sp.cond2(x, t) - l2)

    def variance(self, t):
        sp = self.spec
        l1, l2 = sp.L1(t, self.d0), sp.L2(t, self.d0)

        def g(x):
            v = sp.r * (sp.cond1(x, t) - l1) - sp.s * (sp.cond2(x, t) - l2)
            return v * v

        return _null_expect(g, self.d0, sp.xkinks(t))

    def derivative_t(self, t, score, points=()):
        return super().derivative_t(t, score, tuple(points) + tuple(self.spec.xkinks(t)))


# exponential null helpers

def _F0(x):
    return -math.expm1(-x) if x > 0.0 else 0.0


def _S0(x):
    return math.exp(-x) if x > 0.0 else 1.0


def _two_min_cond(x, t):
    return 1.0 if x < 0.5 * t else _F0(0.5 * t)


def _two_min_L(t, d):
    return 1.0 - d.sf(0.5 * t) ** 2 if t > 0.0 else 0.0


def _identity_L(t, d):
    return d.cdf(t)


def _identity_cond(x, t):
    return 1.0 if x < t else 0.0


def _desu_spec():
    return CharacterizationSpec(
        "desu", "exponential", 1, 2, _identity_L, _two_min_L, _identity_cond, _two_min_cond,
        xkinks=lambda t: (0.5 * t, t), wkinks=lambda x: (x, 2.0 * x))


def _rossberg_L1(t, d):
    # the smallest of three is at x and both others exceed x + t
    if t <= 0.0:
        return 0.0
    return 1.0 - 3.0 * _on_support(lambda x: d.pdf(x) * d.sf(x + t) ** 2, d, **_INNER)


def _rossberg_L2(t, d):
    return 1.0 - d.sf(t) ** 2 if t > 0.0 else 0.0


def _rossberg_cond1(x, t):
    # P(middle minus smallest of {x, Y, Z} >= t) split by the rank of x
    if t <= 0.0:
        return 0.0
    surv = _S0(x + t) ** 2
    if x > t:
        u = x - t
        inner = _F0(x) * _F0(u) - (_F0(u) + 0.5 * math.exp(-t) * math.expm1(-2.0 * u))
        surv += 2.0 * _F0(u) * _S0(x) + 2.0 * inner
    return 1.0 - surv


def _rossberg_cond2(x, t):
    return 1.0 if x < t else _F0(t)


def _rossberg_spec():
    return CharacterizationSpec(
        "rossberg", "exponential", 3, 2, _rossberg_L1, _rossberg_L2, _rossberg_cond1,
        _rossberg_cond2, xkinks=lambda t: (t,), wkinks=lambda x: (x,))


def _ahs_L1(t, d):
    if t <= 0.0:
        return 0.0
    return 1.0 - 2.0 * _on_support(lambda y: d.pdf(y) * d.sf(y + t), d, **_INNER)


def _ahs_cond1(x, t):
    return _F0(x + t) - _F0(x - t) if t > 0.0 else 0.0


def _ahsanullah_spec():
    return CharacterizationSpec(
        "ahsanullah-exp", "exponential", 2, 2, _ahs_L1, _two_min_L, _ahs_cond1, _two_min_cond,
        xkinks=lambda t: (0.5 * t, t), wkinks=lambda x: (x, 2.0 * x))


# normal null

def _Phi(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _polya_spec(a):
    b = math.sqrt(1.0 - a * a)

    def L2(t, d):
        return 0.5 * (_on_support(lambda y: d.pdf(y) * d.cdf((t - b * y) / a), d, **_INNER)
                      + _on_support(lambda y: d.pdf(y) * d.cdf((t - a * y) / b), d, **_INNER))

    def cond2(x, t):
        return 0.5 * (_Phi((t - a * x) / b) + _Phi((t - b * x) / a))

    name = "polya" if a == math.sqrt(0.5) else f"polya-{a:.6g}"
    return CharacterizationSpec(name, "normal", 1, 2, _identity_L, L2, _identity_cond, cond2,
                                xkinks=lambda t: (), wkinks=lambda x: (x,))


def _shepp_cond(x, t, d):
    """``P(2 x Y / sqrt(x^2 + Y^2) < t)`` for ``Y ~ d``."""
    if x == 0.0:
        return 1.0 if t > 0.0 else 0.0
    ax = abs(x)
    u = t / (2.0 * ax)
    if u >= 1.0:
        return 1.0
    if u <= -1.0:
        return 0.0
    y = ax * u / math.sqrt(1.0 - u * u)
    # increasing in Y for x > 0; for x < 0 the statistic flips sign with Y
    return d.cdf(y) if x > 0.0 else d.sf(-y)


def _shepp_spec():
    def L2(t, d):
        h = 0.5 * abs(t)
        return _on_support(lambda x: d.pdf(x) * _shepp_cond(x, t, d), d, (-h, 0.0, h),
                           **_INNER)

    d0 = null_dist("normal")
    return CharacterizationSpec(
        "shepp", "normal", 1, 2, _identity_L, L2, _identity_cond,
        lambda x, t: _shepp_cond(x, t, d0),
        xkinks=lambda t: (-0.5 * abs(t), 0.0, 0.5 * abs(t)),
        wkinks=lambda x: (-2.0 * abs(x), x, 2.0 * abs(x)))


def _cauchy_spec():
    def cond(x, t, d):
        # x in either position of X/3 - 2Y/3
        return 0.5 * (d.sf((x - 3.0 * t) / 2.0) + d.cdf(3.0 * t + 2.0 * x))

    def L2(t, d):
        return _on_support(lambda x: d.pdf(x) * cond(x, t, d), d, **_INNER)

    d0 = null_dist("cauchy")
    return CharacterizationSpec(
        "cauchy-rr", "cauchy", 1, 2, _identity_L, L2, _identity_cond,
        lambda x, t: cond(x, t, d0), xkinks=lambda t: (), wkinks=lambda x: (x,))


# -- Angus ---------------------------------------------------------------------------

class AngusModel(SupModel):
    """``S(2t) - S(t)^2``; influence of the empirical survival at ``2t`` and ``t``."""

    def __init__(self):
        super().__init__("angus", "exponential")

    def difference(self, t, d):
        return d.sf(2.0 * t) - d.sf(t) ** 2

    def influence_t(self, y, t):
        s = _S0(t)
        return ((1.0 if y > 2.0 * t else 0.0) - s * s) - 2.0 * s * ((1.0 if y > t else 0.0) - s)

    def variance(self, t):
        return _null_expect(lambda y: self.influence_t(y, t) ** 2, self.d0, (t, 2.0 * t))

    def derivative_t(self, t, score, points=()):
        return super().derivative_t(t, score, (t, 2.0 * t))


# -- classical statistics --------------------------------------------------------------

def _mean(d):
    return _on_support(d.sf, d)


class GiniModel(IntegralModel):
    def __init__(self):
        super().__init__("gini", "exponential")

    def functional(self, d):
        emd = 2.0 * _on_support(lambda x: d.cdf(x) * d.sf(x), d)
        return emd / (2.0 * _mean(d))

    def influence(self, x):
        return 0.5 * x + 2.0 * math.exp(-x) - 1.5


class MoranModel(IntegralModel):
    influence_points = (1.0,)

    def __init__(self):
        super().__init__("moran", "exponential")

    def functional(self, d):
        elog = _on_support(lambda x: math.log(x) * d.pdf(x) if x > 0.0 else 0.0, d, (1.0,))
        return elog - math.log(_mean(d)) + EULER_GAMMA

    def influence(self, x):
        return math.log(x) + EULER_GAMMA - x + 1.0 if x > 0.0 else -math.inf


class GreenwoodModel(IntegralModel):
    def __init__(self):
        super().__init__("greenwood", "exponential")

    def functional(self, d):
        m2 = 2.0 * _on_support(lambda x: x * d.sf(x), d)
        return 2.0 - m2 / _mean(d) ** 2

    def influence(self, x):
        return -x * x + 4.0 * x - 2.0


# -- registry --------------------------------------------------------------------------

def _build():
    out = {}
    for spec in (_desu_spec(), _rossberg_spec(), _ahsanullah_spec(), _polya_spec(math.sqrt(0.5)),
                 _shepp_spec(), _cauchy_spec()):
        out[f"{spec.name}-integral"] = lambda spec=spec: CharIntegralModel(spec)
        out[f"{spec.name}-kolmogorov"] = lambda spec=spec: CharSupModel(spec)
    out["angus"] = AngusModel
    out["gini"] = GiniModel
    out["moran"] = MoranModel
    out["greenwood"] = GreenwoodModel
    return out


_FACTORIES = _build()
_CACHE = {}


def get_model(name):
    """Model for a registered test name (instances are cached)."""
    if name not in _CACHE:
        if name in _FACTORIES:
            _CACHE[name] = _FACTORIES[name]()
        elif name.startswith("polya-") and name.endswith(("-integral", "-kolmogorov")):
            stem, kind = name.rsplit("-", 1)
            spec = _polya_spec(float(stem[len("polya-"):]))
            _CACHE[name] = CharIntegralModel(spec) if kind == "integral" else CharSupModel(spec)
        else:
            raise KeyError(f"no asymptotic model for test {name!r}; known: {sorted(_FACTORIES)}")
    return _CACHE[name]


MODEL_NAMES = tuple(_FACTORIES)
