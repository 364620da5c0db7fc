"""Local Bahadur slopes, large deviation coefficients and local efficiencies.

For a statistic with limit ``b(theta)`` under the alternative and
large-deviation function ``f(a) ~ kappa a^2`` under the null, the local
exact slope is ``c(theta) ~ 2 kappa b(theta)^2``; the local efficiency is
``lim c(theta) / (2 K(theta))`` with ``K`` the Kullback-Leibler distance to
the null.  Both limits are taken by Richardson extrapolation of
``c / theta^2`` and ``K / theta^2`` on a geometric theta grid.
"""

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from scipy import optimize

from .. import ustat
from ..alternatives import get_family, kl_to_null
from ..errors import NumericError
from .dists import alt_dist
from .models import get_model

GRID = (0.01, 0.02, 0.04)
HALF_GRID = (0.005, 0.01, 0.02)
RESIDUAL_TOL = 1e-3
EFFICIENCY_SLACK = 0.02

# tests whose integral statistic is asymptotically a registered U-statistic
_KERNELS = {"desu-integral": "desu", "polya-integral": "polya"}
# tests whose Kolmogorov statistic has a t-indexed kernel family in ustat-core
_FAMILY_KERNELS = {"desu-kolmogorov": (ustat.desu_family_kernel, "exponential")}


class ExtrapolationError(NumericError):
    """Richardson extrapolation on the theta grid is not stable."""

    def __init__(self, msg, diagnostics=None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


def richardson(values):
    """Extrapolate samples at ``h, 2h, 4h`` of a function smooth in ``h`` to ``h = 0``.

    Returns
    -------
    (float, float)
        The second-order extrapolate and the relative size of its last
        correction.
    """
    r1, r2, r4 = values
    a = 2.0 * r1 - r2
    b = 2.0 * r2 - r4
    est = (4.0 * a - b) / 3.0
    resid = abs(est - a) / abs(est) if est != 0.0 else abs(est - a)
    return est, resid


def _maximize(func, grid):
    """Maximum of ``func`` over a bracketing grid, refined around the best node."""
    vals = [func(t) for t in grid]
    k = max(range(len(vals)), key=vals.__getitem__)
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    best_t, best = grid[k], vals[k]
    if hi > lo:
        res = optimize.minimize_scalar(lambda t: -func(t), bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-10 * (1.0 + abs(best_t))})
        if -res.fun > best:
            best_t, best = float(res.x), -float(res.fun)
    return best, best_t


def _model(test):
    return get_model(test) if isinstance(test, str) else test


def _family(family):
    return get_family(family) if isinstance(family, str) else family


def _check_pair(model, fam):
    if model.null != fam.null:
        raise ValueError(f"alternative {fam.name} (null {fam.null}) is incompatible with "
                         f"{model.name} (null {model.null})")


def limit_under_alternative(test, family, theta, *, with_argmax=False):
    """In-probability limit ``b(theta)`` of the statistic under the alternative.

    Integral statistics return the signed limit (null value subtracted);
    Kolmogorov statistics return ``sup_t |difference(t)|``.
    """
    model, fam = _model(test), _family(family)
    _check_pair(model, fam)
    if theta == 0.0:
        return (0.0, None) if with_argmax else 0.0
    d = alt_dist(fam, theta)
    if model.kind == "integral":
        v = model.limit(d)
        return (v, None) if with_argmax else v
    d0 = model.d0
    val, t = _maximize(lambda s: abs(model.difference(s, d) - model.difference(s, d0)),
                       model.t_grid())
    return (val, t) if with_argmax else val


@lru_cache(maxsize=None)
def sup_variance(test):
    """``sup_t`` of the null variance of the influence of ``difference(t)``, with argmax."""
    model = _model(test)
    return _maximize(model.variance, model.t_grid())


@lru_cache(maxsize=None)
def sup_family_projection_variance(test):
    """``sup_t Delta_t^2`` of the t-indexed kernel family registered for ``test``."""
    factory, null = _FAMILY_KERNELS[test]
    lo = 1e-3
    grid = [lo * (8.0 / lo) ** (k / 120.0) for k in range(121)]
    return _maximize(lambda t: ustat.projection_variance(factory(t), null), grid)


def large_deviation_coefficient(test):
    """Quadratic coefficient ``kappa`` of the null large-deviation function.

    Integral statistics: ``1 / (2 m^2 Delta^2)`` (kernel degree ``m``,
    projection variance ``Delta^2``), equivalently ``1 / (2 E phi^2)`` for the
    influence function ``phi``.  Kolmogorov statistics: ``1 / (2 sup_t E
    phi_t^2)``.

    Raises
    ------
    DegeneracyError
        For a degenerate kernel.
    """
    if isinstance(test, ustat.Kernel):
        _, var = ustat.clt_params(test)
        return 1.0 / (2.0 * var)
    name = test if isinstance(test, str) else test.name
    if name in _KERNELS:
        k = ustat.KERNELS[_KERNELS[name]]
        _, var = ustat.clt_params(k)
        return 1.0 / (2.0 * var)
    if name in _FAMILY_KERNELS:
        d2, t = sup_family_projection_variance(name)
        m = _FAMILY_KERNELS[name][0](t).degree
        return 1.0 / (2.0 * m * m * d2)
    model = _model(test)
    if model.kind == "integral":
        return 1.0 / (2.0 * model.sigma2)
    v, _ = sup_variance(name)
    return 1.0 / (2.0 * v)


@dataclass
class EfficiencyReport:
    """Local Bahadur efficiency of one test against one alternative.

    ``gamma`` is ``lim c(theta) / theta^2``, ``k2`` is ``lim K(theta) /
    theta^2`` and ``efficiency = gamma / (2 k2)``.
    """

    test: str
    alternative: str
    kappa: float
    beta: float
    gamma: float
    k2: float
    efficiency: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


class _GridCache:
    """Memoized ``b``, ``c`` and ``K`` at theta nodes (halved grids share nodes)."""

    def __init__(self, model, fam, kappa):
        self.model, self.fam, self.kappa = model, fam, kappa
        self.nodes = {}

    def __call__(self, th):
        if th not in self.nodes:
            b = limit_under_alternative(self.model, self.fam, th)
            self.nodes[th] = (b, 2.0 * self.kappa * b * b, kl_to_null(self.fam, th))
        return self.nodes[th]

    def extrapolate(self, grid):
        b, c, K = zip(*(self(th) for th in grid))
        gamma, res_c = richardson([ci / th ** 2 for ci, th in zip(c, grid)])
        k2, res_k = richardson([Ki / th ** 2 for Ki, th in zip(K, grid)])
        beta, _ = richardson([abs(bi) / th for bi, th in zip(b, grid)])
        return dict(b=list(b), c=list(c), K=list(K), gamma=gamma, k2=k2, beta=beta,
                    residual_c=res_c, residual_K=res_k, efficiency=gamma / (2.0 * k2))


def local_derivative(test, family):
    """``d b / d theta`` at 0 from the null influence function and the family score."""
    model, fam = _model(test), _family(family)
    _check_pair(model, fam)
    if model.kind == "integral":
        return abs(model.derivative(fam.score))
    val, _ = _maximize(lambda t: abs(model.derivative_t(t, fam.score)), model.t_grid())
    return val


def local_efficiency(test, family, *, grid=GRID, max_refine=3, check_halved=True,
                     derivative_check=True):
    """Local Bahadur efficiency via theta-grid Richardson extrapolation.

    The grid ``h, 2h, 4h`` starts at ``grid``; while either extrapolation's
    last correction exceeds ``1e-3`` relative, the grid is halved (at most
    ``max_refine`` times).  The halved-grid efficiency is reported as a
    stability diagnostic.

    Raises
    ------
    ExtrapolationError
        If the extrapolation is still unstable after refinement.
    NumericError
        If the efficiency exceeds ``1 + 0.02``.
    """
    model, fam = _model(test), _family(family)
    _check_pair(model, fam)
    kappa = large_deviation_coefficient(model.name)
    cache = _GridCache(model, fam, kappa)
    grid = tuple(grid)
    for level in range(max_refine + 1):
        ex = cache.extrapolate(grid)
        if max(ex["residual_c"], ex["residual_K"]) <= RESIDUAL_TOL:
            break
        if level < max_refine:
            grid = tuple(th / 2.0 for th in grid)
    diag = {k: ex[k] for k in ("b", "c", "K", "residual_c", "residual_K")}
    diag["grid"] = list(grid)
    diag["refinements"] = level
    if check_halved:
        half = cache.extrapolate(tuple(th / 2.0 for th in grid))
        diag["halved_grid_efficiency"] = half["efficiency"]
    diag["bahadur_raghavachari"] = all(c <= 2.0 * K + 1e-6 for c, K, *_ in
                                       ((v[1], v[2]) for v in cache.nodes.values()))
    diag["nodes"] = {repr(th): list(v) for th, v in sorted(cache.nodes.items())}
    if derivative_check:
        d = local_derivative(model, fam)
        diag["derivative_beta"] = d
        diag["derivative_efficiency"] = 2.0 * kappa * d * d / (2.0 * ex["k2"])
    if max(ex["residual_c"], ex["residual_K"]) > RESIDUAL_TOL:
        raise ExtrapolationError(
            f"unstable extrapolation for ({model.name}, {fam.name}) on grid {grid}: residuals "
            f"{ex['residual_c']:.2e} (slope), {ex['residual_K']:.2e} (KL)", diag)
    eff = ex["efficiency"]
    if not 0.0 <= eff <= 1.0 + EFFICIENCY_SLACK:
        raise NumericError(f"efficiency {eff:.4f} for ({model.name}, {fam.name}) outside "
                           f"[0, {1 + EFFICIENCY_SLACK}]; diagnostics: {diag}")
    return EfficiencyReport(model.name, fam.name, kappa, ex["beta"], ex["gamma"], ex["k2"],
                            eff, diag)
