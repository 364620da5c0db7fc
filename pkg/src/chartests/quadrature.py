"""Adaptive quadrature on finite, half-infinite and infinite intervals.

Half-lines are mapped onto ``(0, 1]`` before handing the integrand to
QUADPACK's adaptive Gauss-Kronrod routine.  Two maps are available:

``"exp"``
    ``x = a - log(u)``; natural for integrands with exponential or Gaussian
    tails (every null family here except Cauchy).
``"algebraic"``
    ``x = a + (1 - u) / u``; used for algebraic tails.
"""

import math
import warnings

from scipy import integrate as _integrate

from .errors import NumericError

EPSABS = 1e-12
EPSREL = 1e-9


def _quad(func, a, b, points, epsabs, epsrel, limit, slack=100.0):
    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            value, err = _integrate.quad(
                func, a, b, points=points, epsabs=epsabs, epsrel=epsrel, limit=limit
            )
        except _integrate.IntegrationWarning as exc:
            # retry once collecting the estimate so the caller sees what was reached
            warnings.simplefilter("ignore", _integrate.IntegrationWarning)
            value, err = _integrate.quad(
                func, a, b, points=points, epsabs=epsabs, epsrel=epsrel, limit=limit
            )
            if err > slack * max(epsabs, epsrel * abs(value)):
                raise NumericError(
                    f"quadrature did not converge on [{a}, {b}]: {exc}", achieved=err
                ) from None
    if not math.isfinite(value):
        raise NumericError(f"non-finite integral on [{a}, {b}]", achieved=err)
    return value, err


def _halfline(func, a, sign, tail, epsabs, epsrel, limit, slack):
    # sign=+1 integrates over [a, inf), sign=-1 over (-inf, a]
    if tail == "exp":
        def g(u):
            if u <= 0.0:
                return 0.0
            return func(a - sign * math.log(u)) / u
    elif tail == "algebraic":
        def g(u):
            if u <= 0.0:
                return 0.0
            return func(a + sign * (1.0 - u) / u) / (u * u)
    else:
        raise ValueError(f"unknown tail map {tail!r}")
    return _quad(g, 0.0, 1.0, None, epsabs, epsrel, limit, slack)


def integrate(func, a, b, *, points=(), tail="exp", epsabs=EPSABS, epsrel=EPSREL,
              limit=200, full_output=False, center=0.0, slack=100.0):
    """Integrate a scalar function of one real variable.

    Parameters
    ----------
    func : callable
        ``func(x) -> float``.
    a, b : float
        Limits; either may be infinite.
    points : sequence of float, optional
        Interior breakpoints (kinks or jumps of the integrand).
    tail : {"exp", "algebraic"}
        Map used on infinite limits.
    epsabs, epsrel : float
        Absolute and relative tolerance.
    center : float
        Extra split point for doubly infinite ranges, placed where the
        integrand's mass sits.
    slack : float
        A non-convergence warning is tolerated while the error estimate is
        below ``slack`` times the requested tolerance.

    Returns
    -------
    float, or (float, float) with ``full_output``
        The integral and, optionally, the absolute error estimate.

    Raises
    ------
    NumericError
        When the adaptive scheme cannot approach the requested tolerance.
    """
    if a == b:
        return (0.0, 0.0) if full_output else 0.0
    if a > b:
        res = integrate(func, b, a, points=points, tail=tail, epsabs=epsabs,
                        epsrel=epsrel, limit=limit, full_output=True, center=center,
                        slack=slack)
        return (-res[0], res[1]) if full_output else -res[0]
    pts = sorted(float(p) for p in points if a < p < b)
    finite_a, finite_b = math.isfinite(a), math.isfinite(b)
    if finite_a and finite_b:
        return _finish(*_quad(func, a, b, pts or None, epsabs, epsrel, limit, slack),
                       full_output)
    if not finite_a and not finite_b and not pts:
        pts = [center]
    if not finite_a and not finite_b and not pts[0] <= center <= pts[-1]:
        pts = sorted(pts + [center])
    # finite pieces between breakpoints, mapped half-lines beyond the outermost ones
    edges = ([a] if finite_a else []) + pts + ([b] if finite_b else [])
    value = err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi > lo:
            v, e = _quad(func, lo, hi, None, epsabs, epsrel, limit, slack)
            value, err = value + v, err + e
    if not finite_a:
        v, e = _halfline(func, edges[0], -1, tail, epsabs, epsrel, limit, slack)
        value, err = value + v, err + e
    if not finite_b:
        v, e = _halfline(func, edges[-1], +1, tail, epsabs, epsrel, limit, slack)
        value, err = value + v, err + e
    return _finish(value, err, full_output)


def _finish(value, err, full_output):
    return (value, err) if full_output else value


def expectation(func, pdf, support, *, points=(), tail="exp", **kwargs):
    """``E g(X)`` for a density on ``support = (lo, hi)``."""
    lo, hi = support

    def integrand(x):
        p = pdf(x)
        return func(x) * p if p > 0.0 else 0.0

    return integrate(integrand, lo, hi, points=points, tail=tail, **kwargs)
