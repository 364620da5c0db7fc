"""Closed-form constants for the Polya-type normality tests."""

import math


def _atan_sqrt(v):
    return math.atan(math.sqrt(v))


def polya_omega(a):
    """Denominator of the shift-alternative efficiency of the ``X = aX + bY`` test."""
    a2 = a * a
    return (7.0 / 3.0 * math.pi
            - 4.0 * _atan_sqrt((1.0 + a2) / (3.0 - a2))
            - 4.0 * _atan_sqrt((2.0 - a2) / (2.0 + a2))
            - 4.0 * _atan_sqrt((1.0 - a2) / (3.0 + a2))
            - 4.0 * _atan_sqrt(a2 / (4.0 - a2))
            + 4.0 * _atan_sqrt(a2 * (1.0 - a2) / (a2 * a2 - a2 + 4.0)))


def polya_efficiency_closed_form(a):
    """Local efficiency of the integral ``X = aX + bY`` normality test, shift alternative.

    Parameters
    ----------
    a : float
        Weight in ``(0, 1)``; ``b = sqrt(1 - a^2)``.
    """
    a = float(a)
    if not 0.0 < a < 1.0:
        raise ValueError(f"a must lie in (0, 1), got {a}")
    return (a - 1.0 + math.sqrt(1.0 - a * a)) ** 2 / polya_omega(a)


def polya_delta2_closed_form():
    """Projection variance of the symmetric Polya kernel (``a = b = 1/sqrt 2``)."""
    return 13.0 / 108.0 - 4.0 / (9.0 * math.pi) * (
        math.atan(math.sqrt(3.0 / 5.0)) + 0.5 * math.atan(1.0 / math.sqrt(7.0)))
