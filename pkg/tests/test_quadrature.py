import math

import pytest

from chartests import quadrature as q
from chartests.errors import NumericError


@pytest.mark.parametrize("func, a, b, tail, expected", [
    (lambda x: math.exp(-x), 0.0, math.inf, "exp", 1.0),
    (lambda x: x ** 3 * math.exp(-x), 0.0, math.inf, "exp", 6.0),
    (lambda x: math.exp(-x * x / 2), -math.inf, math.inf, "exp", math.sqrt(2 * math.pi)),
    (lambda x: 1 / (math.pi * (1 + x * x)), -math.inf, math.inf, "algebraic", 1.0),
    (lambda x: math.exp(x), -math.inf, 0.0, "exp", 1.0),
    (lambda x: x * x, 0.0, 3.0, "exp", 9.0),
])
def test_known_integrals(func, a, b, tail, expected):
    assert q.integrate(func, a, b, tail=tail) == pytest.approx(expected, rel=1e-10)


def test_reversed_limits_and_empty_range():
    f = lambda x: math.exp(-x)  # noqa: E731
    assert q.integrate(f, math.inf, 0.0) == pytest.approx(-1.0, rel=1e-12)
    assert q.integrate(f, 2.0, 2.0) == 0.0


def test_breakpoints_handle_jumps():
    # indicator of [0, 1.3) against exp(-x)
    f = lambda x: math.exp(-x) if x < 1.3 else 0.0  # noqa: E731
    val = q.integrate(f, 0.0, math.inf, points=(1.3,), epsabs=1e-14)
    assert val == pytest.approx(-math.expm1(-1.3), abs=1e-13)


def test_breakpoints_far_in_tail():
    f = lambda x: math.exp(-0.5 * x * x) * (x > 20.0)  # noqa: E731
    assert q.integrate(f, -math.inf, math.inf, points=(20.0,)) == pytest.approx(
        math.sqrt(2 * math.pi) * 0.5 * math.erfc(20 / math.sqrt(2)), abs=1e-15)


def test_full_output_error_estimate():
    val, err = q.integrate(lambda x: math.exp(-x), 0.0, math.inf, full_output=True)
    assert val == pytest.approx(1.0) and 0 <= err < 1e-9


def test_nonconvergence_raises():
    with pytest.raises(NumericError):
        q.integrate(lambda x: math.sin(1.0 / x) / x, 1e-8, 1.0, limit=5, epsabs=1e-14,
                    epsrel=1e-14)


def test_unknown_tail():
    with pytest.raises(ValueError):
        q.integrate(lambda x: 0.0, 0.0, math.inf, tail="bogus")


def test_expectation():
    pdf = lambda x: math.exp(-x)  # noqa: E731
    assert q.expectation(lambda x: x * x, pdf, (0.0, math.inf)) == pytest.approx(2.0)
