import math

import numpy as np
import pytest

from chartests import classical
from chartests.errors import DomainError


def _gini_oracle(xs):
    xs = np.asarray(xs, dtype=float)
    n = xs.size
    return np.sum(np.abs(xs[:, None] - xs[None, :])) / (2 * n * (n - 1) * xs.mean())


def _lilliefors_grid(xs, m=100_000):
    xs = np.sort(xs)
    t = np.concatenate((np.linspace(0, 3 * xs[-1], m), xs, np.nextafter(xs, -np.inf)))
    F = np.searchsorted(xs, t, side="right") / xs.size
    return float(np.max(np.abs(1 - F - np.exp(-t / xs.mean()))))


def test_euler_constant():
    assert classical.EULER_GAMMA == 0.5772156649015329
    assert classical.EULER_GAMMA == float(np.euler_gamma)


def test_greenwood_examples():
    assert classical.greenwood([2.0, 2.0, 2.0]).value == 1.0
    assert classical.greenwood([1.0, 3.0]).value == pytest.approx(0.75, abs=1e-15)


def test_moran_examples():
    assert classical.moran([4.0] * 5).value == pytest.approx(classical.EULER_GAMMA, abs=1e-15)
    expected = 0.5 * math.log(0.75) + classical.EULER_GAMMA
    assert classical.moran([1.0, 3.0]).value == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(0.4333746, abs=1e-7)


def test_gini_examples():
    assert classical.gini([5.0, 5.0]).value == 0.0
    assert classical.gini([1.0, 3.0]).value == 0.5


def test_lilliefors_examples():
    assert classical.lilliefors([1.0]).value == pytest.approx(1 - math.exp(-1), abs=1e-15)


@pytest.mark.parametrize("func", [classical.greenwood, classical.moran, classical.gini,
                                  classical.lilliefors])
def test_scale_invariance(func, rng):
    xs = rng.exponential(size=50)
    base = func(xs).value
    for c in (1e-3, 0.7, 42.0):
        assert func(c * xs).value == pytest.approx(base, abs=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        classical.moran([1.0, 0.0])
    with pytest.raises(DomainError):
        classical.greenwood([0.0, 0.0])
    with pytest.raises(DomainError):
        classical.gini([-1.0, 2.0])
    with pytest.raises(DomainError):
        classical.gini([1.0])


def test_gini_fast_equals_quadratic_oracle(rng):
    for n in (2, 3, 10, 100, 500):
        for _ in range(5):
            xs = rng.exponential(size=n)
            fast = classical.gini(xs).value
            assert fast == classical.gini_quadratic(xs).value
            assert fast == pytest.approx(_gini_oracle(xs), rel=1e-13)


def test_gini_null_mean():
    rng = np.random.default_rng(3)
    vals = [classical.gini(rng.exponential(size=200)).value for _ in range(500)]
    assert abs(np.mean(vals) - 0.5) < 0.01


def test_lilliefors_matches_grid(rng):
    for _ in range(50):
        xs = rng.exponential(size=int(rng.integers(1, 40)))
        exact = classical.lilliefors(xs).value
        grid = _lilliefors_grid(xs)
        assert 0.0 <= exact <= 1.0
        assert grid <= exact + 1e-12
        assert exact - grid < 1e-4


def test_reproducible_null_values():
    a = classical.moran(np.random.default_rng(9).exponential(size=30)).value
    b = classical.moran(np.random.default_rng(9).exponential(size=30)).value
    assert a == b
