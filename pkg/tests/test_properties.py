"""Property-based checks of the invariants shared across modules."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chartests import characterizations as chars
from chartests import classical, montecarlo, ustat
from chartests.bahadur import MODEL_NAMES, get_model
from chartests.bahadur.table import ALTERNATIVES
from chartests.registry import get_test

pos = st.floats(min_value=1e-3, max_value=50.0, allow_nan=False, allow_infinity=False)
real = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)
sample = st.lists(pos, min_size=3, max_size=25)
rsample = st.lists(real, min_size=3, max_size=25)
binary_scale = st.integers(min_value=-20, max_value=20).map(lambda k: 2.0 ** k)

FAST_KERNELS = [k for k in ustat.KERNELS.values() if k.fast is not None]
CHARS = sorted(chars.REGISTRY)
EXP_CHARS = [c for c in CHARS if chars.REGISTRY[c].null == "exponential"]
STATS = [(c, g) for c in CHARS for g in (chars.REGISTRY[c].g1, chars.REGISTRY[c].g2)]


def _quiet(func, *args, **kw):
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", chars.TiesWarning)
        return func(*args, **kw)


# kernel symmetry ----------------------------------------------------------------

@pytest.mark.parametrize("kernel", list(ustat.KERNELS.values()), ids=lambda k: k.name)
@settings(max_examples=200)
@given(data=st.data())
def test_kernel_symmetry(kernel, data):
    args = data.draw(st.lists(real, min_size=kernel.degree, max_size=kernel.degree))
    ref = kernel(*args)
    for perm in itertools.permutations(args):
        assert kernel(*perm) == ref


@pytest.mark.parametrize("pair", STATS, ids=lambda p: f"{p[0]}:{p[1].name}")
@settings(max_examples=200)
@given(data=st.data())
def test_symmetrized_subset_statistics(pair, data):
    _, g = pair
    args = data.draw(st.lists(pos, min_size=g.degree, max_size=g.degree))
    ref = sorted(g.enumerate_values(args).tolist())
    for perm in itertools.permutations(args):
        assert sorted(g.enumerate_values(list(perm)).tolist()) == ref


# centering -----------------------------------------------------------------------

@pytest.mark.parametrize("kernel", [k for k in ustat.KERNELS.values() if k.centered],
                         ids=lambda k: k.name)
def test_centered_kernels(kernel):
    assert abs(ustat.projection_profile(kernel).mean) < 1e-8


# fast path vs full enumeration ----------------------------------------------------

@pytest.mark.parametrize("kernel", FAST_KERNELS, ids=lambda k: k.name)
@settings(max_examples=100)
@given(xs=sample)
def test_fast_kernel_equals_enumeration(kernel, xs):
    assert ustat.evaluate_u_statistic(xs, kernel) == \
        ustat.evaluate_u_statistic(xs, kernel, method="enumerate")


def _brute(char, xs):
    w = char.prepare(xs)
    v1 = np.sort(char.g1.enumerate_values(w))
    v2 = np.sort(char.g2.enumerate_values(w))
    n1, n2 = v1.size, v2.size
    lt = lambda v, t: np.searchsorted(v, t, side="left")  # noqa: E731
    le = lambda v, t: np.searchsorted(v, t, side="right")  # noqa: E731
    from fractions import Fraction
    integral = sum(Fraction(int(lt(v1, x)), n1) - Fraction(int(lt(v2, x)), n2) for x in w)
    cand = np.union1d(v1, v2)
    sup = max(max(abs(Fraction(int(f(v1, t)), n1) - Fraction(int(f(v2, t)), n2))
                  for f in (lt, le)) for t in cand)
    return float(integral / w.size), float(sup)


@pytest.mark.parametrize("name", CHARS)
@settings(max_examples=100)
@given(data=st.data())
def test_characterization_fast_equals_enumeration(name, data):
    char = chars.REGISTRY[name]
    if char.domain.value == "unit-interval":
        xs = data.draw(st.lists(st.floats(1e-3, 1.0), min_size=3, max_size=25))
    elif char.domain.value == "nonnegative":
        xs = data.draw(sample)
    else:
        xs = data.draw(rsample)
    if name == "arnold-villasenor-3":
        xs = xs[:14]
    assume(len(xs) >= char.min_n)
    integral, sup = _brute(char, xs)
    assert _quiet(chars.run_characterization_test, char, xs, "integral").value == integral
    assert _quiet(chars.run_characterization_test, char, xs, "kolmogorov").value == sup


@settings(max_examples=100)
@given(xs=st.lists(pos, min_size=2, max_size=60))
def test_gini_fast_equals_quadratic(xs):
    assert classical.gini(xs).value == classical.gini_quadratic(xs).value


# scale invariance ----------------------------------------------------------------

@pytest.mark.parametrize("name", EXP_CHARS + ["cauchy-rr", "bh-symmetry",
                                              "ahsanullah-symmetry-3"])
@settings(max_examples=60)
@given(xs=sample, c=binary_scale, kind=st.sampled_from(chars.KINDS))
def test_scale_free_statistics_exact(name, xs, c, kind):
    xs = np.array(xs[:12] if name == "arnold-villasenor-3" else xs)
    assume(xs.size >= chars.REGISTRY[name].min_n)
    a = _quiet(chars.run_characterization_test, name, xs, kind).value
    b = _quiet(chars.run_characterization_test, name, c * xs, kind).value
    assert a == b


@settings(max_examples=100)
@given(xs=sample, c=binary_scale)
def test_angus_scale_free(xs, c):
    xs = np.array(xs)
    assert chars.angus_statistic(xs).value == chars.angus_statistic(c * xs).value


@pytest.mark.parametrize("func", [classical.greenwood, classical.moran, classical.gini,
                                  classical.lilliefors])
@settings(max_examples=100)
@given(xs=sample, c=st.floats(1e-3, 1e3))
def test_classical_scale_invariance(func, xs, c):
    xs = np.array(xs)
    assert func(c * xs).value == pytest.approx(func(xs).value, abs=1e-12)


# Monte Carlo determinism -----------------------------------------------------------

@settings(max_examples=5)
@given(seed=st.integers(0, 2 ** 64 - 1), workers=st.integers(2, 3),
       test=st.sampled_from(["desu-kolmogorov", "gini", "shepp-integral", "angus"]))
def test_simulation_bitwise_independent_of_workers(seed, workers, test):
    t = get_test(test)
    a = montecarlo.simulate_null(t, montecarlo.SimConfig(120, 12, seed, 1))
    b = montecarlo.simulate_null(t, montecarlo.SimConfig(120, 12, seed, workers))
    assert a == b


@settings(max_examples=20)
@given(seed=st.integers(0, 2 ** 64 - 1))
def test_simulation_reproducible_under_seed(seed):
    cfg = montecarlo.SimConfig(100, 10, seed)
    assert montecarlo.simulate_null("moran", cfg) == montecarlo.simulate_null("moran", cfg)


# Bahadur-Raghavachari on all computed grids -----------------------------------------

def _pairs():
    fams = {"exponential": ALTERNATIVES, "normal": ("shift-normal", "skew-normal"),
            "cauchy": ("shift-cauchy",)}
    return [(m, f) for m in MODEL_NAMES for f in fams[get_model(m).null]]


@pytest.mark.slow
@pytest.mark.parametrize("test, family", _pairs())
def test_bahadur_raghavachari(test, family, efficiency_reports):
    rep = efficiency_reports.get(test, family)
    for th, (b, c, K) in rep.diagnostics["nodes"].items():
        assert c <= 2 * K + 1e-6, (th, c, K)
    assert 0.0 <= rep.efficiency <= 1.02
    assert math.isfinite(rep.gamma)
