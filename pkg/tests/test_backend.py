import subprocess
import sys

import numpy as np
import pytest

from chartests import _backend

C = _backend.compiled_kernels
P = _backend.python_kernels
needs_c = pytest.mark.skipif(C is None, reason="compiled kernels not built")

PAIRS = [(0, 0.0, 0.0), (1, 0.0, 0.0), (2, 0.6, 0.8), (2, 1 / 3, -2 / 3), (3, 0.0, 0.0),
         (4, 0.0, 0.0)]


def _data(rng, n, ties=False):
    x = rng.exponential(size=n) + 0.01
    if ties:
        x = np.round(x, 1) + 0.1
    return np.sort(x)


def test_selected_backend_name():
    assert _backend.NAME in ("cython", "python")
    if C is not None:
        assert _backend.NAME == "cython"


@needs_c
@pytest.mark.parametrize("code, a, b", PAIRS)
@pytest.mark.parametrize("ties", [False, True])
def test_pair_kernels_bitwise(code, a, b, ties, rng):
    for n in (2, 3, 17, 60):
        x = _data(rng, n, ties)
        q = np.unique(np.concatenate((x, rng.exponential(size=5))))
        vc, wc = C.pair_values(x, code, a, b)
        vp, wp = P.pair_values(x, code, a, b)
        assert np.array_equal(vc, vp)
        assert (wc is None and wp is None) or np.array_equal(wc, wp)
        for u, v in zip(C.pair_counts(x, code, a, b, q), P.pair_counts(x, code, a, b, q)):
            assert np.array_equal(u, v)


@needs_c
@pytest.mark.parametrize("ties", [False, True])
def test_triple_kernels_bitwise(ties, rng):
    for n in (3, 4, 11, 30):
        x = _data(rng, n, ties)
        vals = P.triple_values(x, 0)
        # query points include exact hits on the triple values themselves
        q = np.unique(np.concatenate((x, vals[:: max(1, vals.size // 50)])))
        assert np.array_equal(np.sort(C.triple_values(x, 0)), np.sort(vals))
        for u, v in zip(C.triple_counts(x, 0, q), P.triple_counts(x, 0, q)):
            assert np.array_equal(u, v)


@needs_c
def test_weighted_counts_bitwise(rng):
    v = np.round(rng.normal(size=300), 1)
    w = rng.integers(1, 5, size=300)
    q = np.unique(np.round(rng.normal(size=40), 1))
    for weights in (None, w):
        for u, t in zip(C.weighted_counts(v, weights, q), P.weighted_counts(v, weights, q)):
            assert np.array_equal(u, t)


def test_counts_against_brute_force(rng):
    x = _data(rng, 12, ties=True)
    q = np.unique(x)
    vals, _ = P.pair_values(x, 0)
    lt, le = P.pair_counts(x, 0, 0.0, 0.0, q)
    assert np.array_equal(lt, [(vals < t).sum() for t in q])
    assert np.array_equal(le, [(vals <= t).sum() for t in q])


def test_unknown_codes():
    x = np.arange(4.0)
    with pytest.raises(ValueError):
        P.pair_values(x, 9)
    with pytest.raises(ValueError):
        P.triple_values(x, 1)
    if C is not None:
        with pytest.raises(ValueError):
            C.pair_values(x, 9)
        with pytest.raises(ValueError):
            C.triple_counts(x, 1, x)


def test_pure_python_fallback_selected_by_environment():
    code = ("import chartests, numpy as np; from chartests import get_test; "
            "print(chartests.BACKEND, get_test('arnold-villasenor-3-kolmogorov')"
            ".evaluate(np.arange(1.0, 9.0)))")
    out = {}
    for flag in ("1", "0"):
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                              env={"CHARTESTS_PURE_PYTHON": flag, "PATH": "/usr/bin:/bin"},
                              check=True)
        out[flag] = proc.stdout.split()
    assert out["1"][0] == "python"
    assert out["1"][1] == out["0"][1]
