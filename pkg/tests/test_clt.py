"""Finite-sample approach of the Desu integral statistic to its normal limit."""

import math

import numpy as np
import pytest
from scipy import stats

from chartests import montecarlo as mc

SIGMA = 3.0 * math.sqrt(11 / 3780)


def _standardized(n, R=20000, seed=11, debias=False):
    v = mc.simulate_values("desu-integral", mc.SimConfig(R, n, seed))
    if debias:
        v = v + 1.0 / (6.0 * n)
    return math.sqrt(n) * v / SIGMA


@pytest.mark.slow
def test_ks_distance_shrinks_with_n():
    ks = [stats.kstest(_standardized(n), "norm").statistic for n in (50, 200, 800)]
    assert ks[0] > ks[1] > ks[2]
    # O(n^-1/2) decay: quadrupling n roughly halves the distance
    assert 0.3 < ks[2] / ks[1] < 0.75


@pytest.mark.slow
def test_exact_bias_and_skew_explain_the_gap():
    z = _standardized(200)
    # E I_n = -1/(6n) exactly, in standardized units -1/(6 sqrt(n) sigma)
    assert np.mean(z) == pytest.approx(-1 / (6 * math.sqrt(200) * SIGMA), abs=0.015)
    assert stats.skew(z) > 0.2
    zc = _standardized(800, debias=True)
    assert stats.kstest(zc, "norm").statistic < 0.02
