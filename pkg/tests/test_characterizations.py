import itertools
import warnings
from fractions import Fraction

import numpy as np
import pytest

from chartests import _backend
from chartests import characterizations as chars
from chartests.alternatives import get_family
from chartests.errors import DegreeError, DomainError
from chartests.nulls import get_null

NAMES = sorted(chars.REGISTRY)
SCALE_FREE = ["desu", "rossberg", "ahsanullah-exp", "arnold-villasenor-2",
              "arnold-villasenor-3", "cauchy-rr", "bh-symmetry", "ahsanullah-symmetry-2",
              "ahsanullah-symmetry-3", "ahsanullah-symmetry-4", "polya", "shepp"]


def _null_sample(char, n, rng):
    return get_null(char.null).sample(rng, n)


def _run(name, xs, kind, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", chars.TiesWarning)
        return chars.run_characterization_test(name, xs, kind, **kw).value


def test_registry_names():
    expected = {"desu", "rossberg", "ahsanullah-exp", "arnold-villasenor-2",
                "arnold-villasenor-3", "polya", "shepp", "puri-rubin", "cauchy-rr",
                "bh-symmetry", "ahsanullah-symmetry-2", "ahsanullah-symmetry-3",
                "ahsanullah-symmetry-4"}
    assert set(NAMES) == expected


def test_desu_examples():
    # I_n on (1, 2, 5): F_n(5-) = 2/3 = H_n(5-), F_n(2-) = 1/3, H_n(2-) = 0
    assert _run("desu", [1.0, 2.0, 5.0], "integral") == 0.0
    with pytest.warns(chars.TiesWarning):
        assert chars.run_characterization_test("desu", [1.0, 1.0, 1.0],
                                               "kolmogorov").value == 1.0


def test_desu_integral_hand_value():
    # (1, 3, 4): F_n(1-, 3-, 4-) = (0, 1/3, 2/3); 2 min over pairs = (2, 2, 6)
    # H_n(1-, 3-, 4-) = (0, 2/3, 2/3)  ->  I_n = (1/3)(0 - 1/3 + 0) = -1/9
    assert _run("desu", [1.0, 3.0, 4.0], "integral") == pytest.approx(-1 / 9, abs=1e-16)


@pytest.mark.parametrize("name", NAMES)
def test_fast_equals_uecdf_route(name, rng):
    char = chars.get_characterization(name)
    for _ in range(8):
        xs = _null_sample(char, int(rng.integers(char.min_n, 13)), rng)
        for kind in chars.KINDS:
            assert _run(name, xs, kind) == _run(name, xs, kind, method="uecdf")


@pytest.mark.parametrize("name", NAMES)
def test_fast_equals_brute_force(name, rng):
    # brute oracle: enumerate every subset and ordering, evaluate both dfs exactly
    char = chars.get_characterization(name)
    for _ in range(5):
        xs = _null_sample(char, int(rng.integers(char.min_n, 9)), rng)
        w = np.sort(char.prepare(xs)).tolist()
        v1 = char.g1.enumerate_values(w).tolist()
        v2 = char.g2.enumerate_values(w).tolist()
        n1, n2 = len(v1), len(v2)

        def diff(t, strict=True):
            if strict:
                return Fraction(sum(v < t for v in v1), n1) - Fraction(sum(v < t for v in v2), n2)
            return Fraction(sum(v <= t for v in v1), n1) - Fraction(sum(v <= t for v in v2), n2)

        integral = sum(diff(x) for x in w) / len(w)
        sup = max(abs(diff(t, s)) for t in set(v1) | set(v2) for s in (True, False))
        assert _run(name, xs, "integral") == float(integral)
        assert _run(name, xs, "kolmogorov") == float(sup)


@pytest.mark.parametrize("name", NAMES)
def test_backends_bitwise_equal(name, rng):
    if _backend.compiled_kernels is None:
        pytest.skip("compiled kernels not built")
    char = chars.get_characterization(name)
    for _ in range(5):
        xs = char.prepare(_null_sample(char, 40, rng))
        for kind in chars.KINDS:
            a = chars.statistic_value(char, xs, kind, _backend.compiled_kernels)
            b = chars.statistic_value(char, xs, kind, _backend.python_kernels)
            assert a == b


@pytest.mark.parametrize("name", SCALE_FREE)
def test_scale_invariance(name, rng):
    char = chars.get_characterization(name)
    xs = _null_sample(char, 15, rng)
    for c in (0.25, 7.0):
        for kind in chars.KINDS:
            a, b = _run(name, xs, kind), _run(name, c * xs, kind)
            if char.pre_transform is None:
                assert a == b
            else:
                # centring rounds differently after scaling
                assert a == pytest.approx(b, abs=1e-12)


def test_puri_rubin_power_invariance(rng):
    xs = rng.uniform(size=15)
    for c in (0.5, 3.0):
        for kind in chars.KINDS:
            assert _run("puri-rubin", xs, kind) == _run("puri-rubin", xs ** c, kind)


def test_domain_and_degree_errors():
    with pytest.raises(DomainError):
        chars.run_characterization_test("desu", [1.0, -1.0, 2.0])
    with pytest.raises(DomainError):
        chars.run_characterization_test("puri-rubin", [0.5, 0.0])
    with pytest.raises(DomainError):
        chars.run_characterization_test("puri-rubin", [0.5, 1.5])
    chars.run_characterization_test("puri-rubin", [0.5, 1.0])
    with pytest.raises(DegreeError):
        chars.run_characterization_test("rossberg", [1.0, 2.0])
    with pytest.raises(DegreeError):
        chars.run_characterization_test("arnold-villasenor-3", [1.0, 2.0])
    with pytest.raises(ValueError):
        chars.run_characterization_test("desu", [1.0, 2.0], "other")


def test_unknown_and_parametric_names():
    with pytest.raises(KeyError):
        chars.get_characterization("nope")
    c = chars.get_characterization("polya-0.96")
    assert c.g2.degree == 2


def test_value_ranges(rng):
    for name in NAMES:
        char = chars.get_characterization(name)
        xs = _null_sample(char, 12, rng)
        assert -1.0 <= _run(name, xs, "integral") <= 1.0
        assert 0.0 <= _run(name, xs, "kolmogorov") <= 1.0


def test_angus_examples():
    assert chars.angus_statistic([1.0, 1.0, 1.0]).value == 1.0
    for x in (0.3, 2.0, 17.5):
        assert chars.angus_statistic([x]).value == 1.0
    with pytest.raises(DomainError):
        chars.angus_statistic([-1.0])


def test_angus_matches_grid_oracle(rng):
    for _ in range(30):
        xs = np.sort(rng.exponential(size=int(rng.integers(1, 25))))
        t = np.concatenate((np.linspace(0, 2 * xs[-1], 50_001), xs, xs / 2))
        S = lambda u: np.mean(xs[None, :] > u[:, None], axis=1)  # noqa: E731
        grid = np.max(np.abs(S(2 * t) - S(t) ** 2))
        assert chars.angus_statistic(xs).value == pytest.approx(grid, abs=1e-15)


def test_angus_equivalent_to_desu_sup_in_range(rng):
    xs = rng.exponential(size=30)
    assert 0.0 <= chars.angus_statistic(xs).value <= 1.0


def test_symmetrized_statistics_permutation_invariant(rng):
    for name in NAMES:
        char = chars.get_characterization(name)
        for g in (char.g1, char.g2):
            for _ in range(20):
                args = _null_sample(char, g.degree, rng).tolist()
                ref = sorted(g.enumerate_values(args).tolist())
                for perm in itertools.permutations(args):
                    assert sorted(g.enumerate_values(list(perm)).tolist()) == ref


# alternative used to show each entry is consistent against something
CONSISTENCY = {
    "desu": ("weibull", 1.0), "rossberg": ("weibull", 1.0),
    "ahsanullah-exp": ("weibull", 1.0), "arnold-villasenor-2": ("weibull", 3.0),
    "arnold-villasenor-3": ("weibull", 3.0), "polya": ("shift-cauchy", 0.0),
    "shepp": ("skew-normal", 50.0), "cauchy-rr": ("shift-cauchy", 1.0),
    "bh-symmetry": ("shift-symmetric", 0.5), "ahsanullah-symmetry-2": ("shift-symmetric", 0.5),
    "ahsanullah-symmetry-3": ("shift-symmetric", 0.5),
    "ahsanullah-symmetry-4": ("shift-symmetric", 0.5),
}


def _mean_sup(name, sampler, n, reps, rng):
    return float(np.mean([_run(name, sampler(n), "kolmogorov") for _ in range(reps)]))


@pytest.mark.slow
@pytest.mark.parametrize("name", NAMES)
def test_soundness_and_consistency(name):
    rng = np.random.default_rng(5)
    char = chars.get_characterization(name)
    reps = 4 if name == "arnold-villasenor-3" else 100
    null = get_null(char.null)
    d100 = _mean_sup(name, lambda n: null.sample(rng, n), 100, reps, rng)
    d400 = _mean_sup(name, lambda n: null.sample(rng, n), 400, reps, rng)
    # under the null D_n shrinks like n^(-1/2)
    assert d400 < 0.75 * d100
    if name == "puri-rubin":
        # no registered alternative for the power law; Beta(2, 2) is not one of its members
        alt = lambda n: rng.beta(2.0, 2.0, size=n)  # noqa: E731
    else:
        fam_name, theta = CONSISTENCY[name]
        fam = get_family(fam_name)
        alt = lambda n: fam.sample(theta, n, rng)  # noqa: E731
    a100 = _mean_sup(name, alt, 100, reps, rng)
    a400 = _mean_sup(name, alt, 400, reps, rng)
    assert a400 >= 0.8 * a100
    assert a400 > 1.5 * d400
