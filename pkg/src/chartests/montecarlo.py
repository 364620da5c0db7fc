"""Simulated null distributions, critical values, p-values and power.

Replicate ``j`` of a run with master seed ``s`` draws from its own Philox
stream keyed by ``(s, tag, j)``, so results do not depend on how
replicates are split across workers.
"""

import math
import os
import struct
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .alternatives import get_family
from .errors import CacheError, ChartestsError, SimulationError
from .nulls import get_null
from .registry import StatTest, get_test

NULL_TAG = 0
ALT_TAG = 1
SIZE_TAG = 2

CACHE_ENV = "CHARTESTS_CACHE_DIR"
_MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class SimConfig:
    """Replicate count, sample size, master seed and a worker-count hint."""

    replicates: int
    n: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.replicates < 100:
            raise ValueError("replicates must be at least 100")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.seed < _MAX_SEED:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class NullDistribution:
    """Sorted simulated null scores of one test at one sample size."""

    test: str
    n: int
    values: np.ndarray = field(repr=False)
    seed: int

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if np.any(np.diff(v) < 0):
            v.sort()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def replicates(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, NullDistribution):
            return NotImplemented
        return (self.test, self.n, self.seed) == (other.test, other.n, other.seed) and \
            np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class PowerResult:
    estimate: float
    ci_low: float
    ci_high: float
    rejections: int
    replicates: int
    critical_value: float
    alpha: float


def stream(seed, tag, j):
    """Independent generator for replicate ``j`` of stream family ``tag``."""
    return np.random.Generator(np.random.Philox(
        key=np.array([seed, (tag << 48) | j], dtype=np.uint64)))


def _resolve(test):
    return test if isinstance(test, StatTest) else get_test(test)


def _chunk(test_name, n, seed, tag, start, stop, family, theta, signed):
    test = get_test(test_name)
    if family is None:
        null = get_null(test.null)
        draw = null.sampler
    else:
        fam = get_family(family)

        def draw(rng, m):
            return fam.sampler(theta, m, rng)

    out = np.empty(stop - start)
    for j in range(start, stop):
        x = draw(stream(seed, tag, j), n)
        try:
            v = test.evaluate(x)
        except (ChartestsError, ValueError, ArithmeticError) as exc:
            raise SimulationError(f"replicate {j} of {test_name} (n={n}, seed={seed}) "
                                  f"failed: {exc}", j) from exc
        if not math.isfinite(v):
            raise SimulationError(f"replicate {j} of {test_name} gave {v}", j)
        out[j - start] = v if signed else test.score_of(v)
    return out


def _simulate(test, config, tag, family=None, theta=0.0, signed=False):
    if config.n < test.min_n:
        raise ValueError(f"{test.name} needs n >= {test.min_n}")
    R = config.replicates
    if config.workers == 1:
        return _chunk(test.name, config.n, config.seed, tag, 0, R, family, theta, signed)
    edges = np.linspace(0, R, 4 * config.workers + 1).astype(int)
    with ProcessPoolExecutor(config.workers) as pool:
        futs = [pool.submit(_chunk, test.name, config.n, config.seed, tag, int(a), int(b),
                            family, theta, signed)
                for a, b in zip(edges[:-1], edges[1:]) if b > a]
        return np.concatenate([f.result() for f in futs])


def simulate_values(test, config, *, family=None, theta=0.0, signed=True, tag=NULL_TAG):
    """Raw per-replicate statistics in replicate order (not sorted)."""
    test = _resolve(test)
    return _simulate(test, config, tag, family, theta, signed)


def simulate_null(test, config):
    """Simulate the null score distribution of ``test``.

    Raises
    ------
    SimulationError
        If any replicate fails; the message names the replicate index.
    """
    test = _resolve(test)
    vals = _simulate(test, config, NULL_TAG)
    vals.sort()
    return NullDistribution(test.name, config.n, vals, config.seed)


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def critical_rank(R, alpha):
    # guard against (1 - alpha) * R landing a hair above an integer
    return max(1, math.ceil(round((1.0 - alpha) * R, 9)))


def critical_value(dist, alpha):
    """Order statistic of rank ``ceil((1 - alpha) R)``; reject when score exceeds it."""
    _check_alpha(alpha)
    return float(dist.values[critical_rank(dist.replicates, alpha) - 1])


def p_value(dist, observed):
    """``(1 + #{null scores >= observed}) / (R + 1)``."""
    R = dist.replicates
    ge = R - int(np.searchsorted(dist.values, observed, side="left"))
    return (1.0 + ge) / (R + 1.0)


def wilson_interval(k, m, level=0.95):
    ci = stats.binomtest(int(k), int(m)).proportion_ci(level, method="wilson")
    return float(ci.low), float(ci.high)


def _rejection_summary(scores, crit, alpha):
    k = int(np.count_nonzero(scores > crit))
    lo, hi = wilson_interval(k, scores.size)
    return PowerResult(k / scores.size, lo, hi, k, scores.size, crit, alpha)


def power(test, family, theta, config, alpha=0.05, *, null_dist=None, null_config=None):
    """Rejection rate of ``test`` under ``family`` at ``theta``.

    The null distribution comes from ``null_dist`` or is simulated with
    ``null_config`` (default: ``config``); alternative replicates use a
    separate stream family, so they never reuse null draws.
    """
    _check_alpha(alpha)
    test = _resolve(test)
    fam = get_family(family) if isinstance(family, str) else family
    if fam.null != test.null:
        raise ValueError(f"alternative {fam.name} (null {fam.null}) does not fit "
                         f"{test.name} (null {test.null})")
    if null_dist is None:
        null_dist = null_distribution(test, null_config or config)
    crit = critical_value(null_dist, alpha)
    scores = _simulate(test, config, ALT_TAG, fam.name, theta)
    return _rejection_summary(scores, crit, alpha)


def size(test, config, alpha=0.05, *, null_dist=None, null_config=None):
    """Rejection rate under fresh null draws, independent of the calibration run."""
    _check_alpha(alpha)
    test = _resolve(test)
    if null_dist is None:
        null_dist = null_distribution(test, null_config or config)
    crit = critical_value(null_dist, alpha)
    scores = _simulate(test, config, SIZE_TAG)
    return _rejection_summary(scores, crit, alpha)


# -- on-disk cache --------------------------------------------------------------------

_HEAD = struct.Struct("<QQQ")


def save_distribution(dist, path):
    """Write ``dist`` atomically: ``<u4 len><name><u8 n><u8 R><u8 seed><f8 * R>``."""
    path = Path(path)
    name = dist.test.encode("utf-8")
    blob = (struct.pack("<I", len(name)) + name
            + _HEAD.pack(dist.n, dist.replicates, dist.seed)
            + dist.values.astype("<f8").tobytes())
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_distribution(path):
    """Read a cache file written by :func:`save_distribution`."""
    data = Path(path).read_bytes()
    try:
        (ln,) = struct.unpack_from("<I", data, 0)
        name = data[4:4 + ln].decode("utf-8")
        n, R, seed = _HEAD.unpack_from(data, 4 + ln)
    except (struct.error, UnicodeDecodeError) as exc:
        raise CacheError(f"malformed cache header in {path}") from exc
    off = 4 + ln + _HEAD.size
    if len(data) - off != 8 * R:
        raise CacheError(f"cache {path} holds {len(data) - off} payload bytes, expected {8 * R}")
    vals = np.frombuffer(data, dtype="<f8", offset=off).astype(np.float64)
    return NullDistribution(name, int(n), vals, int(seed))


def cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "chartests"


def cache_path(test_name, n, R, seed, directory=None):
    d = Path(directory) if directory is not None else cache_dir()
    return d / f"{test_name}_n{n}_R{R}_s{seed}.null"


def null_distribution(test, config, *, use_cache=False, directory=None):
    """Simulated null distribution, read from / written to the cache when asked."""
    test = _resolve(test)
    if not use_cache:
        return simulate_null(test, config)
    path = cache_path(test.name, config.n, config.replicates, config.seed, directory)
    if path.exists():
        try:
            dist = load_distribution(path)
        except CacheError:
            dist = None
        if dist is not None and (dist.test, dist.n, dist.replicates, dist.seed) == \
                (test.name, config.n, config.replicates, config.seed):
            return dist
    dist = simulate_null(test, config)
    save_distribution(dist, path)
    return dist
