"""Named tests usable by the simulation engine and the command line.

Each test turns a raw sample into its statistic and into a one-sided
*score*: large scores count against the null.  Integral statistics and
centered classical statistics are scored by absolute deviation from their
null centre.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import characterizations as chars
from . import classical
from .nulls import get_null
from .sample import Domain, Sample


@dataclass(frozen=True)
class StatTest:
    """A statistic together with its null family and score convention.

    Attributes
    ----------
    name : str
    null : str
        Null family used to simulate the reference distribution.
    kind : str
        ``"integral"`` or ``"kolmogorov"``.
    prepare : callable
        Raw values -> sorted working array (applies any pre-transform).
    value : callable
        Sorted working array -> signed statistic.
    center : float or None
        Scores are ``|value - center|``; ``None`` means the value itself.
    min_n : int
    """

    name: str
    null: str
    kind: str
    prepare: Callable[[np.ndarray], np.ndarray]
    value: Callable[[np.ndarray], float]
    center: Optional[float]
    min_n: int
    characterization: Optional[str] = None

    @property
    def domain(self):
        return get_null(self.null).domain

    def score_of(self, v):
        return v if self.center is None else abs(v - self.center)

    def evaluate(self, values):
        """Signed statistic of raw values (no domain validation)."""
        return self.value(self.prepare(values))

    def score(self, values):
        return self.score_of(self.evaluate(values))

    def statistic(self, sample):
        """Validated statistic of a :class:`Sample` or array."""
        if self.characterization is not None:
            return chars.run_characterization_test(self.characterization, sample, self.kind)
        return _CLASSICAL[self.name](sample)


_CLASSICAL = {
    "gini": classical.gini,
    "moran": classical.moran,
    "greenwood": classical.greenwood,
    "lilliefors": classical.lilliefors,
    "angus": chars.angus_statistic,
}


def _sorted(values):
    return np.sort(np.asarray(values, dtype=np.float64))


def _char_tests(c):
    def integral(xs, c=c):
        return chars.integral_value(c, xs)

    def sup(xs, c=c):
        return chars.kolmogorov_value(c, xs)

    return [
        StatTest(f"{c.name}-integral", c.null, "integral", c.prepare, integral, 0.0,
                 c.min_n, c.name),
        StatTest(f"{c.name}-kolmogorov", c.null, "kolmogorov", c.prepare, sup, None,
                 c.min_n, c.name),
    ]


def _build():
    out = []
    for c in chars.REGISTRY.values():
        out.extend(_char_tests(c))
    out += [
        StatTest("angus", "exponential", "kolmogorov", _sorted, chars.angus_value, None, 1),
        StatTest("gini", "exponential", "integral", _sorted, classical.gini_value, 0.5, 2),
        StatTest("moran", "exponential", "integral", _sorted, classical.moran_value, 0.0, 1),
        StatTest("greenwood", "exponential", "integral", _sorted, classical.greenwood_value,
                 0.0, 1),
        StatTest("lilliefors", "exponential", "kolmogorov", _sorted,
                 classical.lilliefors_value, None, 1),
    ]
    return {t.name: t for t in out}


TESTS = _build()


def get_test(name, kind=None):
    """Resolve ``name`` (optionally a characterization name plus ``kind``)."""
    if kind is not None and name in chars.REGISTRY:
        name = f"{name}-{kind}"
    if name in TESTS:
        return TESTS[name]
    if name in chars.REGISTRY:
        return TESTS[f"{name}-integral"]
    raise KeyError(f"unknown test {name!r}; known: {sorted(TESTS)}")
