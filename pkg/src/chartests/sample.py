"""Observation containers."""

import hashlib
from enum import Enum

import numpy as np

from .errors import DomainError


class Domain(str, Enum):
    """Value domain a sample (or a test) requires."""

    NONNEGATIVE = "nonnegative"
    REAL = "real"
    #: observations in (0, 1]; zero is excluded because the power-law
    #: characterization divides by the data
    UNIT = "unit-interval"

    def contains(self, values):
        values = np.asarray(values, dtype=float)
        if self is Domain.NONNEGATIVE:
            return bool(np.all(values >= 0.0))
        if self is Domain.UNIT:
            return bool(np.all((values > 0.0) & (values <= 1.0)))
        return True


class Sample:
    """An ordered collection of real observations tagged with a domain.

    Values are kept in input order; ``order`` is a stable argsort so that
    ``values[order]`` is the sorted sample.  Instances are immutable.

    Parameters
    ----------
    values : array_like
        One-dimensional finite reals, at least one of them.
    domain : Domain or str, default ``"real"``
    """

    __slots__ = ("_values", "_domain", "_order", "_sorted", "_fingerprint")

    def __init__(self, values, domain=Domain.REAL):
        arr = np.array(values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise DomainError("a sample needs at least one observation")
        if not np.all(np.isfinite(arr)):
            bad = np.flatnonzero(~np.isfinite(arr))
            raise DomainError(f"non-finite observations at positions {bad.tolist()}")
        domain = Domain(domain)
        if not domain.contains(arr):
            raise DomainError(f"observations outside the {domain.value} domain")
        arr.setflags(write=False)
        order = np.argsort(arr, kind="stable")
        order.setflags(write=False)
        srt = arr[order]
        srt.setflags(write=False)
        self._values = arr
        self._domain = domain
        self._order = order
        self._sorted = srt
        self._fingerprint = hashlib.blake2b(arr.tobytes(), digest_size=16).hexdigest()

    @property
    def values(self):
        return self._values

    @property
    def domain(self):
        return self._domain

    @property
    def n(self):
        return self._values.size

    @property
    def order(self):
        return self._order

    @property
    def sorted(self):
        return self._sorted

    @property
    def fingerprint(self):
        """Digest of the values; identifies the source of derived objects."""
        return self._fingerprint

    @property
    def has_ties(self):
        s = self._sorted
        return bool(np.any(s[1:] == s[:-1]))

    def require(self, domain):
        """Raise :class:`DomainError` unless every value lies in ``domain``."""
        domain = Domain(domain)
        if not domain.contains(self._values):
            raise DomainError(f"test requires {domain.value} data")
        return self

    def scaled(self, c):
        if not c > 0:
            raise DomainError("scale factor must be positive")
        return Sample(self._values * c, self._domain)

    def centered(self):
        return Sample(self._values - self._values.mean(), Domain.REAL)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Sample(n={self.n}, domain={self._domain.value!r})"
