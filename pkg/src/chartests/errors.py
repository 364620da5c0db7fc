"""Exception hierarchy shared by all chartests modules."""


class ChartestsError(Exception):
    """Base class for library errors."""


class DegreeError(ChartestsError, ValueError):
    """Sample is too small for the degree of a kernel or subset statistic."""


class DomainError(ChartestsError, ValueError):
    """Input lies outside the domain an operation accepts."""


class ConsistencyError(ChartestsError, ValueError):
    """Objects that must come from the same source do not."""


class EvaluationError(ChartestsError, ArithmeticError):
    """A kernel produced a non-finite value.

    Attributes
    ----------
    indices : tuple of int
        Positions (in input order) of the offending subset.
    """

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class DegeneracyError(ChartestsError, ArithmeticError):
    """Projection variance vanishes, so the normal limit does not apply."""


class NumericError(ChartestsError, ArithmeticError):
    """Quadrature, optimization or extrapolation failed to reach tolerance.

    Attributes
    ----------
    achieved : float or None
        Error estimate or residual actually reached.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class SimulationError(ChartestsError, RuntimeError):
    """A simulated replicate failed; carries the replicate index."""

    def __init__(self, msg, replicate=None):
        super().__init__(msg)
        self.replicate = replicate


class CacheError(ChartestsError, OSError):
    """A cache file is malformed or does not match its key."""
