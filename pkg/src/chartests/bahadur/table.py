"""Reproduction of the reference table of local efficiencies for exponentiality."""

from dataclasses import asdict, dataclass, field

from ..errors import ChartestsError
from .slopes import local_efficiency

ALTERNATIVES = ("weibull", "makeham", "lfr")

#: published values; ``None`` marks cells without a reference value
REFERENCE = {
    "desu-integral": (0.697, None, None),
    "rossberg-integral": (0.650, 0.450, 0.119),
    "ahsanullah-exp-integral": (0.795, 0.692, 0.257),
    "gini": (0.876, 1.0, 0.750),
    "moran": (0.943, 0.694, 0.388),
    "greenwood": (0.608, 0.750, 1.0),
    "desu-kolmogorov": (0.158, None, None),
    "rossberg-kolmogorov": (0.320, 0.207, 0.047),
    "ahsanullah-exp-kolmogorov": (0.450, 0.470, 0.187),
    "angus": (0.158, 0.187, 0.073),
}

#: echoed for completeness, never recomputed
REFERENCE_ONLY = {"lilliefors": (0.538, 0.607, 0.356)}

TOLERANCE = {"desu-integral": 0.005, "desu-kolmogorov": 0.01}
DEFAULT_TOLERANCE = 0.02


@dataclass
class TableCell:
    test: str
    alternative: str
    computed: float = None
    reference: float = None
    tolerance: float = None
    ok: bool = None
    error: str = None

    @property
    def deviation(self):
        if self.computed is None or self.reference is None:
            return None
        return self.computed - self.reference


@dataclass
class TableReport:
    cells: list = field(default_factory=list)
    reference_only: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [c for c in self.cells if c.ok is False]

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        out = {"cells": [dict(asdict(c), deviation=c.deviation) for c in self.cells],
               "reference_only": {k: list(v) for k, v in self.reference_only.items()},
               "ok": self.ok}
        return out

    def format(self):
        lines = [f"{'test':28s}" + "".join(f"{a:>22s}" for a in ALTERNATIVES)]
        rows = {}
        for c in self.cells:
            rows.setdefault(c.test, {})[c.alternative] = c
        for test, row in rows.items():
            parts = []
            for a in ALTERNATIVES:
                c = row.get(a)
                if c is None or c.computed is None:
                    parts.append(f"{'error':>22s}")
                    continue
                ref = "  -  " if c.reference is None else f"{c.reference:.3f}"
                mark = "" if c.ok is None else (" ok" if c.ok else " !!")
                parts.append(f"{c.computed:9.4f} ({ref}){mark:3s}".rjust(22))
            lines.append(f"{test:28s}" + "".join(parts))
        for test, vals in self.reference_only.items():
            lines.append(f"{test + ' (reference only)':28s}"
                         + "".join(f"{'(' + format(v, '.3f') + ')':>22s}" for v in vals))
        return "\n".join(lines)


def reproduce_reference_table(tests=None, *, progress=None):
    """Compute every cell of the exponentiality efficiency table and diff it.

    Parameters
    ----------
    tests : iterable of str, optional
        Restrict to these rows.
    progress : callable, optional
        Called with each finished :class:`TableCell`.
    """
    report = TableReport(reference_only=dict(REFERENCE_ONLY))
    for test in tests or REFERENCE:
        refs = REFERENCE[test]
        tol = TOLERANCE.get(test, DEFAULT_TOLERANCE)
        for alt, ref in zip(ALTERNATIVES, refs):
            cell = TableCell(test, alt, reference=ref, tolerance=tol)
            try:
                cell.computed = local_efficiency(test, alt, derivative_check=False).efficiency
            except ChartestsError as exc:
                cell.error = str(exc)
                cell.ok = False
            else:
                cell.ok = None if ref is None else abs(cell.computed - ref) <= tol
            report.cells.append(cell)
            if progress is not None:
                progress(cell)
    return report
