"""Command-line front end.

Subcommands: ``test``, ``critical-values``, ``power``, ``efficiency`` and
``table1``.  Exit status is 0 on success, 2 on usage or input errors and 3
on internal numeric failures; test decisions never affect it.
"""

import argparse
import csv
import json
import math
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import montecarlo as mc
from .characterizations import TiesWarning
from .errors import ChartestsError, DegreeError, DomainError, NumericError, SimulationError
from .registry import TESTS, get_test
from .sample import Sample

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

DEFAULT_REPS = 10_000


class InputError(ChartestsError, ValueError):
    """Malformed data file or incompatible arguments."""


@dataclass
class RunReport:
    """Outcome of one CLI invocation; round-trips through JSON."""

    command: list
    test: Optional[str] = None
    n: Optional[int] = None
    statistic: Optional[float] = None
    p_value: Optional[float] = None
    critical_values: dict = field(default_factory=dict)
    seed: Optional[int] = None
    timing: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, indent=2, allow_nan=True)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))

    def format(self):
        lines = []
        for key in ("test", "n", "statistic", "p_value", "seed"):
            val = getattr(self, key)
            if val is not None:
                lines.append(f"{key:>16s}  {val}")
        for a, v in self.critical_values.items():
            lines.append(f"{'critical ' + a:>16s}  {v}")
        for key, val in self.extra.items():
            if isinstance(val, (dict, list)):
                continue
            lines.append(f"{key:>16s}  {val}")
        lines.append(f"{'time (s)':>16s}  {self.timing:.3f}")
        return "\n".join(lines)


def read_data(path):
    """One real per line; blank lines and ``#`` comments are skipped."""
    fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    values = []
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                v = float(line)
            except ValueError:
                raise InputError(f"{path}, line {lineno}: cannot parse {line!r} as a number") \
                    from None
            if not math.isfinite(v):
                raise InputError(f"{path}, line {lineno}: non-finite value {line!r}")
            values.append(v)
    if not values:
        raise InputError(f"{path}: no observations")
    return values


def _resolve_test(args):
    try:
        test = get_test(args.test, args.kind)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if args.kind is not None and test.kind != args.kind:
        raise InputError(f"test {test.name} has no {args.kind} variant")
    return test


def _alphas(args):
    for a in args.alpha:
        if not 0.0 < a < 1.0:
            raise InputError(f"alpha must lie in (0, 1), got {a}")
    return args.alpha


def _config(args, n):
    try:
        return mc.SimConfig(args.reps, n, args.seed, args.workers)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _null(args, test, n):
    cfg = _config(args, n)
    if n < test.min_n:
        raise InputError(f"{test.name} needs at least {test.min_n} observations")
    return mc.null_distribution(test, cfg, use_cache=not args.no_cache)


def cmd_test(args):
    test = _resolve_test(args)
    alphas = _alphas(args)
    sample = Sample(read_data(args.data), test.domain)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TiesWarning)
        result = test.statistic(sample)
    ties = any(issubclass(w.category, TiesWarning) for w in caught)
    if ties:
        print("note: sample contains ties; they are resolved by strict comparison",
              file=sys.stderr)
    dist = _null(args, test, sample.n)
    return RunReport(
        command=[], test=test.name, n=sample.n, statistic=result.value,
        p_value=mc.p_value(dist, test.score_of(result.value)),
        critical_values={repr(a): mc.critical_value(dist, a) for a in alphas},
        seed=args.seed, extra={"kind": test.kind, "replicates": args.reps,
                               "score": test.score_of(result.value), "ties": ties})


def cmd_critical_values(args):
    test = _resolve_test(args)
    alphas = _alphas(args)
    dist = _null(args, test, args.n)
    return RunReport(command=[], test=test.name, n=args.n, seed=args.seed,
                     critical_values={repr(a): mc.critical_value(dist, a) for a in alphas},
                     extra={"kind": test.kind, "replicates": args.reps})


def cmd_power(args):
    from .alternatives import get_family
    test = _resolve_test(args)
    alpha = _alphas(args)[0]
    try:
        fam = get_family(args.alt)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if fam.null != test.null:
        raise InputError(f"alternative {fam.name} (null {fam.null}) does not fit {test.name} "
                         f"(null {test.null})")
    dist = _null(args, test, args.n)
    cfg = _config(args, args.n)
    curve = []
    for th in args.theta:
        try:
            fam.check_theta(th)
        except DomainError as exc:
            raise InputError(str(exc)) from None
        res = mc.power(test, fam, th, cfg, alpha, null_dist=dist)
        curve.append({"theta": th, "estimate": res.estimate, "ci_low": res.ci_low,
                      "ci_high": res.ci_high, "rejections": res.rejections})
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=list(curve[0]))
            w.writeheader()
            w.writerows(curve)
    extra = {"alternative": fam.name, "alpha": alpha, "replicates": args.reps, "curve": curve}
    if len(curve) == 1:
        extra.update(theta=curve[0]["theta"], power=curve[0]["estimate"],
                     ci=f"[{curve[0]['ci_low']:.4f}, {curve[0]['ci_high']:.4f}]")
    return RunReport(command=[], test=test.name, n=args.n, seed=args.seed,
                     critical_values={repr(alpha): mc.critical_value(dist, alpha)}, extra=extra)


def cmd_efficiency(args):
    from .bahadur import get_model, local_efficiency
    test = _resolve_test(args)
    try:
        get_model(test.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    try:
        rep = local_efficiency(test.name, args.alt)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    except DomainError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, ChartestsError):
            raise
        raise InputError(str(exc)) from None
    d = rep.to_dict()
    diag = d.pop("diagnostics")
    extra = {k: v for k, v in d.items() if k != "test"}
    extra["diagnostics"] = diag
    return RunReport(command=[], test=test.name, statistic=rep.efficiency, extra=extra)


def cmd_table1(args):
    from .bahadur import reproduce_reference_table
    table = reproduce_reference_table()
    report = RunReport(command=[], test="table1", extra={"table": table.to_dict(),
                                                         "ok": table.ok})
    report._text = table.format()
    if not table.ok:
        report._status = EXIT_NUMERIC
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="chartests",
                                description="Characterization-based goodness-of-fit tests.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, data=False, n=False):
        sp.add_argument("--test", required=True, help=f"one of {', '.join(sorted(TESTS))}, "
                        "or a characterization name with --kind")
        sp.add_argument("--kind", choices=("integral", "kolmogorov"))
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if data:
            sp.add_argument("--data", required=True, help="file with one value per line, - for stdin")
        if n:
            sp.add_argument("--n", type=int, default=100, help="sample size")

    def sim(sp):
        sp.add_argument("--alpha", type=float, nargs="+", default=[0.05])
        sp.add_argument("--reps", type=int, default=DEFAULT_REPS)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--no-cache", action="store_true", help="always re-simulate")

    sp = sub.add_parser("test", help="run a test on a data file")
    common(sp, data=True)
    sim(sp)
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("critical-values", help="simulated critical values")
    common(sp, n=True)
    sim(sp)
    sp.set_defaults(func=cmd_critical_values)

    sp = sub.add_parser("power", help="simulated power against an alternative")
    common(sp, n=True)
    sim(sp)
    sp.add_argument("--alt", required=True)
    sp.add_argument("--theta", type=float, nargs="+", required=True)
    sp.add_argument("--csv", help="write the power curve to this CSV file")
    sp.set_defaults(func=cmd_power)

    sp = sub.add_parser("efficiency", help="local Bahadur efficiency")
    common(sp)
    sp.add_argument("--alt", required=True)
    sp.set_defaults(func=cmd_efficiency)

    sp = sub.add_parser("table1", help="reproduce the exponentiality efficiency table")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_table1)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (InputError, DomainError, DegreeError, OSError) as exc:
        print(f"chartests: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, SimulationError, ArithmeticError) as exc:
        print(f"chartests: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report.command = argv
    report.timing = time.perf_counter() - start
    if args.json:
        print(report.to_json())
    else:
        print(getattr(report, "_text", None) or report.format())
    return getattr(report, "_status", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
