"""Compare the compiled and NumPy subset-statistic kernels.

Run ``python3 benchmarks/bench_kernels.py [--n 200] [--repeat 5]``.  Each
row reports the best wall time of both backends on the same sorted
exponential sample and checks that their counts agree exactly.
"""

import argparse
import timeit

import numpy as np

from chartests import _backend

CASES = [
    ("absdiff pairs", "pair", 0, 0.0, 0.0),
    ("spacing pairs", "pair", 1, 0.0, 0.0),
    ("linear pairs", "pair", 2, 0.5, 0.5),
    ("shepp pairs", "pair", 3, 0.0, 0.0),
    ("weighted triples", "triple", 0, 0.0, 0.0),
]


def run_case(mod, kind, code, a, b, x, q):
    if kind == "pair":
        return mod.pair_counts(x, code, a, b, q)
    return mod.triple_counts(x, code, q)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)

    cmod, pmod = _backend.compiled_kernels, _backend.python_kernels
    if cmod is None:
        print("compiled kernels unavailable; only the NumPy backend is timed")
    rng = np.random.default_rng(args.seed)
    x = np.sort(rng.exponential(size=args.n))
    q = np.unique(x)

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'case':<18s}{'numpy (ms)':>12s}{'cython (ms)':>13s}{'speedup':>10s}  equal")
    for label, kind, code, a, b in CASES:
        tp = min(timeit.repeat(lambda: run_case(pmod, kind, code, a, b, x, q),
                               number=1, repeat=args.repeat))
        if cmod is None:
            print(f"{label:<18s}{1e3 * tp:12.2f}")
            continue
        tc = min(timeit.repeat(lambda: run_case(cmod, kind, code, a, b, x, q),
                               number=1, repeat=args.repeat))
        rp = run_case(pmod, kind, code, a, b, x, q)
        rc = run_case(cmod, kind, code, a, b, x, q)
        same = all(np.array_equal(u, v) for u, v in zip(rp, rc))
        print(f"{label:<18s}{1e3 * tp:12.2f}{1e3 * tc:13.2f}{tp / tc:10.1f}  {same}")


if __name__ == "__main__":
    main()
