"""Compiled vs pure-Python elimination on J-slices of real triangulations.

    python benchmarks/bench_kernels.py [--repeat R] [--quick]

For each instance the unreduced J-slice of every degree is eliminated by
both backends; outputs must agree exactly. Times are best-of-R wall clock.
"""
import argparse
import time

from ehrchow import _kernels_py, chow, corpus

try:
    from ehrchow import _kernels
except ImportError:
    _kernels = None

INSTANCES = [
    ("RECT32", lambda: corpus.rect32()),
    ("CUBE_FLAG_3", lambda: corpus.cube_flag(3)),
    ("FREUDENTHAL_2^3", lambda: corpus.freudenthal(2, 3)),
    ("FREUDENTHAL_3^3", lambda: corpus.freudenthal(3, 3)),
]


def best(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="only the two smallest instances")
    args = ap.parse_args(argv)
    instances = INSTANCES[:2] if args.quick else INSTANCES
    if _kernels is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'instance':18} {'deg':>3} {'rows':>6} {'cols':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, build in instances:
        T = build()
        Q = chow.GradedQuotient(T)
        for i in range(1, T.dim + 1):
            rows = Q.jslice_matrix(i)
            n = len(Q.basis(i))
            ref, tp = best(lambda: _kernels_py.rref_int(rows, n), args.repeat)
            if _kernels is None:
                print(f"{name:18} {i:3d} {len(rows):6d} {n:6d} {tp:10.4f} {'-':>10} {'-':>8}")
                continue
            got, tc = best(lambda: _kernels.rref_int(rows, n), args.repeat)
            if got != ref:
                raise SystemExit(f"backends disagree on {name} degree {i}")
            print(f"{name:18} {i:3d} {len(rows):6d} {n:6d} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
