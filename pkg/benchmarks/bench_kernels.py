"""Time the compiled and numpy kernels on the same workloads.

    python benchmarks/bench_kernels.py [--points 1000000] [--solves 1000]
"""
import argparse
import time

import numpy as np

from fourierpdf import build_model
from fourierpdf import _kernels_py

try:
    from fourierpdf import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=10**6)
    parser.add_argument("--solves", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    model = build_model("skewness", 12)
    x = np.linspace(-model.A, model.A, args.points)
    alphas = np.linspace(0.001, 0.999, args.solves)
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])

    workloads = {
        f"pdf, {args.points} points": lambda k: k.pdf_series(x, model.a, model.A),
        f"cdf, {args.points} points": lambda k: k.cdf_series(x, model.b, model.A),
        f"percentile, {args.solves} solves": lambda k: [k.solve_quantile(model.a, model.b, model.A, a) for a in alphas],
    }
    print(f"{'workload':<28}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, work in workloads.items():
        t = [best_of(lambda: work(k), args.repeat) for _, k in backends]
        speedup = f"{t[0] / t[1]:>9.1f}x" if len(t) > 1 else ""
        print(f"{label:<28}" + "".join(f"{s:>11.4f}s" for s in t) + speedup)


if __name__ == "__main__":
    main()
