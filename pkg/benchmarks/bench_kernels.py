#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the numpy fallback.

Times the three workloads that dominate the package's runtime: batch
bound-term evaluation over a power-split grid (the optimizer's inner loop),
scalar evaluation (the refinement loop), and a full maximize_sum_rate call
under each backend.

Run:  python benchmarks/bench_kernels.py [--sizes 1000,53361,200000]
"""

import argparse
import time

import numpy as np

from ginsum import kernels
from ginsum.model import validate_params
from ginsum.optimizer import maximize_sum_rate


def _timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_batch(sizes, backends, rng):
    print("\nmin_t_batch (fixed params, n splits), best of 5:")
    header = f"{'n':>10}" + "".join(f"{name:>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in sizes:
        d1 = rng.dirichlet((1, 1, 1), n)
        d2 = rng.dirichlet((1, 1, 1), n)
        a1, g1 = np.ascontiguousarray(d1[:, 0]), np.ascontiguousarray(d1[:, 2])
        a2, g2 = np.ascontiguousarray(d2[:, 0]), np.ascontiguousarray(d2[:, 2])
        row = f"{n:>10}"
        times = {}
        for name, mod in backends.items():
            t = _timeit(lambda m=mod: m.min_t_batch(1.3, 0.6, 4.0, 2.5, a1, g1, a2, g2))
            times[name] = t
            row += f"{t * 1e3:>12.2f}ms"
        if len(times) == 2:
            row += f"{times['numpy'] / times['cython']:>9.1f}x"
        print(row)


def bench_scalar(backends, rng):
    n = 20_000
    d1 = rng.dirichlet((1, 1, 1), n)
    d2 = rng.dirichlet((1, 1, 1), n)
    print(f"\nmin_t_scalar x {n} (refinement-style loop), best of 5:")
    times = {}
    for name, mod in backends.items():
        fn = mod.min_t_scalar

        def loop(fn=fn):
            for i in range(n):
                fn(1.3, 0.6, 4.0, 2.5, d1[i, 0], d1[i, 2], d2[i, 0], d2[i, 2])

        t = _timeit(loop)
        times[name] = t
        print(f"  {name:>8}: {t * 1e3:8.1f}ms  ({t / n * 1e6:.2f}us/eval)")
    if len(times) == 2:
        print(f"  speedup: {times['numpy'] / times['cython']:.1f}x")


def bench_optimizer(backends):
    params = validate_params(0.83, 0.46, 8.3, 14.2)
    print("\nmaximize_sum_rate (default grid, one instance), best of 3:")
    original = kernels.BACKEND
    try:
        for name in backends:
            kernels.set_backend(name)
            t = _timeit(lambda: maximize_sum_rate(params), repeats=3)
            print(f"  {name:>8}: {t * 1e3:8.1f}ms")
    finally:
        kernels.set_backend(original)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,53361,200000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = kernels.available_backends()
    print(f"available backends: {', '.join(sorted(backends))} "
          f"(selected: {kernels.BACKEND})")
    if "cython" not in backends:
        print("compiled extension not built; benchmarking the fallback only")

    rng = np.random.default_rng(0)
    bench_batch(sizes, backends, rng)
    bench_scalar(backends, rng)
    bench_optimizer(backends)


if __name__ == "__main__":
    main()
