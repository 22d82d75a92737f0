#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths (bitset Minkowski folds and truncated integer
convolution) on workloads shaped like the real ones: square-number supports
at horizons 1e5..1e7 and dense coefficient arrays.

Usage:
    python benchmarks/bench_kernels.py [--max-horizon 10000000] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time
from contextlib import contextmanager

import numpy as np

from betalac import _purekernels, kernels


@contextmanager
def forced_backend(impl):
    saved = kernels._impl
    kernels._impl = impl
    try:
        yield
    finally:
        kernels._impl = saved


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-horizon", type=int, default=10**7)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _purekernels)]
    try:
        from betalac import _fastkernels

        backends.insert(0, ("cython", _fastkernels))
    except ImportError:
        print("compiled extension not available; timing the fallback only")

    print(f"{'workload':<38}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")

    horizons = [h for h in (10**5, 10**6, args.max_horizon) if h <= args.max_horizon]
    for horizon in sorted(set(horizons)):
        elements = np.array([m * m for m in range(int(horizon**0.5) + 1)], dtype=np.int64)
        for k in (2, 3):
            label = f"minkowski fold k={k}, horizon 1e{len(str(horizon)) - 1}"
            times = []
            for _, impl in backends:
                with forced_backend(impl):
                    times.append(timeit(lambda: kernels.minkowski_fold(elements, k, horizon), args.repeats))
            row = "".join(f"{t * 1000:>10.1f}ms" for t in times)
            speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) == 2 else ""
            print(f"{label:<38}{row}{speed}")

    for n in (2000, 20000):
        a = [(m * 37) % 5 for m in range(n)]
        label = f"convolution, length {n}"
        times = []
        for _, impl in backends:
            with forced_backend(impl):
                times.append(timeit(lambda: kernels.convolve_counts(a, a, n), args.repeats))
        row = "".join(f"{t * 1000:>10.1f}ms" for t in times)
        speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) == 2 else ""
        print(f"{label:<38}{row}{speed}")

    print(f"\nselected backend at import: {kernels.backend()}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
