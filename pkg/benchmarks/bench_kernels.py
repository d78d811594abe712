"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--size N] [--repeats K]
"""

import argparse
import time

import numpy as np

from cpintegral import _kernels_py
from cpintegral._core import HAVE_COMPILED, kernels


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=1024)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    n = args.size
    G = np.ascontiguousarray(rng.standard_normal((n + 1, n + 1)))
    T = np.ascontiguousarray(rng.standard_normal((n, n)))
    t = np.ascontiguousarray(rng.standard_normal(n))
    g = np.ascontiguousarray(rng.standard_normal(n + 1))

    print(f"compiled extension available: {HAVE_COMPILED}")
    rows = [
        ("hk_components", (G,)),
        ("corner_weighted_sum", (T, G)),
        ("line_weighted_sum", (t, g)),
    ]
    for name, call_args in rows:
        t_py = timeit(getattr(_kernels_py, name), *call_args, repeats=args.repeats)
        t_sel = timeit(getattr(kernels, name), *call_args, repeats=args.repeats)
        label = "compiled" if HAVE_COMPILED else "fallback(selected)"
        print(f"{name:22s} numpy: {t_py * 1e3:8.2f} ms   {label}: {t_sel * 1e3:8.2f} ms")
        a = getattr(_kernels_py, name)(*call_args)
        b = getattr(kernels, name)(*call_args)
        if not np.allclose(a, b, rtol=1e-12, atol=1e-12):
            raise SystemExit(f"mismatch in {name}: {a} vs {b}")
    print("results agree within 1e-12")


if __name__ == "__main__":
    main()
