"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--n 200000] [--k 8] [--repeat 5]
"""
import argparse
import time

import numpy as np

from entroseed import _backend


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000, help="number of RGB points")
    ap.add_argument("--k", type=int, default=8, help="number of centroids")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    x = rng.integers(0, 256, size=(args.n, 3)).astype(np.float64)
    c = x[rng.choice(args.n, args.k, replace=False)]
    # a spacing that makes the scan walk most of the list before it fills up
    th = 110.0

    print(f"n={args.n} k={args.k} repeat={args.repeat}")
    print(f"{'backend':<8} {'assign_s':>10} {'greedy_scan_s':>14}")
    results = {}
    for name in sorted(_backend.AVAILABLE):
        kern = _backend.get(name)
        t_assign = best_of(lambda: kern.assign(x, c), args.repeat)
        t_scan = best_of(lambda: kern.greedy_scan(x, th, args.k, []), args.repeat)
        results[name] = (kern.assign(x, c)[0], kern.greedy_scan(x, th, args.k, []))
        print(f"{name:<8} {t_assign:>10.4f} {t_scan:>14.4f}")
    if len(results) == 2:
        (la, sa), (lb, sb) = results.values()
        print(f"outputs identical: {np.array_equal(la, lb) and list(sa) == list(sb)}")


if __name__ == "__main__":
    main()
