"""Benchmark the compiled spacing kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 10000,100000,1000000]

Times the four hot kernels on sorted uniform samples and a 512-point
truncation grid, plus an end-to-end replication of a bias/MSE inner
loop.  Requires the extension to be built; otherwise only the fallback
column is reported.
"""
import argparse
import time

import numpy as np

from qrigf import _spacings_py as pyk

try:
    from qrigf import _spacings as ck
except ImportError:
    ck = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench(sizes):
    rng = np.random.default_rng(0)
    us = np.ascontiguousarray(np.sort(rng.uniform(size=512)))
    header = f"{'kernel':<22}{'n':>9}{'python':>12}{'compiled':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        z = np.sort(rng.uniform(size=n))
        cases = [
            ("power_mean", (z, 0.0, 0.7)),
            ("tail_sums[512 u]", (z, 0.0, 0.7, us)),
            ("head_sums[512 u]", (z, 0.0, 0.7, us)),
            ("step_quantile[512 u]", (z, 0.0, us)),
        ]
        for name, args in cases:
            base = name.split("[")[0]
            t_py = timeit(getattr(pyk, base), *args)
            if ck is not None:
                t_c = timeit(getattr(ck, base), *args)
                print(f"{name:<22}{n:>9}{t_py*1e3:>10.3f}ms{t_c*1e3:>10.3f}ms"
                      f"{t_py/t_c:>8.1f}x")
            else:
                print(f"{name:<22}{n:>9}{t_py*1e3:>10.3f}ms{'-':>12}{'-':>9}")
    print()


def bench_replication(n=500, reps=200):
    """A bias/MSE inner loop (sample, sort, statistics at three u's)."""
    def loop(mod):
        rng = np.random.default_rng(1)
        us = np.asarray([0.25, 0.5, 0.75])
        total = 0.0
        for _ in range(reps):
            u = rng.uniform(size=n)
            z = np.sort(np.exp(-0.7 / (2.0 * u - u * u)))
            total += mod.power_mean(z, 0.0, 0.7)
            total += mod.tail_sums(z, 0.0, 0.7, us).sum()
        return total

    t_py = timeit(loop, pyk, repeat=3)
    line = (f"replication loop (n={n}, reps={reps}): "
            f"python {t_py*1e3:.1f}ms")
    if ck is not None:
        t_c = timeit(loop, ck, repeat=3)
        line += f", compiled {t_c*1e3:.1f}ms, speedup {t_py/t_c:.1f}x"
    print(line)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="500,10000,100000,1000000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if ck is None:
        print("compiled extension not available; timing the fallback only\n")
    bench(sizes)
    bench_replication()
