"""Time each hot kernel under numba and under the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both variants are imported directly from ``twl.kernels``, so the
TWL_PURE_NUMPY flag is not needed here. The first numba call (compilation)
is excluded from the timings.
"""

import argparse
import time

import numpy as np

from twl import kernels


def best_of(fn, repeat):
    fn()  # warm-up / JIT
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    big = (rng.random((400, 400)) < 0.5).astype(np.uint8)
    sparse = (rng.random((12, 12)) < 0.3).astype(np.uint8)
    p = kernels.prefix_sums(kernels.corner_matrix_np(sparse))

    cases = [
        ("corner_matrix 400x400",
         lambda: kernels.corner_matrix_nb(big), lambda: kernels.corner_matrix_np(big)),
        ("find_minor 12x12 t=4",
         lambda: kernels.find_minor_nb(p, 12, 12, 1, 4), lambda: kernels.find_minor_np(p, 12, 12, 1, 4)),
        ("column_bound_sweep 4x4",
         lambda: kernels.column_bound_sweep_nb(4, 4), lambda: kernels.column_bound_sweep_np(4, 4)),
    ]
    print(f"{'kernel':28s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, nb, np_ in cases:
        a, b = best_of(nb, args.repeat), best_of(np_, args.repeat)
        print(f"{name:28s} {a:10.5f} {b:10.5f} {b / a:8.1f}x")


if __name__ == "__main__":
    main()
