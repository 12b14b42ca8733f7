"""Benchmark the compiled sweep kernel against the pure-numpy fallback.

Run with: python benchmarks/bench_kernels.py [--points N] [--repeats R]

Setting MAGNOMECH_NO_NUMBA=1 selects the numpy path at import time; this
script times both paths in one process by calling them directly.
"""

import argparse
import math
import time

import numpy as np

from magnomech import kernels
from magnomech.params import Mode, RawParams
from magnomech.steady_state import effective_model

TWO_PI = 2.0 * math.pi


def build_model():
    params = RawParams(
        omega_a=TWO_PI * 1e10, omega_L=TWO_PI * 1e10,
        omega_b1=TWO_PI * 1e7, omega_b2=TWO_PI * 1e7, omega_b3=TWO_PI * 1e7,
        kappa_a=TWO_PI * 1e6, kappa_m1=TWO_PI * 1e5, kappa_m2=TWO_PI * 1e5,
        gamma_1=TWO_PI * 1e2, gamma_2=TWO_PI * 1e2, gamma_3=TWO_PI * 1e2,
        g_1=TWO_PI * 1.5e6, g_2=TWO_PI * 1.5e6,
        G_1=TWO_PI * 1.5e6, G_2=TWO_PI * 3.5e6, G_a=TWO_PI * 2.5e6,
        delta_a=TWO_PI * 1e7, delta_m1=TWO_PI * 1e7, delta_m2=TWO_PI * 1e7,
        Delta_B=0.0, mode=Mode.EFFECTIVE)
    return effective_model(params)


def time_fn(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=200_001)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    model = build_model()
    deltas = np.linspace(0.0, 2.0 * TWO_PI * 1e7, args.points)
    margs = kernels._model_args(model)

    if not kernels.using_numba():
        print("numba path unavailable (MAGNOMECH_NO_NUMBA set or numba "
              "missing); timing the numpy path only")
        t = time_fn(lambda: kernels._grid_numpy(deltas, margs), args.repeats)
        print(f"numpy:  {t * 1e3:8.2f} ms  ({args.points} points)")
        return

    # Warm up so JIT compilation is excluded from the timing.
    kernels.amplitude_grid(model, deltas[:16])

    numba_out = kernels.amplitude_grid(model, deltas)
    numpy_out = kernels._grid_numpy(deltas, margs)
    worst = np.nanmax(np.abs(numba_out - numpy_out) / np.abs(numpy_out))
    print(f"agreement: max rel diff {worst:.2e} over {args.points} points")

    t_numba = time_fn(lambda: kernels.amplitude_grid(model, deltas),
                      args.repeats)
    t_numpy = time_fn(lambda: kernels._grid_numpy(deltas, margs),
                      args.repeats)
    print(f"numba:  {t_numba * 1e3:8.2f} ms")
    print(f"numpy:  {t_numpy * 1e3:8.2f} ms")
    print(f"speedup: {t_numpy / t_numba:.2f}x")


if __name__ == "__main__":
    main()
