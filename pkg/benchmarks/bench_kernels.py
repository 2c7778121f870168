"""Benchmark the numba DWT kernels against the pure-numpy fallback.

Run with the package installed:

    python3 benchmarks/bench_kernels.py

The numba backend is active by default; set FUNCDECONV_NO_NUMBA=1 to confirm
the fallback is the same code this script times explicitly.
"""

import time

import numpy as np

from funcdeconv._kernels import (
    backend,
    dwt_step,
    dwt_step_numpy,
    idwt_step,
    idwt_step_numpy,
)
from funcdeconv.spatial import DB6_HI, DB6_LO


def _time(fn, *args, repeats=7, inner=20):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def main() -> None:
    print(f"active backend: {backend()}")
    if backend() != "numba":
        print("numba unavailable or disabled; timing the numpy path against itself")
    shapes = [(16, 256), (64, 512), (256, 1024), (1024, 2048)]
    rng = np.random.default_rng(0)
    header = f"{'shape':>14} {'dwt numpy':>12} {'dwt numba':>12} {'speedup':>8}   " \
             f"{'idwt numpy':>12} {'idwt numba':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for rows, cols in shapes:
        a = rng.standard_normal((rows, cols))
        # warm-up triggers JIT compilation before timing
        ca, cd = dwt_step(a, DB6_LO, DB6_HI)
        idwt_step(ca, cd, DB6_LO, DB6_HI)
        ca_np, cd_np = dwt_step_numpy(a, DB6_LO, DB6_HI)
        assert np.allclose(ca, ca_np, atol=1e-12)
        assert np.allclose(cd, cd_np, atol=1e-12)

        t_np = _time(dwt_step_numpy, a, DB6_LO, DB6_HI)
        t_nb = _time(dwt_step, a, DB6_LO, DB6_HI)
        ti_np = _time(idwt_step_numpy, ca, cd, DB6_LO, DB6_HI)
        ti_nb = _time(idwt_step, ca, cd, DB6_LO, DB6_HI)
        print(f"{rows}x{cols:>9} {t_np * 1e6:>10.1f}us {t_nb * 1e6:>10.1f}us "
              f"{t_np / t_nb:>7.1f}x   {ti_np * 1e6:>10.1f}us "
              f"{ti_nb * 1e6:>10.1f}us {ti_np / ti_nb:>7.1f}x")


if __name__ == "__main__":
    main()
