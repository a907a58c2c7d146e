#!/usr/bin/env python3
"""Benchmark the hot kernels: numba @njit loops vs the pure-numpy fallback.

Both implementations are imported side by side (the AXIMHD_NUMBA env flag
only controls which one the package itself uses), timed on a 256x256
grid, and reported with speedups.  Run:

    python3 benchmarks/bench_kernels.py [--n 256] [--repeat 50]
"""

import argparse
import time

import numpy as np

from aximhd._kernels import numba_impl, numpy_impl
from aximhd.evolve import RunConfig, make_state, step
from aximhd.grid import ScalarField, make_grid, zeros_like_grid
from aximhd.initial import gaussian_ring_values
from aximhd.poisson5d import _Solver


def timeit(fn, repeat):
    fn()  # warm-up (JIT compile / cache load)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args()

    g = make_grid(args.n, args.n, 3.0, 6.0)
    rng = np.random.default_rng(0)
    f = rng.standard_normal((g.n_r + 1, g.n_z))
    ur = rng.standard_normal((g.n_r + 1, g.n_z))
    ur[0] = 0.0
    uz = rng.standard_normal((g.n_r + 1, g.n_z))
    cp, cm = g.lap_coeffs
    solver = _Solver(g)
    b = rng.standard_normal((g.n_z // 2 + 1, g.n_r)) + 0j

    cases = {
        "laplace5d": lambda impl: impl.laplace5d(f, cp, cm, g.h_r, g.h_z, g.r_max),
        "upwind_advect": lambda impl: impl.upwind_advect(f, ur, uz, g.h_r, g.h_z),
        "muscl_advect": lambda impl: impl.muscl_advect(f, ur, uz, g.h_r, g.h_z),
        "centered_advect": lambda impl: impl.centered_advect(f, ur, uz, g.h_r, g.h_z),
        "thomas_solve": lambda impl: impl.thomas_solve(
            solver._dl, solver._cprime, solver._inv_denom, b
        ),
    }

    print(f"grid {args.n}x{args.n}, best of {args.repeat}")
    print(f"{'kernel':<18}{'numpy':>12}{'numba':>12}{'speedup':>9}")
    for name, call in cases.items():
        t_np = timeit(lambda: call(numpy_impl), args.repeat)
        t_nb = timeit(lambda: call(numba_impl), args.repeat)
        print(f"{name:<18}{t_np * 1e6:>10.0f}us{t_nb * 1e6:>10.0f}us{t_np / t_nb:>8.1f}x")

    # one full integrator step (kernels + FFT stream solve + bookkeeping),
    # using whichever backend the package selected at import time
    from aximhd import KERNEL_BACKEND

    pi = ScalarField(g, gaussian_ring_values(g, 1.0, 1.0, 3.0, 0.25), "even")
    st = make_state(g, pi, zeros_like_grid(g), "resistive")
    cfg = RunConfig(grid=g, mode="resistive", t_end=1.0, cfl_diff=0.15)
    t_step = timeit(lambda: step(st, cfg), max(5, args.repeat // 5))
    print(f"\nfull step ({KERNEL_BACKEND} backend): {t_step * 1e3:.2f} ms")
    print("set AXIMHD_NUMBA=0 to rerun the full step on the numpy fallback")


if __name__ == "__main__":
    main()
