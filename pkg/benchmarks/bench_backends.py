"""Benchmark the numba kernel against the pure-numpy fallback.

Times the oscillatory weighted-sum kernel on workloads matching what
osc_integral produces at various omega, plus one end-to-end solve_grid
comparison driven by the NEUMANN_BVP_BACKEND env flag semantics.

Usage: python3 benchmarks/bench_backends.py
"""

import math
import time

import numpy as np

from neumann_bvp.kernels import (KIND_SIN, make_numba_kernel,
                                 osc_weighted_sum_numpy)
from neumann_bvp.quadrature import QuadConfig, estimate_cost


def time_kernel(fn, kind, omega, nodes, weights, gvals, repeats=200):
    fn(kind, omega, 0.5, nodes, weights, gvals)  # warm up / JIT compile
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(kind, omega, 0.5, nodes, weights, gvals)
    return (time.perf_counter() - t0) / repeats


def main():
    numba_kernel = make_numba_kernel()
    rng = np.random.default_rng(0)
    print(f"{'omega':>10} {'n_evals':>9} {'numpy (us)':>12} {'numba (us)':>12} "
          f"{'speedup':>8}")
    for omega in (10.0, 1e2, 1e3, 1e4, 1e5):
        n = estimate_cost(omega, 0.0, 1.0, QuadConfig())
        nodes = np.sort(rng.uniform(0.0, 1.0, n))
        weights = rng.uniform(0.0, 1.0 / n, n)
        gvals = np.exp(nodes)
        t_np = time_kernel(osc_weighted_sum_numpy, KIND_SIN, omega,
                           nodes, weights, gvals)
        t_nb = time_kernel(numba_kernel, KIND_SIN, omega,
                           nodes, weights, gvals)
        check_np = osc_weighted_sum_numpy(KIND_SIN, omega, 0.5, nodes, weights, gvals)
        check_nb = numba_kernel(KIND_SIN, omega, 0.5, nodes, weights, gvals)
        assert math.isclose(check_np, check_nb, rel_tol=1e-11, abs_tol=1e-14)
        print(f"{omega:>10.0e} {n:>9d} {t_np * 1e6:>12.2f} {t_nb * 1e6:>12.2f} "
              f"{t_np / t_nb:>8.2f}x")


if __name__ == "__main__":
    main()
