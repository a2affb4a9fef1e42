"""Timing comparison for the two kernel implementations.

Runs the off-diagonal magnitude sum and the partial trace on random
density matrices at several register sizes, timing the loop kernels
(numba-compiled when available) against the vectorized numpy fallbacks.
Run as a script:

    python3 benchmarks/bench_kernels.py  [--qubits 8 9 10]  [--repeat 5]

With COHBOUND_NO_NUMBA set, the "loops" column is plain interpreted
Python and will be dramatically slower; the active backend is printed
so results are not misread.
"""

import argparse
import time

import numpy as np

from cohbound._accel import NUMBA_AVAILABLE, backend
from cohbound.kernels import (
    abs_offdiag_sum_loops,
    abs_offdiag_sum_numpy,
    ptrace_loops,
    ptrace_numpy,
    spread_indices,
)


def random_density(n_qubits, rng):
    dim = 1 << n_qubits
    amp = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amp /= np.linalg.norm(amp)
    return np.outer(amp, amp.conj())


def best_of(fn, args, repeat):
    fn(*args)  # warmup (and numba compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[8, 9, 10])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(42)
    print(f"active backend: {backend()} (numba available: {NUMBA_AVAILABLE})")
    print(f"{'kernel':<12} {'qubits':>6} {'loops [ms]':>12} {'numpy [ms]':>12} {'numpy/loops':>12}")
    for n in args.qubits:
        rho = random_density(n, rng)
        t_loop = best_of(abs_offdiag_sum_loops, (rho,), args.repeat)
        t_np = best_of(abs_offdiag_sum_numpy, (rho,), args.repeat)
        print(f"{'offdiag':<12} {n:>6} {t_loop * 1e3:>12.3f} {t_np * 1e3:>12.3f} {t_np / t_loop:>12.2f}")
        keep = tuple(range(n // 2))
        ks, ts = spread_indices(n, keep)
        t_loop = best_of(ptrace_loops, (rho, ks, ts), args.repeat)
        t_np = best_of(ptrace_numpy, (rho, ks, ts), args.repeat)
        print(f"{'ptrace':<12} {n:>6} {t_loop * 1e3:>12.3f} {t_np * 1e3:>12.3f} {t_np / t_loop:>12.2f}")


if __name__ == "__main__":
    main()
