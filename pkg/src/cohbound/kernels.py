"""Hot numeric kernels: off-diagonal abs sum and partial trace.

Each kernel exists twice: a loop version compiled with numba's @njit and
a vectorized numpy version. ``_accel.USE_NUMBA`` picks the active one at
import time; both stay importable so tests and benchmarks can compare
them. The loop versions accumulate serially in row-major order, which
also makes them the reproducible reference for summation-order effects.
"""

import math

import numpy as np

from ._accel import USE_NUMBA

if USE_NUMBA:
    from numba import njit
else:

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco


@njit(cache=True)
def abs_offdiag_sum_loops(rho):
    n = rho.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                z = rho[i, j]
                total += math.sqrt(z.real * z.real + z.imag * z.imag)
    return total


def abs_offdiag_sum_numpy(rho):
    mags = np.sqrt(rho.real ** 2 + rho.imag ** 2)
    return float(mags.sum() - np.trace(mags))


def spread_indices(n_qubits, keep):
    """Index tables for the partial trace kernels.

    Qubit q occupies bit (n_qubits - 1 - q) of a basis index. For every
    reduced-space index a, keep_spread[a] holds a's bits placed at the
    kept qubits' bit positions; traced_spread does the same for the
    complementary qubits. A full basis index is keep_spread[a] |
    traced_spread[t].
    """
    keep = list(keep)
    kept_set = set(keep)
    traced = [q for q in range(n_qubits) if q not in kept_set]

    def spread(qubits):
        r = len(qubits)
        idx = np.arange(1 << r, dtype=np.int64)
        out = np.zeros(1 << r, dtype=np.int64)
        for i, q in enumerate(qubits):
            bit = (idx >> (r - 1 - i)) & 1
            out |= bit << (n_qubits - 1 - q)
        return out

    return spread(keep), spread(traced)


@njit(cache=True)
def ptrace_loops(rho, keep_spread, traced_spread):
    dk = keep_spread.shape[0]
    dt = traced_spread.shape[0]
    out = np.zeros((dk, dk), dtype=np.complex128)
    for a in range(dk):
        for b in range(dk):
            acc = 0.0 + 0.0j
            for t in range(dt):
                acc += rho[keep_spread[a] | traced_spread[t],
                           keep_spread[b] | traced_spread[t]]
            out[a, b] = acc
    return out


def ptrace_numpy(rho, keep_spread, traced_spread):
    # rows[a, t] = full index of reduced row a with traced block t
    rows = keep_spread[:, None] | traced_spread[None, :]
    gathered = rho[rows[:, None, :], rows[None, :, :]]
    return gathered.sum(axis=2)


if USE_NUMBA:
    abs_offdiag_sum = abs_offdiag_sum_loops
    ptrace_kernel = ptrace_loops
else:
    abs_offdiag_sum = abs_offdiag_sum_numpy
    ptrace_kernel = ptrace_numpy
