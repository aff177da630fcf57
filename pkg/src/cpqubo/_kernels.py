"""Inner loops of the annealer, JIT-compiled when numba is available.

The kernels only see flat arrays: CSR adjacency (indptr/indices), the float
diagonal, and the exact rho as a float.  A flip delta needs the number of
core neighbors cn[i] and the core size s:

    dense Q:   sum_j Q_ij x_j = -cn[i] + rho * (s - x[i] - cn[i])
    sparse Q:  sum_j Q_ij x_j = -(1 + rho) * cn[i]
    delta_i   = (1 - 2 x[i]) * (diag[i] + 2 * sum_j Q_ij x_j)

All randomness is precomputed by the caller, so results do not depend on the
compilation path.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def flip_delta(i, x, cn, s, diag, rho, dense):
    off = -1.0 * cn[i]
    if dense:
        off += rho * (s - x[i] - cn[i])
    else:
        off -= rho * cn[i]
    return (1.0 - 2.0 * x[i]) * (diag[i] + 2.0 * off)


@njit(cache=True)
def _apply_flip(i, x, cn, s, indptr, indices):
    if x[i] == 0:
        x[i] = 1
        s += 1
        for k in range(indptr[i], indptr[i + 1]):
            cn[indices[k]] += 1
    else:
        x[i] = 0
        s -= 1
        for k in range(indptr[i], indptr[i + 1]):
            cn[indices[k]] -= 1
    return s


@njit(cache=True)
def init_core_counts(x, indptr, indices):
    n = x.shape[0]
    cn = np.zeros(n, dtype=np.int32)
    for i in range(n):
        if x[i] == 1:
            for k in range(indptr[i], indptr[i + 1]):
                cn[indices[k]] += 1
    return cn


@njit(cache=True)
def anneal_sweeps(x, cn, indptr, indices, diag, rho, dense, order, unif, betas):
    """Metropolis sweeps in place; order/unif are (sweeps, n) arrays."""
    s = 0
    for i in range(x.shape[0]):
        s += x[i]
    for t in range(order.shape[0]):
        beta = betas[t]
        for k in range(order.shape[1]):
            i = order[t, k]
            d = flip_delta(i, x, cn, s, diag, rho, dense)
            if d >= 0.0 or unif[t, k] < math.exp(beta * d):
                s = _apply_flip(i, x, cn, s, indptr, indices)


@njit(cache=True)
def greedy_sweeps(x, cn, indptr, indices, diag, rho, dense, eps):
    """Best-improvement 1-flip ascent; eps separates true gains from rounding
    noise (value increments are integer multiples of 1/n2)."""
    n = x.shape[0]
    s = 0
    for i in range(n):
        s += x[i]
    while True:
        best_d = eps
        best_i = -1
        for i in range(n):
            d = flip_delta(i, x, cn, s, diag, rho, dense)
            if d > best_d:
                best_d = d
                best_i = i
        if best_i < 0:
            return
        s = _apply_flip(best_i, x, cn, s, indptr, indices)
