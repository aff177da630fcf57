"""Shared builders and independent oracles.

The oracles recompute every quantity from an explicit adjacency matrix with
literal double loops (or numpy matrix algebra), so they share no code with
the package internals.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from cpqubo.graph import Graph


def star5():
    """K_{1,4} with the center at node 0."""
    return Graph(5, [(0, i) for i in range(1, 5)], list("abcde"))


def path3():
    return Graph(3, [(0, 1), (1, 2)])


def cycle4():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def edgeless(n=4):
    return Graph(n, [])


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def adjacency(g):
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = 1
        a[v, u] = 1
    return a


# ---------------------------------------------------------------------------
# objective oracles (ordered-pair double loops)

def brute_max_count(a, x):
    n = a.shape[0]
    return sum(int(a[i, j]) * max(x[i], x[j])
               for i in range(n) for j in range(n) if i != j)


def brute_unnormalized(a, x):
    n = a.shape[0]
    total = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = max(x[i], x[j])
            total += a[i, j] * m + (1 - a[i, j]) * (1 - m)
    return total


def brute_normalized(a, x):
    n = a.shape[0]
    n1 = int(a.sum()) // 2
    n2 = n * (n - 1) // 2 - n1
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = max(x[i], x[j])
            total += a[i, j] * m / n1 + (1 - a[i, j]) * (1 - m) / n2
    return total


def brute_rescaled(a, x):
    n = a.shape[0]
    n1 = int(a.sum()) // 2
    n2 = n * (n - 1) // 2 - n1
    rho = n1 / n2
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            total += (a[i, j] * (1 + rho) - rho) * max(x[i], x[j])
    return total


def brute_rescaled_quadratic(a, x):
    """Same objective through the binary identity
    max(x_i, x_j) = x_i^2 + x_j^2 - x_i x_j."""
    n = a.shape[0]
    n1 = int(a.sum()) // 2
    n2 = n * (n - 1) // 2 - n1
    rho = n1 / n2
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            total += (a[i, j] * (1 + rho) - rho) * (x[i] ** 2 + x[j] ** 2 - x[i] * x[j])
    return total


# ---------------------------------------------------------------------------
# QUBO oracles

def dense_q_matrix(g):
    """Q = 2(1+rho) D - 2(n-1) rho I - (1+rho) A + rho (J - I)."""
    a = adjacency(g).astype(np.float64)
    n = g.n
    n1 = int(a.sum()) // 2
    n2 = n * (n - 1) // 2 - n1
    rho = n1 / n2
    d = np.diag(a.sum(axis=1))
    e = np.ones((n, n)) - np.eye(n)
    return 2 * (1 + rho) * d - 2 * (n - 1) * rho * np.eye(n) - (1 + rho) * a + rho * e


def dense_qhat_matrix(g):
    a = adjacency(g).astype(np.float64)
    n = g.n
    n1 = int(a.sum()) // 2
    n2 = n * (n - 1) // 2 - n1
    rho = n1 / n2
    d = np.diag(a.sum(axis=1))
    return 2 * (1 + rho) * d - 2 * (n - 1) * rho * np.eye(n) - (1 + rho) * a


def brute_quad_form(m, x):
    x = np.asarray(x, dtype=np.float64)
    return float(x @ m @ x)


def exhaustive_max(m):
    """Max of x^T m x over binary x by literal enumeration.  Returns the
    value and the first (lexicographically smallest) maximizer."""
    best_v = -np.inf
    best_x = None
    for bits in itertools.product((0, 1), repeat=m.shape[0]):
        v = brute_quad_form(m, bits)
        if v > best_v:
            best_v = v
            best_x = bits
    return best_v, best_x


# ---------------------------------------------------------------------------
# k-core oracle (peeling)

def kcore_peeling(g):
    deg = {i: int(d) for i, d in enumerate(g.degrees)}
    alive = set(range(g.n))
    core = {}
    k = 0
    while alive:
        k = max(k, min(deg[i] for i in alive))
        peel = [i for i in alive if deg[i] <= k]
        while peel:
            v = peel.pop()
            if v not in alive:
                continue
            core[v] = k
            alive.discard(v)
            for u in g.neighbors(v):
                u = int(u)
                if u in alive:
                    deg[u] -= 1
                    if deg[u] <= k:
                        peel.append(u)
    return np.array([core[i] for i in range(g.n)], dtype=np.int64)


def random_binary(n, rng):
    return rng.integers(0, 2, size=n).astype(np.int8)
