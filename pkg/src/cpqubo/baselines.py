"""Coreness scores and the optimal-threshold rounding shared by all of them.

Every baseline produces one real score per node; threshold_optimal then
sorts nodes by score and picks the prefix whose indicator maximizes the
dense QUBO value, so methods are compared on exactly the same scale as the
annealer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .graph import stats
from .objective import Partition, _prefix_hit_counts, _rescaled_numerator
from .qubo import build_q

EIG_MAX_ITER = 100_000
RESIDUAL_TOL = 1e-8
NPM_TOL = 1e-9
NPM_MAX_ITER = 10_000

GENBE_DEFAULT_GRID = tuple((a, b) for a in (0.0, 0.5, 1.0) for b in (0.1, 0.25, 0.5))


@dataclass(frozen=True)
class CorenessVector:
    scores: np.ndarray
    method: str


def threshold_order(g, coreness):
    """Node ids sorted by score descending, ties by node index ascending."""
    scores = coreness.scores if isinstance(coreness, CorenessVector) else np.asarray(coreness)
    if scores.shape != (g.n,):
        raise ValueError(f"score vector shape {scores.shape} != ({g.n},)")
    return np.argsort(-scores.astype(np.float64), kind="stable")


def threshold_optimal(g, coreness):
    """Best prefix of the score ranking under the dense QUBO value.

    Nodes are sorted by score descending (ties: node index ascending) and
    every prefix size k = 0..n is evaluated exactly; the smallest maximizing
    k wins.  Returns (partition, value, k).
    """
    st = stats(g)
    order = threshold_order(g, coreness)
    e_hits = _prefix_hit_counts(g, order)
    best_num = None
    best_k = 0
    for k in range(g.n + 1):
        num = _rescaled_numerator(g.n, st.n1, st.n2, int(e_hits[k]), k)
        if best_num is None or num > best_num:
            best_num = num
            best_k = k
    part = Partition.from_core(g.n, order[:best_k])
    return part, best_num / st.n2, best_k


def coreness_degree(g):
    return CorenessVector(scores=g.degrees.astype(np.float64), method="degree")


def _adj_matvec(g, v):
    w = np.zeros(g.n)
    eu, ev = g.edge_arrays()
    if eu.size:
        np.add.at(w, eu, v[ev])
        np.add.at(w, ev, v[eu])
    return w


def coreness_eig_a(g):
    """Perron eigenvector of the adjacency matrix.

    Power iteration runs on A + I so bipartite spectra cannot stall it; the
    result is unit 2-norm, entrywise nonnegative, and checked against the
    residual ||Av - lambda v|| <= 1e-8.
    """
    if g.num_edges == 0:
        raise ValueError("eigenvector coreness needs at least one edge")
    v = np.full(g.n, 1.0 / np.sqrt(g.n))
    residual = np.inf
    for _ in range(EIG_MAX_ITER):
        av = _adj_matvec(g, v)
        lam = float(v @ av)
        residual = float(np.linalg.norm(av - lam * v))
        if residual <= RESIDUAL_TOL:
            break
        w = av + v
        v = w / np.linalg.norm(w)
    else:
        raise ConvergenceError(
            f"adjacency power iteration stalled (residual {residual:.3e})",
            residual=residual)
    return CorenessVector(scores=v, method="eig-a")


def _q_matvec(g, v, rho_f):
    """Q v without materializing Q."""
    deg = g.degrees
    sv = v.sum()
    av = _adj_matvec(g, v)
    return (2.0 * (1.0 + rho_f) * deg * v - 2.0 * (g.n - 1) * rho_f * v
            - (1.0 + rho_f) * av + rho_f * (sv - v))


def coreness_eig_q(g, seed=0):
    """Eigenvector of the algebraically largest eigenvalue of the dense
    QUBO matrix, via power iteration on Q + sigma I.  The shift sigma comes
    from row-wise Gershgorin bounds, just large enough to make the whole
    spectrum positive so the iteration targets the algebraic maximum.

    The orientation is fixed so the largest-magnitude entry is positive;
    callers should still try both signs when thresholding.  The start vector
    is a seeded random unit vector (a uniform start can sit in a smaller
    eigenspace on symmetric graphs).
    """
    st = stats(g)
    if st.n1 == 0:
        return CorenessVector(scores=np.full(g.n, 1.0 / np.sqrt(g.n)), method="eig-q")
    rho_f = st.n1 / st.n2
    deg = g.degrees.astype(np.float64)
    diag = 2.0 * (1.0 + rho_f) * deg - 2.0 * (g.n - 1) * rho_f
    row_rest = deg + (g.n - 1 - deg) * rho_f
    sigma = max(0.0, -float(np.min(diag - row_rest))) + 1.0
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(3,)))
    v = rng.standard_normal(g.n)
    v /= np.linalg.norm(v)
    residual = np.inf
    for _ in range(EIG_MAX_ITER):
        qv = _q_matvec(g, v, rho_f)
        lam = float(v @ qv)
        residual = float(np.linalg.norm(qv - lam * v))
        if residual <= RESIDUAL_TOL:
            break
        w = qv + sigma * v
        v = w / np.linalg.norm(w)
    else:
        raise ConvergenceError(
            f"QUBO power iteration stalled (residual {residual:.3e})",
            residual=residual)
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return CorenessVector(scores=v, method="eig-q")


def _nonlin_pm_iterates(g, alpha, p):
    """Yield successive unit-p-norm iterates of the nonlinear power method."""
    eu, ev = g.edge_arrays()
    x = np.full(g.n, 1.0)
    x /= np.linalg.norm(x, ord=p)
    yield x
    expo = (1.0 - alpha) / alpha
    while True:
        xa = x ** alpha
        kernel = (xa[eu] + xa[ev]) ** expo
        grad = np.zeros(g.n)
        np.add.at(grad, eu, kernel * x[eu] ** (alpha - 1.0))
        np.add.at(grad, ev, kernel * x[ev] ** (alpha - 1.0))
        y = grad ** (1.0 / (p - 1.0))
        y /= np.linalg.norm(y, ord=p)
        yield y
        x = y


def coreness_nonlin_pm(g, alpha=10.0, p=None, tol=NPM_TOL, max_iter=NPM_MAX_ITER):
    """Nonlinear power method maximizing sum_ij a_ij (x_i^a + x_j^a)^(1/a)
    over the nonnegative unit p-norm sphere (smooth maximum coreness).

    Stops when the p-norm of the iterate change drops below ``tol``.
    Zero-degree nodes score 0.
    """
    if g.num_edges == 0:
        raise ValueError("nonlinear power method needs at least one edge")
    if p is None:
        p = 2.0 * alpha
    it = _nonlin_pm_iterates(g, alpha, p)
    x = next(it)
    for _ in range(max_iter):
        y = next(it)
        change = np.linalg.norm(y - x, ord=p)
        x = y
        if change < tol:
            return CorenessVector(scores=x, method="nonlin-pm")
    raise ConvergenceError(
        f"nonlinear power method stalled (last change {change:.3e})",
        residual=float(change))


def _h_operator(values):
    """Largest h such that at least h of the values are >= h."""
    vals = np.sort(values)[::-1]
    h = 0
    for k, v in enumerate(vals, start=1):
        if v >= k:
            h = k
        else:
            break
    return h


def coreness_h_index(g):
    """Iterated neighborhood h-index; the fixpoint equals the k-core number
    of every node."""
    h = g.degrees.astype(np.int64)
    while True:
        new = np.array([_h_operator(h[g.neighbors(i)]) for i in range(g.n)],
                       dtype=np.int64)
        if np.array_equal(new, h):
            return CorenessVector(scores=h.astype(np.float64), method="h-index")
        h = new


def genbe_transition_scores(n, alpha, beta):
    """Rank value profile with a boundary at floor(beta * n): the first
    floor(beta*n) ranks ramp over the periphery side, the rest over the core
    side.  alpha = 1 gives a hard step, alpha = 0 a single linear ramp.
    Rank n-1 is the most core-like; values increase with rank (strictly when
    alpha < 1)."""
    n = int(n)
    boundary = int(np.floor(beta * n))
    boundary = min(boundary, n - 1)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    scores = np.empty(n)
    if boundary > 0:
        scores[:boundary] = ranks[:boundary] * (1.0 - alpha) / (2.0 * boundary)
    scores[boundary:] = ((ranks[boundary:] - boundary) * (1.0 - alpha)
                         / (2.0 * (n - boundary)) + (1.0 + alpha) / 2.0)
    return scores


def _genbe_objective(g, values):
    eu, ev = g.edge_arrays()
    return float(np.sum(values[eu] * values[ev]))


def _genbe_anneal(g, rank_values, rng, sweeps):
    """Maximize sum_{edges} v_i v_j over assignments of rank_values to nodes
    by Metropolis swap moves.  Returns (best node values, best objective)."""
    n = g.n
    values = rank_values[rng.permutation(n)]
    neigh_sum = _adj_matvec(g, values)
    current = _genbe_objective(g, values)
    best = current
    best_values = values.copy()
    nsets = [set(g.neighbors(i).tolist()) for i in range(n)]

    scale = float(np.max(rank_values) ** 2 * max(1, g.degrees.max()))
    betas = np.geomspace(0.5 / scale, 100.0 / scale, num=sweeps)
    pairs = rng.integers(0, n, size=(sweeps, n, 2))
    unif = rng.random((sweeps, n))
    for t in range(sweeps):
        beta = betas[t]
        for k in range(n):
            a, b = int(pairs[t, k, 0]), int(pairs[t, k, 1])
            if a == b or values[a] == values[b]:
                continue
            linked = b in nsets[a]
            va, vb = values[a], values[b]
            delta = (vb - va) * ((neigh_sum[a] - (vb if linked else 0.0))
                                 - (neigh_sum[b] - (va if linked else 0.0)))
            if delta >= 0.0 or unif[t, k] < np.exp(beta * delta):
                neigh_sum[g.neighbors(a)] += vb - va
                neigh_sum[g.neighbors(b)] += va - vb
                values[a], values[b] = vb, va
                current += delta
                if current > best:
                    best = current
                    best_values = values.copy()
    # re-evaluate the incumbent from scratch; incremental updates drift
    return best_values, _genbe_objective(g, best_values)


def coreness_gen_be(g, grid=GENBE_DEFAULT_GRID, seed=0, restarts=2, sweeps=None):
    """Simplified boundary-family coreness in the spirit of the transition
    sweep of Rombach-style core scores.

    For every (alpha, beta) grid point the rank profile from
    genbe_transition_scores is assigned to nodes by seeded swap annealing to
    maximize sum_{edges} v_i v_j; the per-node values of the best assignment
    found are then averaged across the grid, weighted by the achieved
    objective.  Agreement with any reference implementation is approximate
    by design.
    """
    if not grid:
        raise ValueError("grid must contain at least one (alpha, beta) point")
    if sweeps is None:
        sweeps = max(100, 2 * g.n)
    weighted = np.zeros(g.n)
    total_weight = 0.0
    for gi, (alpha, beta) in enumerate(grid):
        rank_values = genbe_transition_scores(g.n, alpha, beta)
        point_best = None
        for restart in range(restarts):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(2, gi, restart)))
            values, achieved = _genbe_anneal(g, rank_values, rng, sweeps)
            if point_best is None or achieved > point_best[1]:
                point_best = (values, achieved)
        values, achieved = point_best
        weighted += achieved * values
        total_weight += achieved
    if total_weight > 0.0:
        weighted /= total_weight
    return CorenessVector(scores=weighted, method="gen-be")
