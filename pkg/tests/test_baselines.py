from __future__ import annotations

import itertools

import numpy as np
import pytest

from cpqubo.baselines import (GENBE_DEFAULT_GRID, coreness_degree,
                              coreness_eig_a, coreness_eig_q, coreness_gen_be,
                              coreness_h_index, coreness_nonlin_pm,
                              genbe_transition_scores, threshold_optimal,
                              threshold_order, _nonlin_pm_iterates)
from cpqubo.graph import Graph
from cpqubo.qubo import build_q, quad_form

from conftest import (adjacency, cycle4, dense_q_matrix, edgeless, kcore_peeling,
                      path3, random_graph, star5)


# ---------------------------------------------------------------------------
# threshold rounding

def test_threshold_order_sorts_desc_with_index_ties():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert threshold_order(g, np.array([1.0, 3.0, 3.0, 0.0])).tolist() == [1, 2, 0, 3]


def test_threshold_constant_scores_path():
    part, value, k = threshold_optimal(path3(), np.zeros(3))
    assert (part.core_size, value, k) == (0, 0.0, 0)


def test_threshold_degree_star():
    part, value, k = threshold_optimal(star5(), coreness_degree(star5()))
    assert part.x.tolist() == [1, 0, 0, 0, 0]
    assert (value, k) == (8.0, 1)


def test_threshold_reports_exact_value_of_partition():
    for seed in range(10):
        g = random_graph(12, 0.4, seed)
        if g.num_edges in (0, 66):
            continue
        rng = np.random.default_rng(seed)
        scores = rng.normal(size=g.n)
        part, value, k = threshold_optimal(g, scores)
        assert part.core_size == k
        assert quad_form(build_q(g), part) == value
        # no other prefix beats it, and ties go to the smallest k
        order = threshold_order(g, scores)
        for kk in range(g.n + 1):
            from cpqubo.objective import Partition
            v = quad_form(build_q(g), Partition.from_core(g.n, order[:kk]))
            assert v <= value
            if kk < k:
                assert v < value


def test_threshold_edgeless():
    part, value, k = threshold_optimal(edgeless(4), np.arange(4.0))
    assert (part.core_size, value, k) == (0, 0.0, 0)


def test_threshold_rejects_bad_shape():
    with pytest.raises(ValueError, match="shape"):
        threshold_optimal(path3(), np.zeros(5))


# ---------------------------------------------------------------------------
# degree and eigenvector scores

def test_degree_scores():
    assert coreness_degree(star5()).scores.tolist() == [4.0, 1.0, 1.0, 1.0, 1.0]


def test_eig_a_path_analytic():
    v = coreness_eig_a(path3()).scores
    assert v == pytest.approx([0.5, np.sqrt(2) / 2, 0.5], abs=1e-8)


def test_eig_a_cycle_uniform():
    assert coreness_eig_a(cycle4()).scores == pytest.approx([0.5] * 4, abs=1e-10)


def test_eig_a_contract():
    for seed in range(10):
        g = random_graph(15, 0.3, seed)
        if g.num_edges == 0:
            continue
        v = coreness_eig_a(g).scores
        assert np.all(v >= 0)
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        a = adjacency(g).astype(float)
        lam = v @ a @ v
        assert np.linalg.norm(a @ v - lam * v) <= 1e-8


def test_eig_a_needs_edges():
    with pytest.raises(ValueError, match="edge"):
        coreness_eig_a(edgeless(3))


def test_eig_q_matches_dense_eigensolver():
    graphs = [path3(), star5(), cycle4()]
    graphs += [random_graph(n, 0.5, seed) for n in (5, 6, 7, 8) for seed in range(3)]
    for g in graphs:
        if g.num_edges in (0, g.n * (g.n - 1) // 2):
            continue
        v = coreness_eig_q(g).scores
        m = dense_q_matrix(g)
        lam = float(v @ m @ v)
        w = np.linalg.eigvalsh(m)
        assert lam == pytest.approx(w[-1], abs=1e-6)
        assert np.linalg.norm(m @ v - lam * v) <= 1e-8


def test_eig_q_cycle_leaves_uniform_start_subspace():
    # the top eigenvector of the cycle's matrix alternates sign, which a
    # uniform start could never reach
    v = coreness_eig_q(cycle4()).scores
    assert sorted(np.round(v, 6).tolist()) == [-0.5, -0.5, 0.5, 0.5]


def test_eig_q_edgeless_uniform():
    v = coreness_eig_q(edgeless(4)).scores
    assert v == pytest.approx([0.5] * 4)


# ---------------------------------------------------------------------------
# nonlinear power method

def test_nonlin_pm_cycle_uniform():
    v = coreness_nonlin_pm(cycle4()).scores
    assert v == pytest.approx([4 ** (-1 / 20.0)] * 4, abs=1e-10)


def test_nonlin_pm_star_center_dominates():
    v = coreness_nonlin_pm(star5()).scores
    assert v[0] > v[1:].max()
    assert v[1:] == pytest.approx([v[1]] * 4, abs=1e-10)


def test_nonlin_pm_keeps_unit_p_norm_every_iterate():
    g = random_graph(12, 0.3, 2)
    it = _nonlin_pm_iterates(g, 10.0, 20.0)
    for _, x in zip(range(50), it):
        assert np.linalg.norm(x, ord=20.0) == pytest.approx(1.0, abs=1e-12)


def test_nonlin_pm_zero_degree_scores_zero():
    g = Graph(6, [(0, i) for i in range(1, 5)])  # node 5 isolated
    v = coreness_nonlin_pm(g).scores
    assert v[5] == 0.0
    assert np.all(v[:5] > 0)


def test_nonlin_pm_path_matches_grid_search():
    alpha, p = 10.0, 20.0
    g = path3()
    v = coreness_nonlin_pm(g, alpha=alpha, p=p).scores

    def objective(x):
        mu01 = (x[0] ** alpha + x[1] ** alpha) ** (1 / alpha)
        mu12 = (x[1] ** alpha + x[2] ** alpha) ** (1 / alpha)
        return 2 * (mu01 + mu12)

    best_v, best_x = -np.inf, None
    steps = 220
    for i in range(steps + 1):
        for j in range(steps + 1 - i):
            w0, w1 = i / steps, j / steps
            w2 = max(1.0 - w0 - w1, 0.0)
            x = np.array([w0, w1, w2]) ** (1 / p)
            val = objective(x)
            if val > best_v:
                best_v, best_x = val, x
    assert objective(v) == pytest.approx(best_v, abs=1e-3)
    assert v == pytest.approx(best_x, abs=1e-2)


def test_nonlin_pm_needs_edges():
    with pytest.raises(ValueError, match="edge"):
        coreness_nonlin_pm(edgeless(3))


# ---------------------------------------------------------------------------
# h-index iteration

def test_h_index_star():
    assert coreness_h_index(star5()).scores.tolist() == [1.0, 1.0, 1.0, 1.0, 1.0]


def test_h_index_equals_peeling_core_number():
    for seed in range(30):
        rng = np.random.default_rng(seed)
        g = random_graph(int(rng.integers(2, 40)), float(rng.uniform(0.05, 0.6)), seed)
        assert coreness_h_index(g).scores.tolist() == kcore_peeling(g).tolist()


def test_h_index_isolated_nodes_are_zero():
    g = Graph(3, [(0, 1)])
    assert coreness_h_index(g).scores.tolist() == [1.0, 1.0, 0.0]


# ---------------------------------------------------------------------------
# boundary-family scores

def test_genbe_transition_scores_shape():
    c = genbe_transition_scores(5, 0.0, 0.5)
    assert np.all(np.diff(c) > 0)           # strictly increasing when alpha < 1
    assert np.all((0 <= c) & (c <= 1))
    sharp = genbe_transition_scores(3, 1.0, 1 / 3)
    assert sharp.tolist() == [0.0, 1.0, 1.0]
    no_boundary = genbe_transition_scores(5, 1.0, 0.1)
    assert no_boundary.tolist() == [1.0] * 5


def _perm_oracle(g, rank_values):
    best = -np.inf
    for perm in itertools.permutations(range(g.n)):
        values = np.array([rank_values[perm[i]] for i in range(g.n)])
        obj = sum(values[u] * values[v] for u, v in g.edges)
        best = max(best, obj)
    return best


def _achieved(g, scores):
    return sum(scores[u] * scores[v] for u, v in g.edges)


@pytest.mark.parametrize("point", GENBE_DEFAULT_GRID)
def test_genbe_single_point_hits_permutation_optimum_star(point):
    g = star5()
    scores = coreness_gen_be(g, grid=[point], seed=0).scores
    want = _perm_oracle(g, genbe_transition_scores(g.n, *point))
    assert _achieved(g, scores) == pytest.approx(want, rel=1e-9)
    assert scores[0] == max(scores)


def test_genbe_star_center_first_on_default_grid():
    scores = coreness_gen_be(star5(), seed=0).scores
    assert scores[0] > scores[1:].max()


def test_genbe_path_sharp_boundary_middle_first():
    g = path3()
    scores = coreness_gen_be(g, grid=[(1.0, 1 / 3)], seed=0).scores
    want = _perm_oracle(g, genbe_transition_scores(3, 1.0, 1 / 3))
    assert _achieved(g, scores) == pytest.approx(want, rel=1e-9)
    assert scores[1] == max(scores)


def test_genbe_cycle_hits_permutation_optimum():
    g = cycle4()
    for point in ((0.0, 0.5), (0.5, 0.25)):
        scores = coreness_gen_be(g, grid=[point], seed=0).scores
        want = _perm_oracle(g, genbe_transition_scores(4, *point))
        assert _achieved(g, scores) == pytest.approx(want, rel=1e-9)


def test_genbe_deterministic_and_validates_grid():
    g = random_graph(10, 0.4, 5)
    a = coreness_gen_be(g, seed=3).scores
    b = coreness_gen_be(g, seed=3).scores
    assert a.tolist() == b.tolist()
    with pytest.raises(ValueError, match="grid"):
        coreness_gen_be(g, grid=[])


def test_genbe_edgeless_all_zero():
    assert coreness_gen_be(edgeless(4), seed=0).scores.tolist() == [0.0] * 4
