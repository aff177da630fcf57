"""Running methods on graphs and collecting comparable results.

Every method ultimately reports the dense QUBO value of its partition; that
number is recomputed from the partition at report time and must agree with
the method's own claim (self-check), so a reported value can always be
trusted against the matrix.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import baselines
from .errors import SelfCheckError
from .graph import stats
from .objective import Partition
from .qubo import build_q, build_qhat, quad_form
from .solvers import default_schedule, solve_anneal, solve_exhaustive

ANNEAL_METHODS = ("anneal-q", "anneal-qhat")
CORENESS_METHODS = ("degree", "eig-a", "eig-q", "nonlin-pm", "h-index", "gen-be")
ALL_METHODS = ANNEAL_METHODS + ("exhaustive",) + CORENESS_METHODS
SEEDED_METHODS = ANNEAL_METHODS + ("gen-be",)


@dataclass
class RunResult:
    method: str
    value: float
    core_size: int
    core_labels: list
    wall_time: float
    seed: int = None
    extras: dict = field(default_factory=dict)

    def as_dict(self, verbose=False):
        doc = {
            "method": self.method,
            "value": self.value,
            "core_size": self.core_size,
            "core_labels": self.core_labels,
            "wall_time_s": self.wall_time,
            "seed": self.seed,
        }
        if verbose:
            doc.update(self.extras)
        return doc


def _coreness_scores(g, method, seed):
    if method == "degree":
        return baselines.coreness_degree(g)
    if method == "eig-a":
        return baselines.coreness_eig_a(g)
    if method == "eig-q":
        return baselines.coreness_eig_q(g)
    if method == "nonlin-pm":
        return baselines.coreness_nonlin_pm(g)
    if method == "h-index":
        return baselines.coreness_h_index(g)
    if method == "gen-be":
        return baselines.coreness_gen_be(g, seed=seed if seed is not None else 0)
    raise ValueError(f"unknown coreness method {method!r}")


def run_method(g, method, samples=100, sweeps=None, seed=None):
    """Run one method end to end and return a self-checked RunResult."""
    if method not in ALL_METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(ALL_METHODS)}")
    q = build_q(g)
    extras = {}
    t0 = time.perf_counter()
    if method in ANNEAL_METHODS:
        target = q if method == "anneal-q" else build_qhat(g)
        run_seed = 0 if seed is None else seed
        sched = default_schedule(target, num_reads=samples, seed=run_seed, sweeps=sweeps)
        result = solve_anneal(target, sched)
        part = result.best_sample.partition
        claimed = quad_form(q, part) if method == "anneal-qhat" else result.best_sample.value
        if method == "anneal-qhat":
            extras["value_qhat"] = result.best_sample.value
        extras["num_reads"] = result.num_reads
        extras["sweeps"] = sched.sweeps
    elif method == "exhaustive":
        part, claimed = solve_exhaustive(q)
        run_seed = None
    else:
        run_seed = seed if method in SEEDED_METHODS else None
        coreness = _coreness_scores(g, method, seed)
        if method == "eig-q":
            plus = baselines.threshold_optimal(g, coreness.scores)
            minus = baselines.threshold_optimal(g, -coreness.scores)
            part, claimed, k = plus if plus[1] >= minus[1] else minus
        else:
            part, claimed, k = baselines.threshold_optimal(g, coreness)
        extras["threshold_k"] = k
    wall = time.perf_counter() - t0

    recomputed = quad_form(q, part)
    if recomputed != claimed:
        raise SelfCheckError(
            f"{method}: reported value {claimed!r} != recomputed {recomputed!r}")
    return RunResult(
        method=method,
        value=recomputed,
        core_size=part.core_size,
        core_labels=[g.labels[i] for i in part.core_indices()],
        wall_time=wall,
        seed=run_seed,
        extras=extras,
    )


@dataclass
class BenchReport:
    graph_meta: dict
    results: list          # (method, RunResult or None, error message or None)
    ranking: list

    def as_dict(self):
        rows = []
        for method, result, error in self.results:
            if result is not None:
                row = result.as_dict(verbose=True)
                row["status"] = "ok"
            else:
                row = {"method": method, "status": "error", "error": error}
            rows.append(row)
        return {"graph": self.graph_meta, "results": rows, "ranking": self.ranking}


def _rank(results):
    scored = [(m, r.value) for m, r, err in results if r is not None]
    scored.sort(key=lambda t: -t[1])
    ranking = []
    for pos, (method, value) in enumerate(scored, start=1):
        tied = any(v == value for m, v in scored if m != method)
        ranking.append({
            "method": method,
            "value": value,
            "rank": pos,
            "rank_1": pos == 1,
            "rank_2": pos == 2,
            "tied": tied,
        })
    return ranking


def bench(g, methods, samples=100, sweeps=None, seed=None, parallel=False):
    """Run several methods on one graph; failures become error rows."""
    st = stats(g)
    meta = {
        "n": g.n,
        "n1": st.n1,
        "n2": st.n2,
        "rho": st.n1 / st.n2,
        "rho_exact": f"{st.rho.numerator}/{st.rho.denominator}",
    }

    def one(method):
        try:
            return method, run_method(g, method, samples=samples, sweeps=sweeps,
                                       seed=seed), None
        except SelfCheckError:
            raise
        except Exception as exc:
            return method, None, f"{type(exc).__name__}: {exc}"

    if parallel:
        with ThreadPoolExecutor(max_workers=min(len(methods), 8)) as pool:
            results = list(pool.map(one, methods))
    else:
        results = [one(m) for m in methods]
    return BenchReport(graph_meta=meta, results=results, ranking=_rank(results))
