"""QUBO matrices whose maximizers are good core-periphery partitions.

The dense matrix Q has diagonal 2(1+rho)deg_i - 2(n-1)rho, value -1 on edges
and +rho on non-edges off the diagonal; x^T Q x equals the rescaled objective
for every binary x.  The sparsified variant Qhat drops the +rho non-edge
entries, so its sparsity pattern equals the adjacency matrix and

    x^T Q x - x^T Qhat x = rho * s * (s - 1),   s = core size.

Entries are rationals with denominator n2; values are computed from integer
pair counts and divided once, so equal partitions always give bit-equal
floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .graph import stats
from .objective import Partition, _as_indicator, _pair_hits, _rescaled_numerator

DENSE_Q = "dense_q"
SPARSE_QHAT = "sparse_qhat"

# above this size the dense matrix is no longer materialized on request
MAX_DENSE_N = 4096


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    """Symmetric QUBO coefficient view over a graph's node set."""

    n: int
    kind: str
    rho: Fraction
    diag: np.ndarray
    graph: object = field(repr=False)

    @property
    def n1(self):
        return stats(self.graph).n1

    @property
    def n2(self):
        return stats(self.graph).n2

    def coefficient(self, i, j):
        """Matrix entry (i, j) as a float."""
        if i == j:
            return float(self.diag[i])
        if self.graph.has_edge(i, j):
            return -1.0 if self.kind == DENSE_Q else -(self.n1 + self.n2) / self.n2
        return self.n1 / self.n2 if self.kind == DENSE_Q else 0.0

    def to_dense(self):
        """Materialize the full matrix (guarded to n <= 4096)."""
        if self.n > MAX_DENSE_N:
            raise ValueError(
                f"refusing to materialize {self.n}x{self.n} dense matrix "
                f"(limit {MAX_DENSE_N}); use quad_form instead")
        rho_f = self.n1 / self.n2
        eu, ev = self.graph.edge_arrays()
        if self.kind == DENSE_Q:
            m = np.full((self.n, self.n), rho_f)
            np.fill_diagonal(m, 0.0)
            m[eu, ev] = -1.0
            m[ev, eu] = -1.0
        else:
            m = np.zeros((self.n, self.n))
            m[eu, ev] = -(1.0 + rho_f)
            m[ev, eu] = -(1.0 + rho_f)
        np.fill_diagonal(m, self.diag)
        return m


def _build(g, kind):
    st = stats(g)
    deg = st.degrees.astype(np.int64)
    num = 2 * (st.n1 + st.n2) * deg - 2 * (g.n - 1) * st.n1
    diag = num / st.n2
    diag.setflags(write=False)
    return QuboMatrix(n=g.n, kind=kind, rho=st.rho, diag=diag, graph=g)


def build_q(g):
    """Dense QUBO matrix; maximizing x^T Q x recovers the core."""
    return _build(g, DENSE_Q)


def build_qhat(g):
    """Sparsified QUBO matrix with adjacency sparsity pattern."""
    return _build(g, SPARSE_QHAT)


def value_numerator(q, partition):
    """x^T Q x times n2, an exact integer."""
    x = _as_indicator(q.graph, partition)
    e_hit, s = _pair_hits(q.graph, x)
    num = _rescaled_numerator(q.n, q.n1, q.n2, e_hit, s)
    if q.kind == SPARSE_QHAT:
        num -= q.n1 * s * (s - 1)
    return num


def quad_form(q, partition):
    """Exact x^T Q x for a binary partition vector."""
    return value_numerator(q, partition) / q.n2


def _minimization_terms(q):
    """Linear and quadratic coefficients of the equivalent minimization.

    Maximizing x^T Q x equals minimizing sum(c_i y_i) + sum(c_ij y_i y_j)
    with c_i = -Q_ii and c_ij = -2 Q_ij for i < j.  Zero couplers are
    dropped; zero linear terms are kept.
    """
    linear = -q.diag
    quadratic = []
    eu, ev = q.graph.edge_arrays()
    if q.kind == SPARSE_QHAT:
        c_edge = 2 * (q.n1 + q.n2) / q.n2
        for u, v in zip(eu.tolist(), ev.tolist()):
            quadratic.append((u, v, c_edge))
    else:
        c_nonedge = -2 * q.n1 / q.n2
        neighbor_sets = [set(q.graph.neighbors(i).tolist()) for i in range(q.n)]
        for i in range(q.n):
            for j in range(i + 1, q.n):
                if j in neighbor_sets[i]:
                    quadratic.append((i, j, 2.0))
                elif c_nonedge != 0.0:
                    quadratic.append((i, j, c_nonedge))
    return linear, quadratic


def export_qubo(q, path, format="json"):
    """Write the equivalent minimization problem to ``path``.

    Formats: "json" (linear/quadratic coefficient maps) and "qubo_text"
    (the solver file format with a "p qubo" header line).  Evaluating the
    exported problem at any binary y gives -quad_form(q, y).
    """
    path = Path(path)
    linear, quadratic = _minimization_terms(q)
    if format == "json":
        doc = {
            "n": q.n,
            "offset": 0.0,
            "linear": {str(i): float(linear[i]) for i in range(q.n)},
            "quadratic": {f"{u},{v}": c for u, v, c in quadratic},
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    elif format == "qubo_text":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"c minimization form of a {q.kind} matrix, rho = {q.rho}\n")
            fh.write(f"p qubo 0 {q.n} {q.n} {len(quadratic)}\n")
            for i in range(q.n):
                fh.write(f"{i} {i} {float(linear[i])!r}\n")
            for u, v, c in quadratic:
                fh.write(f"{u} {v} {float(c)!r}\n")
    else:
        raise ValueError(f"unknown export format {format!r}")
    return path


@dataclass(frozen=True)
class QuboProblem:
    """A minimization problem read back from an export file."""

    n: int
    offset: float
    linear: np.ndarray
    quadratic: dict

    def evaluate(self, y):
        y = np.asarray(y, dtype=np.float64).reshape(-1)
        if y.size != self.n:
            raise ValueError(f"vector length {y.size} != problem size {self.n}")
        total = self.offset + float(self.linear @ y)
        for (u, v), c in self.quadratic.items():
            total += c * y[u] * y[v]
        return total


def read_qubo(path, format="json"):
    """Read a file written by export_qubo back into a QuboProblem."""
    path = Path(path)
    if format == "json":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        n = int(doc["n"])
        linear = np.zeros(n)
        for key, c in doc.get("linear", {}).items():
            linear[int(key)] = c
        quadratic = {}
        for key, c in doc.get("quadratic", {}).items():
            u, v = (int(t) for t in key.split(","))
            quadratic[(min(u, v), max(u, v))] = quadratic.get((min(u, v), max(u, v)), 0.0) + c
        return QuboProblem(n=n, offset=float(doc.get("offset", 0.0)), linear=linear,
                           quadratic=quadratic)
    if format == "qubo_text":
        n = None
        linear = None
        quadratic = {}
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("c"):
                    continue
                tokens = line.split()
                if tokens[0] == "p":
                    if len(tokens) != 6 or tokens[1] != "qubo":
                        raise ValueError(f"{path}: malformed problem line {line!r}")
                    n = int(tokens[3])
                    linear = np.zeros(n)
                    continue
                if n is None:
                    raise ValueError(f"{path}: entry before the problem line")
                u, v, c = int(tokens[0]), int(tokens[1]), float(tokens[2])
                if u == v:
                    linear[u] += c
                else:
                    key = (min(u, v), max(u, v))
                    quadratic[key] = quadratic.get(key, 0.0) + c
        if n is None:
            raise ValueError(f"{path}: no problem line found")
        return QuboProblem(n=n, offset=0.0, linear=linear, quadratic=quadratic)
    raise ValueError(f"unknown export format {format!r}")
