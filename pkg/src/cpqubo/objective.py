"""Core-periphery partition quality measures.

A partition assigns each node to the core (1) or the periphery (0).  The
quality measures reward present edges that touch the core and missing edges
that stay inside the periphery.  All of them are rational numbers with
denominator n1 * n2 (or n2 alone), so the implementations count pairs with
integer arithmetic and divide exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DensityError
from .graph import stats


class Partition:
    """Binary core-indicator vector; x[i] == 1 puts node i in the core."""

    __slots__ = ("x", "_hash")

    def __init__(self, x):
        arr = np.array(x, dtype=np.int8, copy=True).reshape(-1)
        if arr.size and not np.all((arr == 0) | (arr == 1)):
            raise ValueError("partition entries must be 0 or 1")
        arr.setflags(write=False)
        self.x = arr
        self._hash = None

    @classmethod
    def all_core(cls, n):
        return cls(np.ones(n, dtype=np.int8))

    @classmethod
    def all_periphery(cls, n):
        return cls(np.zeros(n, dtype=np.int8))

    @classmethod
    def from_core(cls, n, core_indices):
        x = np.zeros(n, dtype=np.int8)
        x[list(core_indices)] = 1
        return cls(x)

    @property
    def core_size(self):
        return int(self.x.sum())

    def core_indices(self):
        return np.flatnonzero(self.x == 1)

    def __len__(self):
        return self.x.size

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.x, other.x)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.x.tobytes())
        return self._hash

    def __repr__(self):
        return f"Partition(core={self.core_size}/{self.x.size})"


@dataclass(frozen=True)
class SweepCurve:
    """Objective values over nested prefix partitions; values[k] uses the
    first k nodes of the order as the core.  argmax_k is the smallest
    maximizing k."""

    values: np.ndarray
    argmax_k: int


def _as_indicator(g, partition):
    x = partition.x if isinstance(partition, Partition) else Partition(partition).x
    if x.size != g.n:
        raise ValueError(f"partition length {x.size} != node count {g.n}")
    return x


def _pair_hits(g, x):
    """(edges with at least one core endpoint, core size)."""
    eu, ev = g.edge_arrays()
    if eu.size:
        e_pp = int(np.count_nonzero((x[eu] == 0) & (x[ev] == 0)))
    else:
        e_pp = 0
    return g.num_edges - e_pp, int(x.sum())


def eval_max_count(g, partition):
    """Count of ordered adjacent pairs (i, j) with i or j in the core."""
    x = _as_indicator(g, partition)
    e_hit, _ = _pair_hits(g, x)
    return 2 * e_hit


def eval_unnormalized(g, partition):
    """Raw agreement count over ordered distinct pairs: present edges that
    touch the core plus missing edges inside the periphery."""
    x = _as_indicator(g, partition)
    st = stats(g)
    e_hit, s = _pair_hits(g, x)
    # missing pairs entirely inside the periphery
    periph_pairs = (g.n - s) * (g.n - s - 1) // 2
    m_hit = periph_pairs - (st.n1 - e_hit)
    return 2 * (e_hit + m_hit)


def _rescaled_numerator(n, n1, n2, e_hit, s):
    """eval_rescaled times n2, an exact integer."""
    p_hit = n * (n - 1) // 2 - (n - s) * (n - s - 1) // 2
    return 2 * ((n1 + n2) * e_hit - n1 * p_hit)


def eval_rescaled(g, partition):
    """Shifted objective sum((a_ij (1 + rho) - rho) max(x_i, x_j)) over
    ordered distinct pairs.  Zero at the all-core and all-periphery
    partitions; equals n1 * (eval_normalized - 2)."""
    x = _as_indicator(g, partition)
    st = stats(g)
    e_hit, s = _pair_hits(g, x)
    return _rescaled_numerator(g.n, st.n1, st.n2, e_hit, s) / st.n2


def eval_normalized(g, partition):
    """Density-normalized agreement: hit edges weighted by 1/n1, preserved
    missing edges by 1/n2.  Ranges over [0, 4]; equals 2 at both trivial
    partitions."""
    x = _as_indicator(g, partition)
    st = stats(g)
    if st.n1 == 0:
        raise DensityError("graph has no edges, normalized objective undefined")
    e_hit, s = _pair_hits(g, x)
    periph_pairs = (g.n - s) * (g.n - s - 1) // 2
    m_hit = periph_pairs - (st.n1 - e_hit)
    return 2 * e_hit / st.n1 + 2 * m_hit / st.n2


def _prefix_hit_counts(g, order):
    """Edges hit by each nested prefix core.  e_hits[k] counts edges with at
    least one endpoint among the first k nodes of the order."""
    order = np.asarray(order, dtype=np.int64)
    if order.size != g.n or np.any(np.bincount(order, minlength=g.n) != 1):
        raise ValueError("order must be a permutation of 0..n-1")
    in_core = np.zeros(g.n, dtype=bool)
    e_hits = np.zeros(g.n + 1, dtype=np.int64)
    hit = 0
    for k, v in enumerate(order, start=1):
        row = g.neighbors(v)
        if row.size:
            hit += int(np.count_nonzero(~in_core[row]))
        in_core[v] = True
        e_hits[k] = hit
    return e_hits


def sweep_prefix(g, order, objective="normalized"):
    """Evaluate nested prefix partitions of ``order`` (k = 0..n).

    ``objective`` selects "normalized" or "unnormalized".  Runs in
    O(n1 + n); argmax_k takes the smallest maximizing k.
    """
    st = stats(g)
    if objective == "normalized" and st.n1 == 0:
        raise DensityError("graph has no edges, normalized objective undefined")
    if objective not in ("normalized", "unnormalized"):
        raise ValueError(f"unknown objective {objective!r}")
    e_hits = _prefix_hit_counts(g, order)
    ks = np.arange(g.n + 1)
    periph_pairs = (g.n - ks) * (g.n - ks - 1) // 2
    m_hits = periph_pairs - (st.n1 - e_hits)
    if objective == "normalized":
        values = 2 * e_hits / st.n1 + 2 * m_hits / st.n2
    else:
        values = (2 * (e_hits + m_hits)).astype(np.float64)
    argmax_k = int(np.argmax(values))
    return SweepCurve(values=values, argmax_k=argmax_k)
