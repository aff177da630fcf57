"""Two-block stochastic benchmark graphs with a planted core.

The first m nodes form the planted core.  Every unordered pair (i, j) with
i < j is kept independently with probability p1 (both in the core), p2 (one
endpoint in the core) or p3 (both outside).  Pairs are visited in row-major
order with one draw each from a PCG64 stream, so a spec is a complete recipe
for its graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .objective import Partition


@dataclass(frozen=True)
class SbmSpec:
    n: int
    m: int
    p1: float
    p2: float
    p3: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 nodes")
        if not (0 <= self.m <= self.n):
            raise ValueError(f"core size {self.m} outside 0..{self.n}")
        for name in ("p1", "p2", "p3"):
            p = getattr(self, name)
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"{name}={p} is not a probability")


def node_labels(n):
    """Decimal labels padded so lexicographic order equals numeric order."""
    width = len(str(n - 1))
    return [f"{i:0{width}d}" for i in range(n)]


def sample_sbm(spec):
    """Draw one graph from the block model, a pure function of its SbmSpec."""
    n, m = spec.n, spec.m
    iu, jv = np.triu_indices(n, k=1)
    prob = np.where(jv < m, spec.p1, np.where(iu < m, spec.p2, spec.p3))
    draws = np.random.default_rng(spec.seed).random(iu.size)
    keep = draws < prob
    edges = zip(iu[keep].tolist(), jv[keep].tolist())
    return Graph(n, edges, node_labels(n))


def planted_partition(spec):
    """The indicator of the planted core (first m nodes)."""
    x = np.zeros(spec.n, dtype=np.int8)
    x[:spec.m] = 1
    return Partition(x)
