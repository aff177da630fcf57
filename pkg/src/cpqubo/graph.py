"""Undirected simple graphs: container, file ingestion, pair statistics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DensityError, EmptyInputError, GraphFormatError, SelfLoopError


class Graph:
    """Immutable undirected simple graph with dense 0-based node ids.

    Edges are deduplicated unordered pairs (u, v) with u != v.  ``labels[i]``
    is the external identifier of node ``i``.  The constructor keeps the label
    order it is given; the file loaders fix a canonical (lexicographic) order
    before constructing, while programmatic builders may pass any order.
    """

    __slots__ = ("n", "labels", "_eu", "_ev", "_indptr", "_indices", "_stats")

    def __init__(self, n, edges, labels=None):
        n = int(n)
        if n < 0:
            raise ValueError("node count must be nonnegative")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(lab) for lab in labels)
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")

        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoopError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            pairs.add((u, v) if u < v else (v, u))

        self.n = n
        self.labels = labels
        if pairs:
            arr = np.array(sorted(pairs), dtype=np.int32)
            eu = np.ascontiguousarray(arr[:, 0])
            ev = np.ascontiguousarray(arr[:, 1])
        else:
            eu = np.empty(0, dtype=np.int32)
            ev = np.empty(0, dtype=np.int32)
        eu.setflags(write=False)
        ev.setflags(write=False)
        self._eu = eu
        self._ev = ev

        # symmetric CSR adjacency, neighbor lists sorted ascending
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        order = np.lexsort((dst, src))
        indices = np.ascontiguousarray(dst[order])
        counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices.setflags(write=False)
        indptr.setflags(write=False)
        self._indices = indices
        self._indptr = indptr
        self._stats = None

    @property
    def num_edges(self):
        return int(self._eu.size)

    @property
    def degrees(self):
        return np.diff(self._indptr)

    def edge_arrays(self):
        """Edge endpoints as two parallel arrays with eu < ev, sorted."""
        return self._eu, self._ev

    @property
    def edges(self):
        return [(int(u), int(v)) for u, v in zip(self._eu, self._ev)]

    def neighbors(self, i):
        return self._indices[self._indptr[i]:self._indptr[i + 1]]

    def adjacency_csr(self):
        return self._indptr, self._indices

    def has_edge(self, u, v):
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < row.size and row[k] == v)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels
                and np.array_equal(self._eu, other._eu)
                and np.array_equal(self._ev, other._ev))

    def __hash__(self):
        return hash((self.n, self.labels, self._eu.tobytes(), self._ev.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class GraphStats:
    """Pair counts of a graph: n1 present edges, n2 missing edges."""

    n1: int
    n2: int
    rho: Fraction
    degrees: np.ndarray


def stats(g):
    """Edge/non-edge counts and their exact ratio rho = n1/n2.

    Requires at least 2 nodes and at least one missing edge; rho is kept as
    an exact rational and should be converted to float only at use sites.
    """
    if g._stats is not None:
        return g._stats
    if g.n < 2:
        raise ValueError(f"graph has {g.n} node(s); need at least 2")
    total = g.n * (g.n - 1) // 2
    n1 = g.num_edges
    n2 = total - n1
    if n2 == 0:
        raise DensityError("complete graph: no missing edge, rho undefined")
    s = GraphStats(n1=n1, n2=n2, rho=Fraction(n1, n2), degrees=g.degrees)
    g._stats = s
    return s


def remove_isolated(g):
    """Drop degree-0 nodes.  Returns (induced subgraph, removed labels).

    Retained nodes keep their relative order.
    """
    deg = g.degrees
    keep = np.flatnonzero(deg > 0)
    if keep.size == g.n:
        return g, []
    removed = [g.labels[i] for i in np.flatnonzero(deg == 0)]
    remap = -np.ones(g.n, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    eu, ev = g.edge_arrays()
    edges = zip(remap[eu].tolist(), remap[ev].tolist())
    labels = [g.labels[i] for i in keep]
    return Graph(keep.size, edges, labels), removed


def load_graph(path, format="edgelist"):
    """Read a graph file.  ``format`` is "edgelist" or "matrixmarket".

    Node labels are sorted lexicographically to fix the internal id order
    (MatrixMarket ids are zero-padded so the file order is preserved).
    Directed duplicates are merged silently; self-loops are rejected.
    """
    path = Path(path)
    if format == "edgelist":
        return _load_edgelist(path)
    if format == "matrixmarket":
        return _load_matrixmarket(path)
    raise ValueError(f"unknown graph format {format!r}")


def _load_edgelist(path):
    pairs = []
    extra_cols = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("%"):
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise GraphFormatError(f"{path}:{lineno}: malformed edge line {line!r}")
            if len(tokens) > 2:
                extra_cols += 1
            u, v = tokens[0], tokens[1]
            if u == v:
                raise SelfLoopError(f"{path}:{lineno}: self-loop at node {u!r}")
            pairs.append((u, v))
    if not pairs:
        raise EmptyInputError(f"{path}: no edges found")
    if extra_cols:
        warnings.warn(
            f"{path}: ignored extra columns on {extra_cols} line(s)",
            stacklevel=3,
        )
    labels = sorted({lab for pair in pairs for lab in pair})
    index = {lab: i for i, lab in enumerate(labels)}
    edges = ((index[u], index[v]) for u, v in pairs)
    return Graph(len(labels), edges, labels)


def _load_matrixmarket(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    if not lines:
        raise EmptyInputError(f"{path}: empty file")

    header = lines[0].split()
    if (len(header) != 5 or not header[0].lower().startswith("%%matrixmarket")
            or header[1].lower() != "matrix" or header[2].lower() != "coordinate"):
        raise GraphFormatError(f"{path}:1: expected a MatrixMarket coordinate header")
    field = header[3].lower()
    symmetry = header[4].lower()
    if field not in ("pattern", "real", "integer"):
        raise GraphFormatError(f"{path}:1: unsupported field {field!r}")
    if symmetry not in ("symmetric", "general"):
        raise GraphFormatError(f"{path}:1: unsupported symmetry {symmetry!r}")

    dims = None
    entries = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if dims is None:
            if len(tokens) != 3:
                raise GraphFormatError(f"{path}:{lineno}: expected 'rows cols nnz'")
            try:
                dims = tuple(int(t) for t in tokens)
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: non-integer size line") from None
            if dims[0] != dims[1]:
                raise GraphFormatError(f"{path}:{lineno}: adjacency matrix must be square")
            if dims[0] < 1:
                raise EmptyInputError(f"{path}:{lineno}: empty matrix")
            continue
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except (ValueError, IndexError):
            raise GraphFormatError(f"{path}:{lineno}: malformed entry {line!r}") from None
        if not (1 <= i <= dims[0] and 1 <= j <= dims[0]):
            raise GraphFormatError(f"{path}:{lineno}: index out of range")
        if i == j:
            raise SelfLoopError(f"{path}:{lineno}: self-loop at node {i}")
        entries.append((i - 1, j - 1))

    if dims is None:
        raise EmptyInputError(f"{path}: no size line found")
    if len(entries) != dims[2]:
        raise GraphFormatError(
            f"{path}: entry count {len(entries)} does not match declared nnz {dims[2]}")

    n = dims[0]
    width = len(str(n))
    labels = [f"{i:0{width}d}" for i in range(1, n + 1)]
    return Graph(n, entries, labels)
