"""Classical maximizers for the partition QUBOs.

solve_exhaustive enumerates every binary vector (n <= 24) with exact integer
scoring, so it doubles as the ground-truth oracle.  solve_anneal is a
multi-restart simulated annealer; each read draws its randomness from an
independent substream of the master seed, which makes results reproducible
and independent of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .objective import Partition
from .qubo import quad_form, value_numerator

EXHAUSTIVE_MAX_N = 24
_CHUNK_BITS = 18

# SeedSequence spawn-key namespaces: (0, read) for reads, (1,) for the
# temperature calibration probe.
_READ_KEY = 0
_CALIB_KEY = 1


class Sample(NamedTuple):
    partition: Partition
    value: float
    count: int


@dataclass(frozen=True)
class SampleSet:
    """Aggregated annealer output, sorted by value descending (ties: smaller
    core first, then lexicographically smaller vector)."""

    samples: tuple
    seed: int
    num_reads: int
    best: int = 0

    @property
    def best_sample(self):
        return self.samples[self.best]


@dataclass(frozen=True)
class AnnealSchedule:
    num_reads: int
    sweeps: int
    beta_start: float
    beta_end: float
    seed: int

    def __post_init__(self):
        if self.num_reads < 1:
            raise ValueError("num_reads must be >= 1")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if not (0.0 < self.beta_start < self.beta_end):
            raise ValueError("need 0 < beta_start < beta_end")


def _read_rng(seed, key):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def _csr(q):
    indptr, indices = q.graph.adjacency_csr()
    return indptr.astype(np.int64), indices.astype(np.int32)


def default_schedule(q, num_reads=100, seed=0, sweeps=None):
    """Geometric temperature ladder spanning 0.1/d to 50/d inverse
    temperature, where d is the mean |delta| of 100 random single-bit flips
    at a random state."""
    n = q.n
    if sweeps is None:
        sweeps = 1000 * max(1, n // 100)
    rng = _read_rng(seed, (_CALIB_KEY,))
    x = (rng.random(n) < 0.5).astype(np.int8)
    indptr, indices = _csr(q)
    cn = _kernels.init_core_counts(x, indptr, indices)
    s = int(x.sum())
    rho_f = q.n1 / q.n2
    dense = q.kind == "dense_q"
    probes = rng.integers(0, n, size=100)
    total = 0.0
    for i in probes:
        total += abs(_kernels.flip_delta(int(i), x, cn, s, q.diag, rho_f, dense))
    typical = total / probes.size
    if typical == 0.0:
        typical = 1.0
    return AnnealSchedule(num_reads=num_reads, sweeps=int(sweeps),
                          beta_start=0.1 / typical, beta_end=50.0 / typical,
                          seed=seed)


def _beta_ladder(sched):
    if sched.sweeps == 1:
        return np.array([sched.beta_start])
    ratio = sched.beta_end / sched.beta_start
    t = np.arange(sched.sweeps) / (sched.sweeps - 1)
    return sched.beta_start * ratio ** t


def _sort_key(partition, num):
    return (-num, partition.core_size, partition.x.tobytes())


def solve_anneal(q, sched):
    """Multi-restart Metropolis annealing followed by greedy 1-flip ascent.

    Returns a SampleSet whose multiplicities sum to sched.num_reads.  Bit
    deltas are maintained incrementally; each read's final value is
    recomputed from scratch.
    """
    n = q.n
    indptr, indices = _csr(q)
    rho_f = q.n1 / q.n2
    dense = q.kind == "dense_q"
    betas = _beta_ladder(sched)
    eps = 0.5 / q.n2
    found = {}
    for read in range(sched.num_reads):
        rng = _read_rng(sched.seed, (_READ_KEY, read))
        x = (rng.random(n) < 0.5).astype(np.int8)
        order = np.argsort(rng.random((sched.sweeps, n)), axis=1).astype(np.int32)
        unif = rng.random((sched.sweeps, n))
        cn = _kernels.init_core_counts(x, indptr, indices)
        _kernels.anneal_sweeps(x, cn, indptr, indices, q.diag, rho_f, dense,
                               order, unif, betas)
        _kernels.greedy_sweeps(x, cn, indptr, indices, q.diag, rho_f, dense, eps)
        part = Partition(x)
        key = part.x.tobytes()
        if key in found:
            found[key][2] += 1
        else:
            found[key] = [part, value_numerator(q, part), 1]
    ordered = sorted(found.values(), key=lambda rec: _sort_key(rec[0], rec[1]))
    samples = tuple(Sample(part, num / q.n2, count) for part, num, count in ordered)
    return SampleSet(samples=samples, seed=sched.seed, num_reads=sched.num_reads)


def greedy_ascent(q, partition):
    """Flip the best strictly-improving bit until none remains.

    Returns (partition, value) at a 1-flip-local maximum; ties go to the
    smallest bit index.
    """
    indptr, indices = _csr(q)
    x = np.array(partition.x, dtype=np.int8)
    cn = _kernels.init_core_counts(x, indptr, indices)
    rho_f = q.n1 / q.n2
    _kernels.greedy_sweeps(x, cn, indptr, indices, q.diag, rho_f,
                           q.kind == "dense_q", 0.5 / q.n2)
    part = Partition(x)
    return part, quad_form(q, part)


def solve_exhaustive(q):
    """Scan all 2^n binary vectors with exact integer scoring.

    Returns (partition, value) for the maximum; ties break to the smallest
    core, then the lexicographically smallest vector.
    """
    n = q.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive search supports n <= {EXHAUSTIVE_MAX_N}, got {n}")
    n1, n2 = q.n1, q.n2
    total_pairs = n * (n - 1) // 2
    eu, ev = q.graph.edge_arrays()
    qhat = q.kind == "sparse_qhat"
    shifts = (n - 1 - np.arange(n)).astype(np.uint32)

    best = None  # (-num, s, mask)
    for start in range(0, 1 << n, 1 << _CHUNK_BITS):
        stop = min(start + (1 << _CHUNK_BITS), 1 << n)
        masks = np.arange(start, stop, dtype=np.uint32)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.int64)
        s = bits.sum(axis=1)
        if eu.size:
            periph = 1 - bits
            e_pp = np.einsum("ij,ij->i", periph[:, eu], periph[:, ev])
        else:
            e_pp = np.zeros(masks.size, dtype=np.int64)
        e_hit = n1 - e_pp
        p_hit = total_pairs - (n - s) * (n - s - 1) // 2
        num = 2 * ((n1 + n2) * e_hit - n1 * p_hit)
        if qhat:
            num -= n1 * s * (s - 1)
        top = num.max()
        cand = np.flatnonzero(num == top)
        smin = s[cand].min()
        first = cand[s[cand] == smin][0]
        entry = (-int(top), int(smin), int(masks[first]))
        if best is None or entry < best:
            best = entry
    neg_num, _, mask = best
    x = ((mask >> shifts) & 1).astype(np.int8)
    return Partition(x), -neg_num / n2
