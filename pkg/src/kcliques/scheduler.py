"""Task distribution over a fixed worker pool with per-worker scratch.

Tasks are vertices (k-1 target inside each out-neighborhood) or oriented
edges (k-2 target inside each pair's common out-neighborhood). Workers pull
task indices from one shared cursor with an atomic fetch-and-increment,
grain 1, and accumulate into private 128-bit partials; the reduction after
the join is exact integer addition, so the total is identical for any
worker count and any pull interleaving.
"""

import threading
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ._bitops import W, atomic_fetch_add, value128
from .bitgraph import BitGraph, _fill_adjacency, _locals_edge, _locals_vertex
from .engine_orient import count_into as _orient_into
from .engine_orient import stack_depth as _orient_depth
from .engine_pivot import BinomialTable
from .engine_pivot import count_all_into as _pivot_all_into
from .engine_pivot import count_into as _pivot_into
from .orientation import CRITERIA, compute_rank, orient

ALGORITHMS = ("orient", "pivot")
SCHEMES = ("vertex", "edge")


@dataclass
class RunConfig:
    k: int
    algorithm: str = "orient"
    scheme: str = "vertex"
    criterion: str = "degree"
    workers: int = 1
    all_k: bool = False


@dataclass
class LoadStats:
    """Per-worker visited-node summary; normalized load = visits / mean."""

    per_worker: list
    min: int
    max: int
    mean: float
    normalized_max: float
    total: int


def load_stats(counters):
    counters = [int(c) for c in counters]
    total = sum(counters)
    mean = total / len(counters) if counters else 0.0
    normalized_max = max(counters) / mean if mean > 0 else 1.0
    return LoadStats(
        per_worker=counters,
        min=min(counters, default=0),
        max=max(counters, default=0),
        mean=mean,
        normalized_max=normalized_max,
        total=total,
    )


@dataclass
class CountReport:
    n: int
    m: int
    d_max_undirected: int
    d_max: int
    config: RunConfig
    count: int
    orient_ms: float
    count_ms: float
    load: LoadStats
    scratch_bytes: int
    counts: dict | None = None  # all-k mode only
    degeneracy: int | None = None
    load_ms: float = 0.0  # filled by callers that time their own input stage

    @property
    def total_ms(self):
        return self.orient_ms + self.count_ms


def make_tasks(og, scheme):
    """Vertex tasks (roots with out-degree > 0) or one task per oriented edge."""
    if scheme == "vertex":
        return np.flatnonzero(og.out_degrees() > 0).astype(np.int64)
    if scheme == "edge":
        return np.arange(og.m_dir, dtype=np.int64)
    raise ValueError(f"unknown scheme: {scheme!r}")


class WorkerScratch:
    """Per-worker buffers sized once from d_max, reused for every task."""

    def __init__(self, d_max, t, algorithm, all_k=False):
        cap = max(int(d_max), 1)
        wpr = (cap + W - 1) // W
        self.bitgraph = BitGraph(cap)
        if algorithm == "pivot":
            depth = cap + 1
        else:
            depth = _orient_depth(t, cap)
        self.stk_cand = np.zeros((depth, wpr), dtype=np.uint64)
        if algorithm == "pivot":
            self.stk_pruned = np.zeros((depth, wpr), dtype=np.uint64)
        else:
            self.stk_pruned = np.zeros((1, wpr), dtype=np.uint64)
        self.piv = np.zeros(depth, dtype=np.int64)
        self.npv = np.zeros(depth, dtype=np.int64)
        self.cw = np.zeros(depth, dtype=np.int64)
        self.cb = np.zeros(depth, dtype=np.uint64)
        self.out = np.zeros(4, dtype=np.uint64)
        slots = cap + 2 if all_k else 0
        self.slot_lo = np.zeros(slots, dtype=np.uint64)
        self.slot_hi = np.zeros(slots, dtype=np.uint64)
        self.meta = np.zeros(2, dtype=np.uint64)

    @property
    def nbytes(self):
        return (
            self.bitgraph.nbytes
            + self.stk_cand.nbytes
            + self.stk_pruned.nbytes
            + self.piv.nbytes
            + self.npv.nbytes
            + self.cw.nbytes
            + self.cb.nbytes
            + self.out.nbytes
            + self.slot_lo.nbytes
            + self.slot_hi.nbytes
            + self.meta.nbytes
        )


@njit(cache=True, nogil=True)
def _worker_loop(row_ptr, col, rank, coo_src, tasks, edge_scheme, pivot_algo, t,
                 cursor, l2g, words, stk_cand, stk_pruned, piv, npv, cw, cb,
                 blo, bhi, bbig, out):
    n_tasks = tasks.shape[0]
    while True:
        i = atomic_fetch_add(cursor, 1)
        if i >= n_tasks:
            break
        task = tasks[i]
        if edge_scheme:
            d = _locals_edge(row_ptr, col, coo_src[task], col[task], l2g)
        else:
            d = _locals_vertex(row_ptr, col, task, l2g)
        if d < t:
            continue  # too few locals to host a t-clique
        wpr = (d + 63) >> 6
        _fill_adjacency(row_ptr, col, rank, l2g, d, words, wpr, not pivot_algo)
        if pivot_algo:
            _pivot_into(words, wpr, d, t, stk_cand, stk_pruned, piv, npv,
                        cw, cb, blo, bhi, bbig, out)
        else:
            _orient_into(words, wpr, d, t, stk_cand, cw, cb, out)


@njit(cache=True, nogil=True)
def _worker_loop_all(row_ptr, col, rank, coo_src, tasks, edge_scheme,
                     cursor, l2g, words, stk_cand, stk_pruned, piv, npv, cw, cb,
                     blo, bhi, bbig, slot_lo, slot_hi, meta):
    n_tasks = tasks.shape[0]
    while True:
        i = atomic_fetch_add(cursor, 1)
        if i >= n_tasks:
            break
        task = tasks[i]
        if edge_scheme:
            d = _locals_edge(row_ptr, col, coo_src[task], col[task], l2g)
        else:
            d = _locals_vertex(row_ptr, col, task, l2g)
        if d == 0:
            continue
        wpr = (d + 63) >> 6
        _fill_adjacency(row_ptr, col, rank, l2g, d, words, wpr, False)
        _pivot_all_into(words, wpr, d, stk_cand, stk_pruned, piv, npv,
                        cw, cb, blo, bhi, bbig, slot_lo, slot_hi, meta)


def _validate(cfg):
    if not isinstance(cfg.k, int) or cfg.k < 1:
        raise ValueError("k must be an integer >= 1")
    if cfg.algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm: {cfg.algorithm!r}")
    if cfg.scheme not in SCHEMES:
        raise ValueError(f"unknown scheme: {cfg.scheme!r}")
    if cfg.criterion not in CRITERIA:
        raise ValueError(f"unknown orientation criterion: {cfg.criterion!r}")
    if cfg.workers < 1:
        raise ValueError("workers must be >= 1")
    if cfg.all_k and cfg.algorithm != "pivot":
        raise ValueError("all-k reporting requires the pivot algorithm")


def _dummy_binom():
    return (
        np.zeros((1, 1), dtype=np.uint64),
        np.zeros((1, 1), dtype=np.uint64),
        np.zeros((1, 1), dtype=np.uint8),
    )


def _run_tasks(og, cfg):
    t = cfg.k - 1 if cfg.scheme == "vertex" else cfg.k - 2
    tasks = make_tasks(og, cfg.scheme)
    pivot = cfg.algorithm == "pivot"
    edge = cfg.scheme == "edge"
    if pivot:
        table = BinomialTable(og.d_max + 1)
        blo, bhi, bbig = table.lo, table.hi, table.too_big
    else:
        blo, bhi, bbig = _dummy_binom()
    scratch = [WorkerScratch(og.d_max, t, cfg.algorithm) for _ in range(cfg.workers)]
    rank = og.ranking.rank

    def args(sc, cur):
        return (
            og.row_ptr, og.col, rank, og.coo_src, tasks, edge, pivot, t,
            cur, sc.bitgraph.local_to_global, sc.bitgraph.words,
            sc.stk_cand, sc.stk_pruned, sc.piv, sc.npv, sc.cw, sc.cb,
            blo, bhi, bbig, sc.out,
        )

    # compile before the pool starts: a cursor past the end returns at once
    _worker_loop(*args(scratch[0], np.array([len(tasks)], dtype=np.int64)))
    cursor = np.zeros(1, dtype=np.int64)
    threads = [
        threading.Thread(target=_worker_loop, args=args(sc, cursor))
        for sc in scratch
    ]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    if any(int(sc.out[3]) for sc in scratch):
        raise OverflowError("k-clique count exceeded the 128-bit accumulator")
    count = sum(value128(sc.out[0], sc.out[1]) for sc in scratch)
    visits = [int(sc.out[2]) for sc in scratch]
    scratch_bytes = sum(sc.nbytes for sc in scratch)
    return count, visits, scratch_bytes


def _run_all_k(og, cfg, n, m):
    tasks = make_tasks(og, cfg.scheme)
    edge = cfg.scheme == "edge"
    table = BinomialTable(og.d_max + 1)
    blo, bhi, bbig = table.lo, table.hi, table.too_big
    scratch = [
        WorkerScratch(og.d_max, 0, "pivot", all_k=True) for _ in range(cfg.workers)
    ]
    rank = og.ranking.rank

    def args(sc, cur):
        return (
            og.row_ptr, og.col, rank, og.coo_src, tasks, edge,
            cur, sc.bitgraph.local_to_global, sc.bitgraph.words,
            sc.stk_cand, sc.stk_pruned, sc.piv, sc.npv, sc.cw, sc.cb,
            blo, bhi, bbig, sc.slot_lo, sc.slot_hi, sc.meta,
        )

    _worker_loop_all(*args(scratch[0], np.array([len(tasks)], dtype=np.int64)))
    cursor = np.zeros(1, dtype=np.int64)
    threads = [
        threading.Thread(target=_worker_loop_all, args=args(sc, cursor))
        for sc in scratch
    ]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    if any(int(sc.meta[1]) for sc in scratch):
        raise OverflowError("k-clique count exceeded the 128-bit accumulator")
    offset = 1 if cfg.scheme == "vertex" else 2  # slot t counts (t+offset)-cliques
    counts = {1: n, 2: m}
    n_slots = scratch[0].slot_lo.shape[0]
    for slot in range(n_slots):
        k = slot + offset
        if k < 3:
            continue
        total = sum(value128(sc.slot_lo[slot], sc.slot_hi[slot]) for sc in scratch)
        if total:
            counts[k] = total
    visits = [int(sc.meta[0]) for sc in scratch]
    scratch_bytes = sum(sc.nbytes for sc in scratch)
    return counts, visits, scratch_bytes


def run_count(g, cfg):
    """Count k-cliques of g under cfg and return a CountReport.

    Orientation (rank + DAG rebuild) is timed separately from counting;
    k=1 and k=2 are answered directly from n and m.
    """
    _validate(cfg)
    t0 = time.perf_counter()
    ranking = compute_rank(g, cfg.criterion)
    og = orient(g, ranking)
    orient_ms = (time.perf_counter() - t0) * 1000.0

    t1 = time.perf_counter()
    counts = None
    if cfg.all_k:
        counts, visits, scratch_bytes = _run_all_k(og, cfg, g.n, g.m)
        count = counts.get(cfg.k, 0)
    elif cfg.k == 1:
        count = g.n
        visits = [0] * cfg.workers
        scratch_bytes = 0
    elif cfg.k == 2:
        count = g.m
        visits = [0] * cfg.workers
        scratch_bytes = 0
    else:
        count, visits, scratch_bytes = _run_tasks(og, cfg)
    count_ms = (time.perf_counter() - t1) * 1000.0

    return CountReport(
        n=g.n,
        m=g.m,
        d_max_undirected=g.max_degree(),
        d_max=og.d_max,
        config=cfg,
        count=count,
        counts=counts,
        orient_ms=orient_ms,
        count_ms=count_ms,
        load=load_stats(visits),
        scratch_bytes=scratch_bytes,
        degeneracy=ranking.degeneracy,
    )
