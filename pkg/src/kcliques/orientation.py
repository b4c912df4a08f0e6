"""Total vertex orders and the oriented (DAG) form of a graph."""

from dataclasses import dataclass

import numpy as np
from numba import njit

CRITERIA = ("degree", "degeneracy")


@dataclass
class Ranking:
    """rank[v] = position of v in the total order (a permutation of 0..n-1)."""

    rank: np.ndarray
    criterion: str
    degeneracy: int | None = None  # only set by the peeling criterion


class OrientedGraph:
    """DAG form of a Graph: every edge kept in its rank-ascending direction.

    Same CSR+COO layout as Graph but over out-edges only; d_max is the
    maximum out-degree, which bounds every induced sub-graph extracted
    downstream.
    """

    def __init__(self, n, m_dir, row_ptr, col, coo_src, d_max, ranking):
        self.n = int(n)
        self.m_dir = int(m_dir)
        self.row_ptr = row_ptr
        self.col = col
        self.coo_src = coo_src
        self.d_max = int(d_max)
        self.ranking = ranking

    @property
    def coo_dst(self):
        return self.col

    def out_degrees(self):
        return np.diff(self.row_ptr)

    def out_neighbors(self, v):
        return self.col[self.row_ptr[v] : self.row_ptr[v + 1]]


@njit(inline="always")
def _heap_push(heap, size, key):
    heap[size] = key
    i = size
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return size + 1


@njit(inline="always")
def _heap_pop(heap, size):
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        small = left
        right = left + 1
        if right < size and heap[right] < heap[left]:
            small = right
        if heap[i] <= heap[small]:
            break
        heap[i], heap[small] = heap[small], heap[i]
        i = small
    return size


@njit(cache=True)
def _peel(row_ptr, col, n):
    # lazy-deletion min-heap keyed by (residual degree << 32 | vertex), so
    # equal degrees pop in ascending vertex order; stale entries (degree no
    # longer current, or vertex already removed) are skipped on pop
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = row_ptr[v + 1] - row_ptr[v]
    heap = np.empty(n + row_ptr[n] + 1, dtype=np.uint64)
    size = 0
    for v in range(n):
        size = _heap_push(heap, size, (np.uint64(deg[v]) << np.uint64(32)) | np.uint64(v))
    removed = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int32)
    degeneracy = 0
    for pos in range(n):
        while True:
            key = heap[0]
            v = np.int64(key & np.uint64(0xFFFFFFFF))
            key_deg = np.int64(key >> np.uint64(32))
            size = _heap_pop(heap, size)
            if not removed[v] and key_deg == deg[v]:
                break
        removed[v] = True
        order[pos] = v
        if deg[v] > degeneracy:
            degeneracy = deg[v]
        for e in range(row_ptr[v], row_ptr[v + 1]):
            w = col[e]
            if not removed[w]:
                deg[w] -= 1
                size = _heap_push(heap, size, (np.uint64(deg[w]) << np.uint64(32)) | np.uint64(w))
    return order, degeneracy


def compute_rank(g, criterion):
    """Total vertex order under the chosen criterion.

    'degree' orders by ascending undirected degree; 'degeneracy' is the
    minimum-residual-degree peeling order (rank = removal position) and also
    reports the graph degeneracy. Ties break toward the smaller compact id
    in both cases.
    """
    if criterion == "degree":
        order = np.lexsort((np.arange(g.n), g.degrees()))
        rank = np.empty(g.n, dtype=np.int32)
        rank[order] = np.arange(g.n, dtype=np.int32)
        return Ranking(rank, "degree")
    if criterion == "degeneracy":
        if g.n == 0:
            return Ranking(np.empty(0, dtype=np.int32), "degeneracy", 0)
        order, degeneracy = _peel(g.row_ptr, g.col, g.n)
        rank = np.empty(g.n, dtype=np.int32)
        rank[order] = np.arange(g.n, dtype=np.int32)
        return Ranking(rank, "degeneracy", int(degeneracy))
    raise ValueError(f"unknown orientation criterion: {criterion!r}")


def orient(g, ranking):
    """Keep each edge in its rank-ascending direction and rebuild CSR+COO."""
    rank = ranking.rank
    if len(rank) != g.n:
        raise ValueError("ranking size does not match the graph")
    keep = rank[g.coo_src] < rank[g.col]
    src = g.coo_src[keep]
    dst = g.col[keep]
    # the filtered arrays stay grouped by src with ascending dst, both
    # inherited from the undirected CSR order
    counts = np.bincount(src, minlength=g.n)
    row_ptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(counts, out=row_ptr[1:])
    d_max = int(counts.max()) if g.n else 0
    return OrientedGraph(g.n, int(src.size), row_ptr, dst, src, d_max, ranking)
