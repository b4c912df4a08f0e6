"""Bit-matrix induced sub-graphs over a task's local vertex set.

A task roots the search at one vertex (locals = its out-neighbors) or at
one oriented edge (locals = the endpoints' common out-neighbors). The
induced adjacency is materialized once as a bit matrix over local indices;
every later intersection is then word-wise AND plus popcount.
"""

import numpy as np
from numba import njit

from ._bitops import U0, U1, W, csr_contains


class BitGraph:
    """Adjacency over up to ``capacity`` locals, one 64-bit-word row slice each.

    Bit j of row i means local j is adjacent to local i. The buffer is
    reused across tasks: only rows 0..local_count-1 and words
    0..words_per_row-1 are meaningful after an extraction; anything above is
    stale on purpose.
    """

    def __init__(self, capacity):
        capacity = max(int(capacity), 0)
        wpr_cap = (capacity + W - 1) // W
        self.capacity = capacity
        self.words = np.zeros((capacity, wpr_cap), dtype=np.uint64)
        self.local_to_global = np.empty(capacity, dtype=np.int64)
        self.local_count = 0
        self.words_per_row = 0
        self.directed = True

    def row_set(self, i):
        """Local indices adjacent to local i, read off the bit row."""
        out = set()
        for w in range(self.words_per_row):
            bits = int(self.words[i, w])
            while bits:
                low = bits & -bits
                out.add(w * W + low.bit_length() - 1)
                bits ^= low
        return out

    def matrix(self):
        """Dense boolean adjacency over the active locals."""
        d = self.local_count
        mat = np.zeros((d, d), dtype=bool)
        for i in range(d):
            for j in self.row_set(i):
                mat[i, j] = True
        return mat

    @property
    def nbytes(self):
        return self.words.nbytes + self.local_to_global.nbytes


@njit(cache=True, nogil=True)
def _locals_vertex(row_ptr, col, v, l2g):
    lo = row_ptr[v]
    d = row_ptr[v + 1] - lo
    for i in range(d):
        l2g[i] = col[lo + i]
    return d


@njit(cache=True, nogil=True)
def _locals_edge(row_ptr, col, u, v, l2g):
    # intersection of two ascending CSR slices
    a, a_end = row_ptr[u], row_ptr[u + 1]
    b, b_end = row_ptr[v], row_ptr[v + 1]
    d = 0
    while a < a_end and b < b_end:
        x = col[a]
        y = col[b]
        if x == y:
            l2g[d] = x
            d += 1
            a += 1
            b += 1
        elif x < y:
            a += 1
        else:
            b += 1
    return d


@njit(cache=True, nogil=True)
def _fill_adjacency(row_ptr, col, rank, l2g, d, words, wpr, directed):
    # One directed lookup decides each unordered local pair: between two
    # locals only the rank-ascending arc can exist, so membership is a
    # single binary search in that endpoint's out-slice.
    for i in range(d):
        for w in range(wpr):
            words[i, w] = U0
    for i in range(d):
        gi = l2g[i]
        for j in range(i + 1, d):
            gj = l2g[j]
            if rank[gi] < rank[gj]:
                if csr_contains(col, row_ptr[gi], row_ptr[gi + 1], gj):
                    words[i, j >> 6] |= U1 << np.uint64(j & 63)
                    if not directed:
                        words[j, i >> 6] |= U1 << np.uint64(i & 63)
            else:
                if csr_contains(col, row_ptr[gj], row_ptr[gj + 1], gi):
                    words[j, i >> 6] |= U1 << np.uint64(i & 63)
                    if not directed:
                        words[i, j >> 6] |= U1 << np.uint64(j & 63)
    return d


def _finish(S, og, d, directed):
    S.local_count = int(d)
    S.words_per_row = (int(d) + W - 1) // W
    S.directed = bool(directed)
    _fill_adjacency(
        og.row_ptr, og.col, og.ranking.rank,
        S.local_to_global, d, S.words, S.words_per_row, directed,
    )
    return S


def extract_vertex_induced(og, v, directed=True, out=None):
    """Induced sub-graph on the out-neighbors of v.

    directed=True keeps only the rank-ascending arc of each present pair;
    directed=False sets both bits. Locals are the out-neighbors in ascending
    compact-id order. ``out`` reuses a scratch BitGraph instead of allocating.
    """
    d = int(og.row_ptr[v + 1] - og.row_ptr[v])
    S = out if out is not None else BitGraph(d)
    if d > S.capacity:
        raise ValueError("scratch BitGraph too small for this vertex")
    _locals_vertex(og.row_ptr, og.col, v, S.local_to_global)
    return _finish(S, og, d, directed)


def extract_edge_induced(og, e, directed=True, out=None):
    """Induced sub-graph on the common out-neighbors of oriented edge e."""
    u = int(og.coo_src[e])
    v = int(og.col[e])
    bound = min(
        int(og.row_ptr[u + 1] - og.row_ptr[u]),
        int(og.row_ptr[v + 1] - og.row_ptr[v]),
    )
    S = out if out is not None else BitGraph(bound)
    if bound > S.capacity:
        raise ValueError("scratch BitGraph too small for this edge")
    d = _locals_edge(og.row_ptr, og.col, u, v, S.local_to_global)
    return _finish(S, og, d, directed)


def row_and(a, b):
    """Word-wise AND of two equal-width bit rows."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise ValueError("bit rows differ in width")
    return a & b


def popcount(a):
    """Total set bits in a bit row."""
    return int(np.bitwise_count(np.asarray(a, dtype=np.uint64)).sum())
