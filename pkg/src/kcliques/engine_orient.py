"""t-clique counting over a directed bit-matrix sub-graph.

Depth-first expansion in rank-ascending direction: every clique is reached
along exactly one chain, so plain unit/popcount accumulation is exact. The
traversal is iterative; a frame is one candidate row plus a word/bit
cursor, so a worker reuses the same stack for every task.
"""

import numpy as np
from numba import njit

from ._bitops import (
    U0,
    U1,
    acc_add,
    fill_all_ones,
    popcount,
    trailing_zeros,
    value128,
)


class NodeCounter:
    """Mutable visited-node tally, shared across engine calls."""

    __slots__ = ("visited",)

    def __init__(self):
        self.visited = 0


@njit(cache=True, nogil=True)
def count_into(rows, wpr, d, t, stk, cw, cb, out):
    # out: uint64[4] = count lo, count hi, visited nodes, overflow flag.
    # Frame s has chosen s vertices; expanding v at frame t-2 makes the
    # popcounted children the t-th vertices, so only |I'| is accumulated
    # there and no deeper frame exists.
    if t <= 1:
        if t == 0:
            acc_add(out, U1)
        elif t == 1:
            acc_add(out, np.uint64(d))
        return
    if d == 0:
        return
    fill_all_ones(stk[0], d, wpr)
    last = t - 2
    s = 0
    cw[0] = 0
    cb[0] = stk[0, 0]
    while s >= 0:
        b = cb[s]
        if b == U0:
            w = cw[s] + 1
            while w < wpr and stk[s, w] == U0:
                w += 1
            if w >= wpr:
                s -= 1
                continue
            cw[s] = w
            b = stk[s, w]
        v = (cw[s] << 6) + np.int64(trailing_zeros(b))
        cb[s] = b & (b - U1)
        out[2] += U1
        if s == last:
            c = U0
            for w in range(wpr):
                c += popcount(stk[s, w] & rows[v, w])
            acc_add(out, c)
        else:
            nz = U0
            for w in range(wpr):
                x = stk[s, w] & rows[v, w]
                stk[s + 1, w] = x
                nz |= x
            if nz != U0:
                s += 1
                cw[s] = 0
                cb[s] = stk[s, 0]


def stack_depth(t, d):
    """Frames the traversal can touch for target t over d locals."""
    if t < 2:
        return 1
    # expansion writes the child row before testing it for emptiness, so the
    # deepest reachable frame (min(t - 2, d - 1)) needs a row above it
    return max(1, min(t - 1, d + 1))


def count_tcliques_orient(S, t, stats=None):
    """Number of t-cliques in the directed BitGraph S.

    t=0 counts the empty clique (1) and t=1 the locals themselves; both
    keep root-set composition working for every k. ``stats.visited`` is
    advanced by the number of tree nodes expanded.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if not S.directed:
        raise ValueError("the orientation engine needs a directed sub-graph")
    d = S.local_count
    wpr_cap = max(S.words.shape[1], 1)
    depth = stack_depth(t, d)
    stk = np.zeros((depth, wpr_cap), dtype=np.uint64)
    cw = np.zeros(depth, dtype=np.int64)
    cb = np.zeros(depth, dtype=np.uint64)
    out = np.zeros(4, dtype=np.uint64)
    count_into(S.words, S.words_per_row, d, t, stk, cw, cb, out)
    if out[3]:
        raise OverflowError("clique count exceeded the 128-bit accumulator")
    if stats is not None:
        stats.visited += int(out[2])
    return value128(out[0], out[1])
