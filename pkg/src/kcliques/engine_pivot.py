"""t-clique counting by pivoting over an undirected bit-matrix sub-graph.

At each node the candidate covering the most other candidates becomes the
pivot; branching is restricted to the pivot and the candidates it does not
cover, and complete paths contribute binomial terms C(pivots on path,
path length - t) instead of unit counts. Far fewer tree nodes than plain
expansion on dense sub-graphs, at the cost of undirected adjacency and a
deeper stack.
"""

import math

import numpy as np
from numba import njit

from ._bitops import (
    U0,
    U1,
    acc_add,
    acc_add128,
    fill_all_ones,
    popcount,
    slot_add128,
    trailing_zeros,
    value128,
)

_LIMIT_128 = 1 << 128
_MASK_64 = (1 << 64) - 1


def binomial(n, r):
    """C(n, r) as an exact integer; 0 outside 0 <= r <= n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


class BinomialTable:
    """C(n, r) for 0 <= r <= n <= n_max as (lo, hi) 64-bit word pairs.

    Entries that do not fit in 128 bits are flagged instead of stored;
    touching a flagged entry during a count raises rather than wrapping.
    """

    def __init__(self, n_max):
        n_max = int(n_max)
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.n_max = n_max
        size = n_max + 1
        self.lo = np.zeros((size, size), dtype=np.uint64)
        self.hi = np.zeros((size, size), dtype=np.uint64)
        self.too_big = np.zeros((size, size), dtype=np.uint8)
        for n in range(size):
            c = 1  # running C(n, r), advanced multiplicatively
            for r in range(n + 1):
                if c >= _LIMIT_128:
                    self.too_big[n, r] = 1
                else:
                    self.lo[n, r] = c & _MASK_64
                    self.hi[n, r] = c >> 64
                c = c * (n - r) // (r + 1)

    def value(self, n, r):
        """Exact C(n, r); 0 outside 0 <= r <= n; error past the table."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if n > self.n_max:
            raise OverflowError(
                f"binomial table holds n <= {self.n_max}, got {n}"
            )
        if r < 0 or r > n:
            return 0
        if self.too_big[n, r]:
            raise OverflowError("binomial value exceeds 128 bits")
        return value128(self.lo[n, r], self.hi[n, r])


@njit(cache=True, nogil=True)
def _select_pivot(rows, wpr, cand, pruned):
    # argmax of |cand & row(v)| over v in cand, first (lowest id) wins ties;
    # writes cand minus the winner's row into pruned
    best = -1
    best_cov = -1
    for w0 in range(wpr):
        b = cand[w0]
        while b != U0:
            v = (w0 << 6) + np.int64(trailing_zeros(b))
            b &= b - U1
            cov = 0
            for w in range(wpr):
                cov += np.int64(popcount(cand[w] & rows[v, w]))
            if cov > best_cov:
                best_cov = cov
                best = v
    for w in range(wpr):
        pruned[w] = cand[w] & ~rows[best, w]
    return best


def find_pivot(S, cand):
    """Pivot local id for candidate row ``cand``, plus cand minus its row."""
    cand = np.ascontiguousarray(cand, dtype=np.uint64)
    wpr = S.words_per_row
    if cand.shape[0] < wpr:
        raise ValueError("candidate row narrower than the sub-graph")
    if not any(int(w) for w in cand[:wpr]):
        raise ValueError("candidate set is empty")
    pruned = np.zeros_like(cand)
    p = _select_pivot(S.words, wpr, cand, pruned)
    return int(p), pruned


@njit(cache=True, nogil=True)
def count_into(rows, wpr, d, t, stk_cand, stk_pruned, piv, npv, cw, cb,
               blo, bhi, bbig, out):
    # out: uint64[4] = count lo, count hi, visited nodes, overflow flag.
    # Frame s has chosen s vertices; expanding v makes the path length s+1.
    # A branch dies once (s+1) - t outruns its pivot count (the deficit can
    # only grow), and an empty child set contributes C(pivots, (s+1) - t).
    if t <= 1:
        if t == 0:
            acc_add(out, U1)
        elif t == 1:
            acc_add(out, np.uint64(d))
        return
    if d == 0:
        return
    fill_all_ones(stk_cand[0], d, wpr)
    piv[0] = _select_pivot(rows, wpr, stk_cand[0], stk_pruned[0])
    npv[0] = 0
    s = 0
    cw[0] = 0
    cb[0] = stk_pruned[0, 0]
    while s >= 0:
        b = cb[s]
        if b == U0:
            w = cw[s] + 1
            while w < wpr and stk_pruned[s, w] == U0:
                w += 1
            if w >= wpr:
                s -= 1
                continue
            cw[s] = w
            b = stk_pruned[s, w]
        v = (cw[s] << 6) + np.int64(trailing_zeros(b))
        cb[s] = b & (b - U1)
        np2 = npv[s] + (1 if v == piv[s] else 0)
        if s + 1 - t > np2:
            continue
        out[2] += U1
        vq = v >> 6
        vr = np.uint64(v & 63)
        nz = U0
        for w in range(wpr):
            x = stk_cand[s, w] & rows[v, w]
            # drop already-branched candidates: pruned bits below v
            if w < vq:
                x &= ~stk_pruned[s, w]
            elif w == vq:
                x &= ~(stk_pruned[s, w] & ((U1 << vr) - U1))
            stk_cand[s + 1, w] = x
            nz |= x
        if nz != U0:
            s += 1
            npv[s] = np2
            piv[s] = _select_pivot(rows, wpr, stk_cand[s], stk_pruned[s])
            cw[s] = 0
            cb[s] = stk_pruned[s, 0]
        elif s + 1 >= t:
            r = s + 1 - t
            if bbig[np2, r] != 0:
                out[3] = U1
            else:
                acc_add128(out, blo[np2, r], bhi[np2, r])


@njit(cache=True, nogil=True)
def count_all_into(rows, wpr, d, stk_cand, stk_pruned, piv, npv, cw, cb,
                   blo, bhi, bbig, slot_lo, slot_hi, meta):
    # One full traversal, no stopping criterion: every leaf feeds slot t
    # with C(pivots, (s+1) - t) for each t it can complete.
    # meta: uint64[2] = visited nodes, overflow flag.
    if d == 0:
        return
    fill_all_ones(stk_cand[0], d, wpr)
    piv[0] = _select_pivot(rows, wpr, stk_cand[0], stk_pruned[0])
    npv[0] = 0
    s = 0
    cw[0] = 0
    cb[0] = stk_pruned[0, 0]
    while s >= 0:
        b = cb[s]
        if b == U0:
            w = cw[s] + 1
            while w < wpr and stk_pruned[s, w] == U0:
                w += 1
            if w >= wpr:
                s -= 1
                continue
            cw[s] = w
            b = stk_pruned[s, w]
        v = (cw[s] << 6) + np.int64(trailing_zeros(b))
        cb[s] = b & (b - U1)
        np2 = npv[s] + (1 if v == piv[s] else 0)
        meta[0] += U1
        vq = v >> 6
        vr = np.uint64(v & 63)
        nz = U0
        for w in range(wpr):
            x = stk_cand[s, w] & rows[v, w]
            if w < vq:
                x &= ~stk_pruned[s, w]
            elif w == vq:
                x &= ~(stk_pruned[s, w] & ((U1 << vr) - U1))
            stk_cand[s + 1, w] = x
            nz |= x
        if nz != U0:
            s += 1
            npv[s] = np2
            piv[s] = _select_pivot(rows, wpr, stk_cand[s], stk_pruned[s])
            cw[s] = 0
            cb[s] = stk_pruned[s, 0]
        else:
            for r in range(np2 + 1):
                tt = s + 1 - r
                if bbig[np2, r] != 0:
                    meta[1] = U1
                else:
                    slot_add128(slot_lo, slot_hi, tt, blo[np2, r], bhi[np2, r], meta)


def _pivot_scratch(d, wpr_cap):
    depth = d + 1
    return (
        np.zeros((depth, wpr_cap), dtype=np.uint64),
        np.zeros((depth, wpr_cap), dtype=np.uint64),
        np.zeros(depth, dtype=np.int64),
        np.zeros(depth, dtype=np.int64),
        np.zeros(depth, dtype=np.int64),
        np.zeros(depth, dtype=np.uint64),
    )


def count_tcliques_pivot(S, t, stats=None, table=None):
    """Number of t-cliques in the undirected BitGraph S.

    Same degenerate conventions as the orientation engine (t=0 -> 1,
    t=1 -> local count). ``table`` reuses a prebuilt BinomialTable; it must
    cover n up to S.local_count.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if S.directed:
        raise ValueError("the pivot engine needs an undirected sub-graph")
    d = S.local_count
    if table is None:
        table = BinomialTable(max(d, 1))
    elif table.n_max < d:
        raise ValueError("binomial table smaller than the sub-graph")
    wpr_cap = max(S.words.shape[1], 1)
    stk_cand, stk_pruned, piv, npv, cw, cb = _pivot_scratch(d, wpr_cap)
    out = np.zeros(4, dtype=np.uint64)
    count_into(
        S.words, S.words_per_row, d, t, stk_cand, stk_pruned, piv, npv,
        cw, cb, table.lo, table.hi, table.too_big, out,
    )
    if out[3]:
        raise OverflowError("clique count exceeded the 128-bit accumulator")
    if stats is not None:
        stats.visited += int(out[2])
    return value128(out[0], out[1])


def count_tcliques_pivot_all_t(S, stats=None, table=None):
    """Counts for every t at once from a single traversal.

    Returns a list indexed by t, 0..local_count. Equals per-t runs of
    count_tcliques_pivot; the shared traversal just skips the per-t branch
    pruning.
    """
    if S.directed:
        raise ValueError("the pivot engine needs an undirected sub-graph")
    d = S.local_count
    if table is None:
        table = BinomialTable(max(d, 1))
    elif table.n_max < d:
        raise ValueError("binomial table smaller than the sub-graph")
    wpr_cap = max(S.words.shape[1], 1)
    stk_cand, stk_pruned, piv, npv, cw, cb = _pivot_scratch(d, wpr_cap)
    slot_lo = np.zeros(d + 2, dtype=np.uint64)
    slot_hi = np.zeros(d + 2, dtype=np.uint64)
    meta = np.zeros(2, dtype=np.uint64)
    count_all_into(
        S.words, S.words_per_row, d, stk_cand, stk_pruned, piv, npv,
        cw, cb, table.lo, table.hi, table.too_big, slot_lo, slot_hi, meta,
    )
    if meta[1]:
        raise OverflowError("clique count exceeded the 128-bit accumulator")
    if stats is not None:
        stats.visited += int(meta[0])
    counts = [value128(slot_lo[i], slot_hi[i]) for i in range(d + 1)]
    if d == 0:
        counts[0] = 1  # the empty clique; no traversal ran
    return counts
