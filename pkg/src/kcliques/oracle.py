"""Ground-truth clique counters for testing.

Two independent references: exhaustive subset enumeration over an adjacency
matrix (small n only), and a direct recursive traversal over sorted integer
adjacency lists of the oriented graph. Neither shares code with the bitset
engines beyond graph loading and orientation.
"""

import itertools

import numpy as np

from .orientation import compute_rank, orient

MAX_BRUTE_N = 30
_CHUNK = 200_000


def adjacency_matrix(g):
    adj = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edge_pairs():
        adj[u, v] = True
        adj[v, u] = True
    return adj


def brute_force_count(g, k, max_n=MAX_BRUTE_N):
    """Count k-cliques by checking every k-subset of vertices."""
    if g.n > max_n:
        raise ValueError(f"brute force limited to n <= {max_n}, got n = {g.n}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    if k == 1:
        return g.n
    if k > g.n:
        return 0
    adj = adjacency_matrix(g)
    pairs = list(itertools.combinations(range(k), 2))
    count = 0
    combos = itertools.combinations(range(g.n), k)
    while True:
        block = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, _CHUNK)),
            dtype=np.int64,
        ).reshape(-1, k)
        if block.shape[0] == 0:
            break
        ok = np.ones(block.shape[0], dtype=bool)
        for i, j in pairs:
            ok &= adj[block[:, i], block[:, j]]
        count += int(ok.sum())
    return count


def triangle_count(g):
    """Triangles via the adjacency-matrix trace; small graphs only."""
    if g.n > 2000:
        raise ValueError("trace-based triangle count limited to n <= 2000")
    a = adjacency_matrix(g).astype(np.int64)
    return int(np.trace(a @ a @ a)) // 6


def naive_recursive_count(g, k, criterion="degeneracy"):
    """Recursive rank-ascending traversal over plain sorted adjacency lists.

    Orient, then from every vertex repeatedly intersect the candidate set
    with the current vertex's out-neighbors; the count of (k-1)-deep
    candidates is the number of k-cliques through each path. Slower than
    the bitset engines but with none of their machinery.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return g.n
    og = orient(g, compute_rank(g, criterion))
    row_ptr, col = og.row_ptr, np.asarray(og.col, dtype=np.int64)
    count = 0

    def descend(cand, depth):
        nonlocal count
        for v in cand:
            nxt = np.intersect1d(
                cand, col[row_ptr[v]:row_ptr[v + 1]], assume_unique=True
            )
            if depth + 2 == k:
                count += nxt.size
            elif nxt.size:
                descend(nxt, depth + 1)

    if k == 2:
        return g.m
    for v in range(g.n):
        out = col[row_ptr[v]:row_ptr[v + 1]]
        if out.size == 0:
            continue
        if k == 3:
            for u in out:
                count += np.intersect1d(
                    out, col[row_ptr[u]:row_ptr[u + 1]], assume_unique=True
                ).size
        else:
            descend(out, 1)
    return int(count)
