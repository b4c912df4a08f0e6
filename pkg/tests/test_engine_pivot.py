import itertools
import math

import numpy as np
import pytest

from kcliques import (
    BinomialTable,
    NodeCounter,
    binomial,
    compute_rank,
    count_tcliques_orient,
    count_tcliques_pivot,
    count_tcliques_pivot_all_t,
    extract_vertex_induced,
    find_pivot,
    orient,
)

from conftest import complete_graph, gnp


def induced_at(g, v, directed=False):
    og = orient(g, compute_rank(g, "degree"))
    return extract_vertex_induced(og, v, directed=directed)


def full_row(S):
    row = np.zeros(max(S.words_per_row, 1), dtype=np.uint64)
    for i in range(S.local_count):
        row[i // 64] |= np.uint64(1) << np.uint64(i % 64)
    return row


def row_bits(row, d):
    return {i for i in range(d) if (int(row[i // 64]) >> (i % 64)) & 1}


def test_binomial_function():
    assert binomial(6, 3) == 20
    assert binomial(5, 0) == 1
    assert binomial(5, 6) == 0
    assert binomial(5, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_table_values_and_pascal():
    table = BinomialTable(120)
    assert table.value(113, 10) == math.comb(113, 10)
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(2, 121))
        r = int(rng.integers(1, n))
        assert table.value(n, r) == table.value(n - 1, r - 1) + table.value(n - 1, r)
    assert table.value(120, 0) == 1
    assert table.value(0, 0) == 1
    assert table.value(7, 9) == 0


def test_binomial_table_overflow_flags():
    table = BinomialTable(140)
    assert table.value(131, 65) == math.comb(131, 65)  # still below 2**128
    with pytest.raises(OverflowError):
        table.value(132, 66)  # first entry past 128 bits
    with pytest.raises(OverflowError):
        table.value(141, 1)  # beyond the table


def test_find_pivot_k4():
    S = induced_at(complete_graph(5), 0)  # undirected K4
    pivot, pruned = find_pivot(S, full_row(S))
    assert pivot == 0
    assert row_bits(pruned, S.local_count) == {0}


def test_find_pivot_matches_exhaustive_scan():
    g = gnp(20, 0.4, 3)
    og = orient(g, compute_rank(g, "degree"))
    rng = np.random.default_rng(5)
    for v in range(g.n):
        S = extract_vertex_induced(og, v, directed=False)
        d = S.local_count
        if d == 0:
            continue
        adj = [S.row_set(i) for i in range(d)]
        for _ in range(6):
            cand = set(
                int(x) for x in rng.choice(d, size=rng.integers(1, d + 1), replace=False)
            )
            row = np.zeros(S.words_per_row, dtype=np.uint64)
            for i in cand:
                row[i // 64] |= np.uint64(1) << np.uint64(i % 64)
            pivot, pruned = find_pivot(S, row)
            coverage = {u: len(cand & adj[u]) for u in cand}
            best = max(coverage.values())
            assert pivot in cand
            assert coverage[pivot] == best
            assert pivot == min(u for u in cand if coverage[u] == best)
            assert row_bits(pruned, d) == cand - adj[pivot]


def test_k5_counts():
    S = induced_at(complete_graph(6), 0)  # undirected K5
    assert count_tcliques_pivot(S, 3) == 10
    assert count_tcliques_pivot_all_t(S) == [math.comb(5, t) for t in range(6)]


def test_degenerate_targets():
    S = induced_at(complete_graph(6), 0)
    assert count_tcliques_pivot(S, 0) == 1
    assert count_tcliques_pivot(S, 1) == 5
    empty = induced_at(complete_graph(4), 3)
    assert count_tcliques_pivot(empty, 2) == 0
    assert count_tcliques_pivot_all_t(empty) == [1]
    with pytest.raises(ValueError):
        count_tcliques_pivot(S, -1)


def test_requires_undirected_encoding():
    S = induced_at(complete_graph(6), 0, directed=True)
    with pytest.raises(ValueError):
        count_tcliques_pivot(S, 3)


def test_cross_engine_on_random_graphs():
    g = gnp(22, 0.5, 17)
    og = orient(g, compute_rank(g, "degeneracy"))
    for v in range(g.n):
        Sd = extract_vertex_induced(og, v, directed=True)
        Su = extract_vertex_induced(og, v, directed=False)
        for t in (3, 4, 5):
            assert count_tcliques_pivot(Su, t) == count_tcliques_orient(Sd, t)


def test_all_t_equals_per_t():
    for seed in (0, 1, 2):
        g = gnp(20, 0.5, seed)
        og = orient(g, compute_rank(g, "degree"))
        for v in range(g.n):
            S = extract_vertex_induced(og, v, directed=False)
            all_t = count_tcliques_pivot_all_t(S)
            assert all_t[0] == 1
            for t in range(1, len(all_t)):
                assert all_t[t] == count_tcliques_pivot(S, t)


def test_shared_table_reuse():
    g = gnp(18, 0.5, 9)
    og = orient(g, compute_rank(g, "degree"))
    table = BinomialTable(og.d_max + 1)
    for v in range(g.n):
        S = extract_vertex_induced(og, v, directed=False)
        assert count_tcliques_pivot(S, 3, table=table) == count_tcliques_pivot(S, 3)


def test_pivot_visits_fewer_than_orient_on_cliques():
    for n in (8, 10, 12):
        Sd = induced_at(complete_graph(n + 1), 0, directed=True)
        Su = induced_at(complete_graph(n + 1), 0, directed=False)
        so, sp = NodeCounter(), NodeCounter()
        assert count_tcliques_orient(Sd, 4, stats=so) == math.comb(n, 4)
        assert count_tcliques_pivot(Su, 4, stats=sp) == math.comb(n, 4)
        assert sp.visited < so.visited
