import gzip
import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcliques import ParseError, from_edges, load_edge_list, read_graph

from conftest import gnp


def test_parse_drops_loops_and_duplicates():
    e = load_edge_list(b"# c\n0 1\n1 0\n2 2\n1 2\n")
    assert e.pair_set() == {(0, 1), (1, 2)}
    assert e.n_self_loops == 1
    assert e.n_duplicates == 1


def test_parse_passthrough():
    e = load_edge_list("5 7\n7 9\n")
    assert e.pair_set() == {(5, 7), (7, 9)}


def test_parse_accepts_stream():
    e = load_edge_list(io.BytesIO(b"0 1\n"))
    assert e.pair_set() == {(0, 1)}


def test_parse_empty_is_not_an_error():
    e = load_edge_list(b"")
    assert len(e) == 0
    g = from_edges(e.edges)
    assert g.n == 0 and g.m == 0
    assert g.row_ptr.tolist() == [0]


@pytest.mark.parametrize(
    "data, lineno",
    [
        (b"0 1\n1 x\n", 2),
        (b"0 1 2\n", 1),
        (b"0 -1\n", 1),
        (b"0 1\n\n3\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(data, lineno):
    with pytest.raises(ParseError) as exc:
        load_edge_list(data)
    assert exc.value.lineno == lineno


def test_loop_only_vertex_still_counted():
    e = load_edge_list(b"7 7\n")
    g = from_edges(e)
    assert g.n == 1 and g.m == 0


def test_csr_example():
    g = from_edges(np.array([[0, 1], [1, 2]], dtype=np.int64))
    assert g.n == 3 and g.m == 2
    assert g.row_ptr.tolist() == [0, 1, 3, 4]
    assert g.col.tolist() == [1, 0, 2, 1]


def test_compaction_and_id_map():
    g = from_edges(np.array([[10, 20], [20, 30]], dtype=np.int64))
    assert g.row_ptr.tolist() == [0, 1, 3, 4]
    assert g.col.tolist() == [1, 0, 2, 1]
    assert g.id_map == {10: 0, 20: 1, 30: 2}
    assert g.orig_ids.tolist() == [10, 20, 30]


def test_degree_sum_is_2m():
    for seed in range(5):
        g = gnp(25, 0.3, seed)
        assert int(np.diff(g.row_ptr).sum()) == 2 * g.m


def test_coo_csr_agreement():
    g = gnp(25, 0.3, 3)
    assert np.array_equal(g.coo_dst, g.col)
    for e in range(2 * g.m):
        v = int(g.coo_src[e])
        assert g.row_ptr[v] <= e < g.row_ptr[v + 1]


def test_adjacency_sorted_symmetric_no_self():
    g = gnp(30, 0.4, 9)
    for v in range(g.n):
        seg = g.col[g.row_ptr[v]:g.row_ptr[v + 1]]
        assert np.all(np.diff(seg) > 0)
        assert v not in set(seg.tolist())
        for u in seg:
            assert g.has_edge(int(u), v)


def test_round_trip_random_pairs():
    rng = np.random.default_rng(0)
    for _ in range(20):
        raw = rng.integers(0, 15, size=(60, 2))
        text = "\n".join(f"{u} {v}" for u, v in raw)
        e = load_edge_list(text)
        want = {(min(u, v), max(u, v)) for u, v in raw if u != v}
        assert e.pair_set() == want
        g = from_edges(e.edges)
        back = {
            (min(int(g.orig_ids[u]), int(g.orig_ids[v])),
             max(int(g.orig_ids[u]), int(g.orig_ids[v])))
            for u, v in g.edge_pairs()
        }
        assert back == want


@settings(deadline=None, max_examples=60)
@given(
    st.lists(
        st.tuples(st.integers(0, 40), st.integers(0, 40)),
        max_size=120,
    )
)
def test_normalization_invariants(pairs):
    text = "\n".join(f"{u} {v}" for u, v in pairs)
    e = load_edge_list(text)
    edges = e.edges
    # u < v per row, rows strictly increasing lexicographically
    assert np.all(edges[:, 0] < edges[:, 1]) if len(e) else True
    as_tuples = [tuple(r) for r in edges.tolist()]
    assert as_tuples == sorted(set(as_tuples))
    assert e.pair_set() == {(min(u, v), max(u, v)) for u, v in pairs if u != v}


def test_gzip_transparent(tmp_path):
    p = tmp_path / "tiny.txt.gz"
    with gzip.open(p, "wb") as f:
        f.write(b"# edges\n0 1\n1 2\n0 2\n")
    g = read_graph(p)
    assert g.n == 3 and g.m == 3


def test_read_graph_plain(tmp_path):
    p = tmp_path / "tiny.txt"
    p.write_text("0 1\n2 1\n")
    g = read_graph(str(p))
    assert g.n == 3 and g.m == 2
