"""Edge-list parsing and the immutable CSR+COO graph."""

import gzip
import io
import warnings

import numpy as np


class ParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EdgeList:
    """Normalized undirected edge set.

    ``edges`` is an (m, 2) int64 array with u < v per row and rows sorted;
    every unordered pair appears once and self-loops are gone. ``loop_ids``
    keeps vertex ids seen only in dropped self-loops so they still count as
    (isolated) vertices.
    """

    def __init__(self, edges, n_self_loops=0, n_duplicates=0, loop_ids=None):
        self.edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.n_self_loops = int(n_self_loops)
        self.n_duplicates = int(n_duplicates)
        self.loop_ids = np.asarray(
            [] if loop_ids is None else loop_ids, dtype=np.int64
        )

    def __len__(self):
        return self.edges.shape[0]

    def __iter__(self):
        for u, v in self.edges:
            yield int(u), int(v)

    def pair_set(self):
        return {(int(u), int(v)) for u, v in self.edges}


def _parse_lines(data):
    # slow path: pinpoints the offending line, used when the fast path balks
    rows = []
    for lineno, raw in enumerate(data.splitlines(), 1):
        line = raw.split(b"#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {len(parts)} tokens")
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise ParseError(lineno, "non-integer token") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "vertex ids must be non-negative")
        rows.append((u, v))
    if not rows:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def load_edge_list(text):
    """Parse whitespace-separated edge pairs into a normalized EdgeList.

    Lines starting with '#' are comments. Data lines carry exactly two
    non-negative integers. Self-loops and repeated pairs (either order)
    are dropped and tallied on the returned EdgeList.
    """
    if hasattr(text, "read"):
        data = text.read()
    else:
        data = text
    if isinstance(data, str):
        data = data.encode()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # loadtxt warns on data-free input
            arr = np.loadtxt(io.BytesIO(data), dtype=np.int64, comments="#", ndmin=2)
    except Exception:
        arr = _parse_lines(data)
    if arr.size and (arr.shape[1] != 2 or (arr < 0).any()):
        arr = _parse_lines(data)  # raises with the line number
    if arr.size == 0:
        return EdgeList(np.empty((0, 2), dtype=np.int64))

    u, v = arr[:, 0], arr[:, 1]
    loops = u == v
    n_self = int(loops.sum())
    loop_ids = np.unique(u[loops]) if n_self else np.empty(0, dtype=np.int64)
    lo = np.minimum(u, v)[~loops]
    hi = np.maximum(u, v)[~loops]
    if lo.size:
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        keep = np.ones(lo.size, dtype=bool)
        keep[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
        n_dup = int(lo.size - keep.sum())
        edges = np.stack([lo[keep], hi[keep]], axis=1)
    else:
        n_dup = 0
        edges = np.empty((0, 2), dtype=np.int64)
    return EdgeList(edges, n_self, n_dup, loop_ids)


class Graph:
    """Immutable undirected simple graph: CSR adjacency plus aligned COO.

    row_ptr is int64[n+1]; col holds both directions of every edge, each
    per-vertex slice strictly ascending; coo_src[e] is the owning vertex of
    slot e, so coo_dst coincides with col.
    """

    def __init__(self, n, m, row_ptr, col, coo_src, orig_ids):
        self.n = int(n)
        self.m = int(m)
        self.row_ptr = row_ptr
        self.col = col
        self.coo_src = coo_src
        self.orig_ids = orig_ids
        self._id_map = None

    @property
    def coo_dst(self):
        return self.col

    @property
    def id_map(self):
        """original id -> compact id (built on first use)."""
        if self._id_map is None:
            self._id_map = {int(o): i for i, o in enumerate(self.orig_ids)}
        return self._id_map

    def degrees(self):
        return np.diff(self.row_ptr)

    def max_degree(self):
        return int(self.degrees().max()) if self.n else 0

    def neighbors(self, v):
        return self.col[self.row_ptr[v] : self.row_ptr[v + 1]]

    def has_edge(self, u, v):
        seg = self.neighbors(u)
        i = int(np.searchsorted(seg, v))
        return i < seg.size and int(seg[i]) == int(v)

    def edge_pairs(self):
        """Undirected pairs (u, v), u < v, in compact ids."""
        mask = self.coo_src < self.col
        return np.stack(
            [self.coo_src[mask], self.col[mask]], axis=1
        ).astype(np.int64)


def from_edges(edges):
    """Build the CSR+COO Graph from a normalized edge list.

    Vertex ids are compacted to 0..n-1 in ascending original-id order; the
    original ids stay available through Graph.orig_ids / Graph.id_map.
    """
    if isinstance(edges, EdgeList):
        pairs = edges.edges
        extra = edges.loop_ids
    else:
        pairs = np.asarray(
            edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64
        ).reshape(-1, 2)
        extra = np.empty(0, dtype=np.int64)

    if pairs.size:
        ids = np.union1d(pairs.ravel(), extra)
    else:
        ids = np.unique(extra)
    n = int(ids.size)
    m = int(pairs.shape[0])
    if n == 0:
        return Graph(
            0, 0,
            np.zeros(1, dtype=np.int64),
            np.empty(0, dtype=np.int32),
            np.empty(0, dtype=np.int32),
            ids,
        )
    cu = np.searchsorted(ids, pairs[:, 0])
    cv = np.searchsorted(ids, pairs[:, 1])
    src = np.concatenate([cu, cv])
    dst = np.concatenate([cv, cu])
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    row_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=row_ptr[1:])
    return Graph(n, m, row_ptr, dst.astype(np.int32), src.astype(np.int32), ids)


def read_graph(path):
    """Load a SNAP-style edge-list file (plain text or gzip) into a Graph."""
    with open(path, "rb") as f:
        head = f.read(2)
        f.seek(0)
        data = gzip.open(f).read() if head == b"\x1f\x8b" else f.read()
    return from_edges(load_edge_list(data))
