import itertools
import os
import pathlib

import numpy as np
import pytest

from kcliques import from_edges

ROOT = pathlib.Path(__file__).resolve().parent.parent


def dataset_path(name):
    base = pathlib.Path(os.environ.get("KCLIQUES_DATA", ROOT / "data"))
    for suffix in ("", ".gz"):
        p = base / (name + suffix)
        if p.exists():
            return p
    return None


def require_dataset(name):
    p = dataset_path(name)
    if p is None:
        pytest.skip(f"dataset {name} not present; run scripts/fetch_datasets.py")
    return p


def complete_graph(n):
    pairs = np.array(list(itertools.combinations(range(n), 2)), dtype=np.int64)
    return from_edges(pairs)


def cycle_graph(n):
    pairs = np.array([(i, (i + 1) % n) for i in range(n)], dtype=np.int64)
    return from_edges(pairs)


def path_graph(n):
    pairs = np.array([(i, i + 1) for i in range(n - 1)], dtype=np.int64)
    return from_edges(pairs)


def star_graph(leaves):
    pairs = np.array([(leaves, i) for i in range(leaves)], dtype=np.int64)
    return from_edges(pairs)


def complete_bipartite(a, b):
    pairs = np.array(
        [(i, a + j) for i in range(a) for j in range(b)], dtype=np.int64
    )
    return from_edges(pairs)


def petersen():
    pairs = []
    for i in range(5):
        pairs.append((i, (i + 1) % 5))       # outer cycle
        pairs.append((i, i + 5))             # spoke
        pairs.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
    return from_edges(np.array(pairs, dtype=np.int64))


def gnp(n, p, seed):
    rng = np.random.default_rng(seed)
    pairs = np.array(list(itertools.combinations(range(n), 2)), dtype=np.int64)
    mask = rng.random(len(pairs)) < p
    kept = pairs[mask]
    if kept.shape[0] == 0:
        # keep at least one edge so n is well-defined for the builders
        kept = pairs[:1]
    return from_edges(kept)
