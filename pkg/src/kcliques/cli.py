"""Command-line driver: load, configure, count, report.

Exit codes: 0 success, 1 parse or configuration error, 2 oracle mismatch,
3 accumulator overflow. Counts are reported as decimal strings so consumers
never truncate values past 64 bits.
"""

import argparse
import json
import math
import os
import sys
import time

from .graph import ParseError, read_graph
from .oracle import MAX_BRUTE_N, brute_force_count, naive_recursive_count
from .scheduler import RunConfig, run_count

_BRUTE_WORK_LIMIT = 2_000_000
_NAIVE_N_LIMIT = 100_000


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser():
    p = _Parser(prog="kcliques", description="Exact parallel k-clique counting.")
    p.add_argument("-i", "--input", required=True, help="edge-list file (SNAP text, optionally gzipped)")
    p.add_argument("-k", "--k", type=int, required=True, help="clique size to count")
    p.add_argument("--algo", choices=("orient", "pivot", "auto"), default="auto")
    p.add_argument("--orient", choices=("degree", "degeneracy", "auto"), default="auto",
                   help="orientation criterion")
    p.add_argument("--scheme", choices=("vertex", "edge", "auto"), default="auto")
    p.add_argument("--threads", type=int, default=0, help="worker count, 0 = all cores")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--stats", action="store_true", help="include load-balance summary")
    p.add_argument("--oracle-check", action="store_true",
                   help="verify the count with an independent oracle when feasible")
    p.add_argument("--all-k", action="store_true",
                   help="report counts for every k from one pivot traversal")
    return p


def auto_select(n, m, d_max_degree_oriented, k):
    """Default (algorithm, scheme, criterion) for a graph of this shape at k.

    The rules depend only on k; graph shape is accepted so callers can keep
    one signature if shape-sensitive rules land later.
    """
    algorithm = "orient" if k < 7 else "pivot"
    scheme = "vertex" if k < 6 else "edge"
    if algorithm == "pivot":
        criterion = "degeneracy"
    else:
        criterion = "degree" if k < 7 else "degeneracy"
    return algorithm, scheme, criterion


def _resolve(opts, n, m, d_max_hint):
    if opts.k < 1:
        raise CliError("k must be >= 1")
    auto_algo, auto_scheme, _ = auto_select(n, m, d_max_hint, opts.k)
    algorithm = auto_algo if opts.algo == "auto" else opts.algo
    if opts.all_k:
        if opts.algo == "orient":
            raise CliError("--all-k requires the pivot algorithm")
        algorithm = "pivot"
    scheme = auto_scheme if opts.scheme == "auto" else opts.scheme
    if opts.orient != "auto":
        criterion = opts.orient
    elif algorithm == "pivot":
        criterion = "degeneracy"
    else:
        criterion = "degree" if opts.k < 7 else "degeneracy"
    workers = opts.threads if opts.threads > 0 else (os.cpu_count() or 1)
    if opts.threads < 0:
        raise CliError("--threads must be >= 0")
    return RunConfig(
        k=opts.k,
        algorithm=algorithm,
        scheme=scheme,
        criterion=criterion,
        workers=workers,
        all_k=opts.all_k,
    )


def _oracle_value(g, k):
    # cheapest oracle that can handle the input; None = nothing feasible
    if g.n <= MAX_BRUTE_N and math.comb(g.n, k) <= _BRUTE_WORK_LIMIT:
        return brute_force_count(g, k)
    if g.n <= _NAIVE_N_LIMIT:
        return naive_recursive_count(g, k)
    return None


def _build_report(path, g, rep, opts):
    out = {
        "input": path,
        "n": rep.n,
        "m": rep.m,
        "d_max_undirected": rep.d_max_undirected,
        "d_max": rep.d_max,
        "config": {
            "k": rep.config.k,
            "algorithm": rep.config.algorithm,
            "scheme": rep.config.scheme,
            "criterion": rep.config.criterion,
            "threads": rep.config.workers,
            "all_k": rep.config.all_k,
        },
        "count": str(rep.count),
        "timings_ms": {
            "load": round(rep.load_ms, 3),
            "orient": round(rep.orient_ms, 3),
            "count": round(rep.count_ms, 3),
            "total": round(rep.total_ms, 3),
        },
        "scratch_bytes": rep.scratch_bytes,
    }
    if rep.degeneracy is not None:
        out["degeneracy"] = rep.degeneracy
    if rep.counts is not None:
        out["counts"] = {str(k): str(v) for k, v in sorted(rep.counts.items())}
    if opts.stats:
        load = rep.load
        out["load_balance"] = {
            "per_worker": load.per_worker,
            "min": load.min,
            "max": load.max,
            "mean": round(load.mean, 3),
            "normalized_max": round(load.normalized_max, 4),
            "total": load.total,
        }
    return out


def _flatten(report, prefix=""):
    for key, val in report.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            yield from _flatten(val, prefix=f"{name}.")
        else:
            yield name, val


def _emit(report, fmt, stream):
    if fmt == "json":
        json.dump(report, stream, indent=2)
        stream.write("\n")
        return
    rows = list(_flatten(report))
    width = max(len(name) for name, _ in rows)
    for name, val in rows:
        stream.write(f"{name.ljust(width)}  {val}\n")


def main(argv=None):
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        t0 = time.perf_counter()
        g = read_graph(opts.input)
        load_ms = (time.perf_counter() - t0) * 1000.0
        cfg = _resolve(opts, g.n, g.m, g.max_degree())
    except (CliError, ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        rep = run_count(g, cfg)
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rep.load_ms = load_ms

    report = _build_report(opts.input, g, rep, opts)
    mismatch = None
    if opts.oracle_check:
        expected = _oracle_value(g, cfg.k)
        if expected is None:
            report["oracle_verified"] = "skipped"
        elif expected == rep.count:
            report["oracle_verified"] = True
        else:
            report["oracle_verified"] = False
            mismatch = (rep.count, expected)

    _emit(report, opts.format, sys.stdout)
    if mismatch is not None:
        print(
            f"oracle mismatch: engine={mismatch[0]} oracle={mismatch[1]}",
            file=sys.stderr,
        )
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
