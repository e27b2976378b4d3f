"""Benchmark: compiled canonical-labeling kernel vs the pure-Python fallback.

Measures the dominant enumeration workload (canonical forms of mutation-class
members) on both backends and cross-checks that they return identical keys.

Run:  python benchmarks/bench_kernel.py [--full]
      --full also times the complete 5739-member enumeration on each backend.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from cluster_workbench import _canon_py
from cluster_workbench.catalog import paper_quiver_2, paper_quiver_3
from cluster_workbench.quiver import mutate_matrix

try:
    from cluster_workbench import _canon_cy
except ImportError:
    _canon_cy = None


def sample_workload(quiver, steps, rng):
    """Random mutation walk; returns the (full matrix, colors) calls it makes."""
    calls = []
    current = quiver
    for _ in range(steps):
        current = mutate_matrix(current, rng.randrange(quiver.n))
        calls.append((current.full_matrix(), [0] * current.m))
    return calls


def time_backend(backend, calls, repeat=1):
    start = time.perf_counter()
    keys = []
    for _ in range(repeat):
        keys = [backend.canonical_all(mat, colors)[0] for mat, colors in calls]
    return time.perf_counter() - start, keys


def bench_calls():
    rng = random.Random(0)
    calls = sample_workload(paper_quiver_2(), 300, rng)
    calls += sample_workload(paper_quiver_3(), 300, rng)
    t_py, keys_py = time_backend(_canon_py, calls)
    print(f"pure python : {t_py:8.3f}s for {len(calls)} canonical forms")
    if _canon_cy is None:
        print("cython      : extension not built")
        return
    t_cy, keys_cy = time_backend(_canon_cy, calls)
    print(f"cython      : {t_cy:8.3f}s for {len(calls)} canonical forms")
    if keys_py != keys_cy:
        print("MISMATCH between backends!", file=sys.stderr)
        sys.exit(1)
    print(f"speedup     : {t_py / t_cy:8.2f}x  (results identical)")


def bench_full_enumeration():
    from cluster_workbench import kernel
    from cluster_workbench.mutation_class import mutation_class

    for backend_name, backend in (("python", _canon_py), ("cython", _canon_cy)):
        if backend is None:
            continue
        kernel.canonical_all = backend.canonical_all
        kernel.canonical_key = backend.canonical_key
        start = time.perf_counter()
        report = mutation_class(paper_quiver_3())
        elapsed = time.perf_counter() - start
        print(
            f"{backend_name:12}: 5739-class enumeration in {elapsed:7.1f}s "
            f"(size={report.class_size}, double={report.double_arrow_count})"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true", help="also run the 5739 enumeration")
    args = parser.parse_args()
    bench_calls()
    if args.full:
        bench_full_enumeration()
