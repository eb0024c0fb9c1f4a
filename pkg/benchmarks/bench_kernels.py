#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Usage:  python benchmarks/bench_kernels.py

Each workload runs on both implementations (when the extension is built)
and reports wall time plus speedup.  Workloads mirror the hot paths: strip
translate counting, exact longest cycle, the book branch and bound, the
2-page embeddability decision, and one cylindrical route subproblem.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tcircle.kernels import _pure  # noqa: E402

try:
    from tcircle.kernels import _fast
except ImportError:
    _fast = None

from tcircle.families import stacked_triangulation  # noqa: E402
from tcircle.graphs import build_named_graph  # noqa: E402


def bench_strip(mod):
    total = 0
    for a in range(-20, 21):
        for b in range(-20, 21):
            total += mod.strip_alternation_count(0, 0, a, 1, 3, 0, b, 1,
                                                 12, 8)
    return total


def bench_longest_cycle(mod):
    g = stacked_triangulation(3).graph()
    return mod.longest_cycle(g.n, g.adjacency_masks(), float("inf"))[1]


def bench_book(mod):
    g = build_named_graph("complete", [6])
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    return mod.book_search(g.n, eu, ev, 2, 1 << 20, float("inf"), 1 << 50)[1]


def bench_embed(mod):
    g = stacked_triangulation(2).graph()
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    res = mod.book_embed2(g.n, eu, ev, float("inf"), 1 << 50)
    return res[1] is not None


def bench_cyl(mod):
    g = build_named_graph("complete", [6])
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    side = [0, 0, 0, 1, 1, 1]
    rank = [0, 1, 2, 0, 1, 2]
    return mod.cyl_subproblem(eu, ev, side, rank, 3, 3, 2, 1 << 25,
                              float("inf"), 1 << 50)[1]


WORKLOADS = [
    ("strip translate counting (1681 pairs)", bench_strip),
    ("longest cycle, 16-vertex triangulation", bench_longest_cycle),
    ("book branch&bound, K6 two pages", bench_book),
    ("2-page embeddability, 7-vertex triangulation", bench_embed),
    ("cylindrical route subproblem, K6 3+3", bench_cyl),
]


def run(mod, fn):
    t0 = time.perf_counter()
    value = fn(mod)
    return time.perf_counter() - t0, value


def main():
    print(f"{'workload':<46} {'pure':>9} {'fast':>9} {'speedup':>8}")
    print("-" * 76)
    for name, fn in WORKLOADS:
        tp, vp = run(_pure, fn)
        if _fast is None:
            print(f"{name:<46} {tp:>8.3f}s {'-':>9} {'-':>8}")
            continue
        tf, vf = run(_fast, fn)
        assert vp == vf, f"{name}: implementations disagree ({vp} vs {vf})"
        print(f"{name:<46} {tp:>8.3f}s {tf:>8.3f}s {tp / tf:>7.1f}x")
    if _fast is None:
        print("\ncompiled kernels not built; run "
              "`python setup.py build_ext --inplace` first")


if __name__ == "__main__":
    main()
