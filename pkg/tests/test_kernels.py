"""Equivalence of the compiled and pure kernels, fuzzed."""

import random

import pytest

from tcircle.kernels import _pure

try:
    from tcircle.kernels import _fast
except ImportError:
    _fast = None

needs_fast = pytest.mark.skipif(_fast is None,
                                reason="compiled kernel not built")


@needs_fast
def test_strip_alternation_equivalence():
    rng = random.Random(101)
    for _ in range(3000):
        args = (rng.randint(-40, 40), rng.randint(0, 1),
                rng.randint(-40, 40), rng.randint(0, 1),
                rng.randint(-40, 40), rng.randint(0, 1),
                rng.randint(-40, 40), rng.randint(0, 1),
                rng.randint(1, 13), rng.randint(0, 9))
        assert _pure.strip_alternation_count(*args) == \
            _fast.strip_alternation_count(*args)


@needs_fast
def test_self_count_and_interleave_equivalence():
    rng = random.Random(55)
    for _ in range(1500):
        args = (rng.randint(-30, 30), rng.randint(0, 1),
                rng.randint(-30, 30), rng.randint(0, 1),
                rng.randint(1, 11), rng.randint(0, 7))
        assert _pure.strip_self_count(*args) == _fast.strip_self_count(*args)
        m = rng.randint(4, 12)
        vals = rng.sample(range(m), 4)
        assert _pure.circular_interleave(*vals, m) == \
            _fast.circular_interleave(*vals, m)


def _random_graph(rng, lo=4, hi=7):
    n = rng.randint(lo, hi)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < 0.5]
    return n, edges


@needs_fast
def test_longest_cycle_equivalence():
    rng = random.Random(77)
    for _ in range(40):
        n, edges = _random_graph(rng, 4, 9)
        adj = [0] * n
        for (u, v) in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        assert _pure.longest_cycle(n, adj, float("inf")) == \
            _fast.longest_cycle(n, adj, float("inf"))


@needs_fast
def test_book_search_equivalence():
    rng = random.Random(40)
    for _ in range(25):
        n, edges = _random_graph(rng, 3, 6)
        if not edges:
            continue
        eu = [e[0] for e in edges]
        ev = [e[1] for e in edges]
        p = rng.randint(1, 2)
        a = _pure.book_search(n, eu, ev, p, 1 << 20, float("inf"), 1 << 50)
        b = _fast.book_search(n, eu, ev, p, 1 << 20, float("inf"), 1 << 50)
        assert a[:2] == b[:2]
        assert a[2] == b[2] and a[3] == b[3]  # identical witnesses


@needs_fast
def test_book_embed2_equivalence():
    rng = random.Random(41)
    for _ in range(25):
        n, edges = _random_graph(rng, 3, 7)
        if not edges:
            continue
        eu = [e[0] for e in edges]
        ev = [e[1] for e in edges]
        a = _pure.book_embed2(n, eu, ev, float("inf"), 1 << 50)
        b = _fast.book_embed2(n, eu, ev, float("inf"), 1 << 50)
        assert a[:3] == b[:3]


@needs_fast
def test_cyl_subproblem_equivalence():
    rng = random.Random(42)
    for _ in range(30):
        n, edges = _random_graph(rng, 3, 6)
        if not edges:
            continue
        eu = [e[0] for e in edges]
        ev = [e[1] for e in edges]
        verts = list(range(n))
        rng.shuffle(verts)
        cut = rng.randint(1, n)
        side = [0] * n
        rank = [0] * n
        for i, v in enumerate(verts[:cut]):
            side[v], rank[v] = 0, i
        for i, v in enumerate(verts[cut:]):
            side[v], rank[v] = 1, i
        cap = rng.randint(1, 3)
        a = _pure.cyl_subproblem(eu, ev, side, rank, cut, n - cut, cap,
                                 1 << 25, float("inf"), 1 << 50)
        b = _fast.cyl_subproblem(eu, ev, side, rank, cut, n - cut, cap,
                                 1 << 25, float("inf"), 1 << 50)
        assert a[:3] == b[:3]
