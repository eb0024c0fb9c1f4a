"""Exact solvers: book and cylindrical crossing numbers, embeddability,
curve covers; witness consistency and invariances."""

import itertools
import random

import pytest

import tcircle.kernels as kernels
from tcircle.drawings import BookDrawing, book_crossings, cyl_crossings
from tcircle.errors import ParameterError
from tcircle.families import stacked_triangulation
from tcircle.graphs import Graph, build_named_graph, is_hamiltonian
from tcircle.solvers import (STATUS_OPTIMAL, STATUS_TIMEOUT,
                             book_crossing_number, curve_cover_filter,
                             cylindrical_crossing_number,
                             is_two_page_embeddable, t_curve_embeddable)

FAST = kernels.IMPLEMENTATION == "fast"


def brute_force_book(g: Graph, p: int) -> int:
    best = None
    for perm in itertools.permutations(range(g.n)):
        for pages in itertools.product(range(1, p + 1), repeat=g.m):
            d = BookDrawing.make(perm, dict(zip(g.edges, pages)), p)
            c = book_crossings(d)
            best = c if best is None else min(best, c)
            if best == 0:
                return 0
    return best


def test_book_small_against_brute_force():
    for kind, params, p in [("cycle", [5], 1), ("complete", [4], 1),
                            ("complete", [4], 2), ("path", [4], 2)]:
        g = build_named_graph(kind, params)
        res = book_crossing_number(g, p)
        assert res.status == STATUS_OPTIMAL
        assert res.value == brute_force_book(g, p)
        assert book_crossings(res.witness) == res.value


def test_book_k5_exhaustive_cross_check():
    g = build_named_graph("complete", [5])
    res = book_crossing_number(g, 2)
    assert res.value == 1
    assert res.value == brute_force_book(g, 2)


def test_book_values():
    assert book_crossing_number(
        build_named_graph("complete_bipartite", [3, 3]), 2).value == 1
    assert book_crossing_number(build_named_graph("complete", [6]), 2,
                                ).value == 3
    for n in range(3, 11):
        assert book_crossing_number(build_named_graph("cycle", [n]),
                                    1).value == 0


def test_book_relabel_invariance():
    rng = random.Random(2)
    for _ in range(6):
        n = rng.randint(4, 6)
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.6)
        if not edges:
            continue
        g = Graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        assert book_crossing_number(g, 2).value == \
            book_crossing_number(g.relabeled(perm), 2).value


def test_embeddability_matches_hamiltonicity_on_maximal_planar():
    """Subhamiltonicity collapses to Hamiltonicity on maximal planar
    graphs; both procedures run independently and must agree."""
    for i in (1, 2):
        tri = stacked_triangulation(i)
        g = tri.graph()
        assert is_two_page_embeddable(g) == is_hamiltonian(g)
    # the 15-vertex gadget is maximal planar and not Hamiltonian
    from tcircle.families import gt_triangulation
    g2 = gt_triangulation(2)
    g = g2.graph()
    assert not is_hamiltonian(g)
    assert not is_two_page_embeddable(g, budget_ms=600000)


@pytest.mark.skipif(not FAST, reason="pure kernels refute this in ~9 minutes")
def test_embeddability_t3_refuted():
    t3 = stacked_triangulation(3)
    assert not is_two_page_embeddable(t3.graph(), budget_ms=300000)
    assert not is_hamiltonian(t3.graph())


def test_embeddability_smalls():
    assert is_two_page_embeddable(build_named_graph("complete", [4]))
    assert not is_two_page_embeddable(
        build_named_graph("complete_bipartite", [3, 3]))
    assert not is_two_page_embeddable(build_named_graph("complete", [5]))


def test_cylindrical_small_complete_graphs():
    for n, want in [(4, 0), (5, 1)]:
        g = build_named_graph("complete", [n])
        res = cylindrical_crossing_number(g, 2, budget_ms=60000)
        assert res.status == STATUS_OPTIMAL
        assert res.value == want
        assert cyl_crossings(res.witness) == want
        assert res.winding_cap_used == 2


def test_cylindrical_outerplanar_zero():
    for kind, params in [("cycle", [6]), ("path", [5])]:
        g = build_named_graph(kind, params)
        res = cylindrical_crossing_number(g, 2, budget_ms=60000)
        assert res.status == STATUS_OPTIMAL and res.value == 0


def test_cylindrical_relabel_invariance():
    rng = random.Random(9)
    g = build_named_graph("wheel", [5])
    perm = list(range(g.n))
    rng.shuffle(perm)
    a = cylindrical_crossing_number(g, 2, budget_ms=60000)
    b = cylindrical_crossing_number(g.relabeled(perm), 2, budget_ms=60000)
    assert a.value == b.value


def test_sandwich_cyl_at_most_two_page():
    rng = random.Random(13)
    for _ in range(5):
        n = rng.randint(4, 5)
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.7)
        if not edges:
            continue
        g = Graph(n, edges)
        cyl = cylindrical_crossing_number(g, 2, budget_ms=60000)
        book = book_crossing_number(g, 2, budget_ms=60000)
        assert cyl.value <= book.value


def test_solver_timeout_reports_bound():
    g = build_named_graph("complete", [6])
    res = cylindrical_crossing_number(g, 2, budget_ms=1.0, node_cap=100)
    assert res.status == STATUS_TIMEOUT
    assert res.value is not None
    assert cyl_crossings(res.witness) == res.value


def test_curve_cover_filter_examples():
    assert curve_cover_filter(stacked_triangulation(2).map, 1)
    k4 = stacked_triangulation(1)
    assert curve_cover_filter(k4.map, 1)
    assert not curve_cover_filter(stacked_triangulation(3).map, 2,
                                  budget_ms=60000)


def test_curve_cover_filter_is_sound_refuter():
    """filter=false implies the exact search finds nothing (soundness chain,
    checked on every triangulation in the corpus)."""
    for i in (1, 2, 3):
        tri = stacked_triangulation(i)
        for t in (1, 2):
            if not curve_cover_filter(tri.map, t, budget_ms=60000):
                assert t_curve_embeddable(tri.map, t,
                                          budget_ms=120000) is None


def test_curve_cover_filter_requires_triangulation():
    c4 = build_named_graph("cycle", [4])
    from tcircle.maps import plane_map_from_neighbors
    m = plane_map_from_neighbors(4, [[1, 3], [2, 0], [3, 1], [0, 2]])
    with pytest.raises(ParameterError):
        curve_cover_filter(m, 1)


def test_t_monotonicity_on_corpus():
    from tcircle.maps import plane_map_from_neighbors
    maps = [stacked_triangulation(1).map, stacked_triangulation(2).map,
            plane_map_from_neighbors(3, [[1, 2], [2, 0], [0, 1]])]
    for m in maps:
        prev = None
        for t in (1, 2, 3):
            got = t_curve_embeddable(m, t, budget_ms=60000) is not None
            if prev is not None and prev:
                assert got
            prev = got


def test_zero_cylindrical_iff_two_curve_embeddable():
    """On constructive-family graphs with known maps."""
    cases = [(stacked_triangulation(1), True),
             (stacked_triangulation(2), True)]
    for tri, _ in cases:
        g = tri.graph()
        res = cylindrical_crossing_number(g, 2, budget_ms=120000)
        emb = t_curve_embeddable(tri.map, 2, budget_ms=120000)
        assert (res.value == 0) == (emb is not None)


def test_parallel_matches_sequential():
    g = build_named_graph("complete", [5])
    seq = cylindrical_crossing_number(g, 2, budget_ms=60000)
    par = cylindrical_crossing_number(g, 2, budget_ms=60000, workers=2)
    assert par.value == seq.value and par.status == seq.status
