"""Acceptance gate: every exit criterion at its stated tolerance.

Each test prints one PASS line.  The K7 stretch target runs only when
TCIRCLE_STRETCH=1 is set (it needs the compiled kernels to fit its budget).
"""

import os
import random
import time
from fractions import Fraction

import pytest

import tcircle.kernels as kernels
from tcircle.drawings import (StripLift, book_crossings, cyl_crossings,
                              strip_pair_crossings)
from tcircle.families import (compose_reduction_drawing, hill_drawing,
                              minimal_tcurve_triangulation,
                              stacked_triangulation, z_number)
from tcircle.graphs import (Graph, build_named_graph, chen_yu_bound,
                            is_three_connected, longest_cycle_length)
from tcircle.maps import (certificate_crossings, check_cover,
                          extract_curve_cover, merge_coface_curves,
                          project_graph, trace_faces, verify_certificate)
from tcircle.planarize import drawing_to_certificate
from tcircle.solvers import (STATUS_OPTIMAL, book_crossing_number,
                             curve_cover_filter, cylindrical_crossing_number,
                             t_curve_embeddable)

from certsurgery import add_blue_loop, drop_crossing, remove_blue_cycle
from test_drawings import random_valid_drawing, reflected, rotated


def _ok(msg):
    print(f"PASS {msg}")


def test_criterion_1_z_table():
    want = [0, 0, 1, 3, 9, 18, 36, 60, 100, 150]
    t0 = time.monotonic()
    got = [z_number(n) for n in range(3, 13)]
    assert got == want
    assert time.monotonic() - t0 < 1.0
    _ok("criterion 1: z table 3..12 exact")


def test_criterion_2_hill_drawings():
    t0 = time.monotonic()
    for n in range(4, 13):
        assert cyl_crossings(hill_drawing(n)) == z_number(n)
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0, f"hill drawings took {elapsed:.2f}s"
    _ok(f"criterion 2: hill drawings match the count table ({elapsed:.2f}s)")


def test_criterion_3_cylindrical_solver():
    for n, want in [(4, 0), (5, 1), (6, 3)]:
        t0 = time.monotonic()
        res = cylindrical_crossing_number(build_named_graph("complete", [n]),
                                          2, budget_ms=60000)
        elapsed = time.monotonic() - t0
        assert res.status == STATUS_OPTIMAL and res.value == want
        assert res.winding_cap_used is not None
        assert elapsed < 60.0
        _ok(f"criterion 3: cylindrical K{n} -> {want} "
            f"(cap {res.winding_cap_used}, {elapsed:.1f}s)")


@pytest.mark.skipif(os.environ.get("TCIRCLE_STRETCH") != "1",
                    reason="stretch target; set TCIRCLE_STRETCH=1")
def test_criterion_3_stretch_k7():
    t0 = time.monotonic()
    res = cylindrical_crossing_number(build_named_graph("complete", [7]), 2,
                                      budget_ms=600000)
    elapsed = time.monotonic() - t0
    assert res.status == STATUS_OPTIMAL and res.value == 9
    assert elapsed < 600.0
    _ok(f"criterion 3 stretch: cylindrical K7 -> 9 ({elapsed:.0f}s)")


def test_criterion_4_book_solver():
    cases = [(build_named_graph("complete_bipartite", [3, 3]), 2, 1),
             (build_named_graph("complete", [5]), 2, 1),
             (build_named_graph("complete", [6]), 2, 3)]
    for g, p, want in cases:
        t0 = time.monotonic()
        res = book_crossing_number(g, p, budget_ms=60000)
        elapsed = time.monotonic() - t0
        assert res.status == STATUS_OPTIMAL and res.value == want
        assert elapsed < 60.0
    t0 = time.monotonic()
    for n in range(3, 11):
        res = book_crossing_number(build_named_graph("cycle", [n]), 1,
                                   budget_ms=60000)
        assert res.value == 0
    assert time.monotonic() - t0 < 60.0
    _ok("criterion 4: book solver K33/K5/K6 and outerplanar cycles")


def test_criterion_5_triangulation_family():
    sizes = {1: 4, 2: 7, 3: 16, 4: 43}
    for i, n in sizes.items():
        tri = stacked_triangulation(i)
        assert tri.n == n
        assert all(len(w) == 3 for w in trace_faces(tri.map))
    t3 = stacked_triangulation(3)
    lc = longest_cycle_length(t3.graph(), budget_ms=120000)
    bound = chen_yu_bound(16)
    assert lc < bound and lc < 16
    assert abs(bound - 20.13) < 0.01
    _ok(f"criterion 5: sizes 4,7,16,43; longest cycle of the 16-vertex "
        f"round is {lc} < {bound:.2f} and < 16")


def test_criterion_6_minimal_witness_pipeline():
    t0 = time.monotonic()
    g2 = minimal_tcurve_triangulation(2, budget_ms=600000)
    g = g2.graph()
    assert g.m == 3 * g.n - 6
    assert all(len(w) == 3 for w in trace_faces(g2.map))
    assert is_three_connected(g)
    cert = t_curve_embeddable(g2.map, 2, budget_ms=120000)
    assert cert is not None
    assert verify_certificate(g, cert, 2, 0) is None
    assert t_curve_embeddable(g2.map, 1, budget_ms=120000) is None
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    _ok(f"criterion 6: minimal 2-curve witness on {g.n} vertices, "
        f"re-verified ({elapsed:.0f}s)")


def test_criterion_7_reduction_round_trip():
    for kind, params in [("cycle", [4]), ("complete", [4]), ("cycle", [6])]:
        g = build_named_graph(kind, params)
        bd = book_crossing_number(g, 2, budget_ms=60000).witness
        for k in (0, 2):
            cert = compose_reduction_drawing(bd, 2, k, budget_ms=120000)
            gp = project_graph(cert.map)
            assert verify_certificate(gp, cert, 2, k) is None
            assert certificate_crossings(cert) == k
    # tampering on a k=1 instance
    bd = book_crossing_number(build_named_graph("cycle", [4]), 2).witness
    cert = compose_reduction_drawing(bd, 2, 1, budget_ms=120000)
    gp = project_graph(cert.map)
    uncovered = remove_blue_cycle(cert, 0)
    reason = verify_certificate(gp, uncovered, uncovered.t, 1)
    assert reason is not None and "uncovered-vertex" in reason
    overlapped = add_blue_loop(cert, 0)
    reason = verify_certificate(gp, overlapped, overlapped.t, 1)
    assert reason is not None and "blue-overlap" in reason
    dropped = drop_crossing(cert)
    reason = verify_certificate(gp, dropped, dropped.t, 1)
    assert reason is not None and "plane-map" in reason
    _ok("criterion 7: reduction certificates exact at k; tampering "
        "rejected with the right clauses")


def test_criterion_8_cover_machinery():
    t0 = time.monotonic()
    assert not curve_cover_filter(stacked_triangulation(3).map, 2,
                                  budget_ms=60000)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    # covers extracted from accepted certificates satisfy the invariants
    certs = [drawing_to_certificate(hill_drawing(n)) for n in (5, 6, 8)]
    certs.append(t_curve_embeddable(stacked_triangulation(2).map, 1))
    for cert in certs:
        cover = extract_curve_cover(cert)
        assert check_cover(cover, len(cert.map.vertex_ids())) is None
    cover6 = extract_curve_cover(certs[1])
    assert sorted(len(p.vertices) for p in cover6.parts) == [3, 3]
    _ok(f"criterion 8: 16-vertex refutation in {elapsed:.1f}s; covers "
        "well-formed (3+3 split on the 6-vertex drawing)")


def test_criterion_9_coface_merges():
    from test_maps import k4_map
    from tcircle.curves import find_curve_system
    # three loops in one face collapse to one curve
    cert = find_curve_system(k4_map(), 4, float("inf"))
    seg_cycle = {s: i for i, c in enumerate(cert.blue_cycles) for s in c}
    face = next(fid for fid, walk in enumerate(trace_faces(cert.map))
                if len({seg_cycle[d >> 1] for d in walk
                        if cert.map.is_blue(d >> 1)}) == 3)
    merged = merge_coface_curves(cert, face)
    assert merged.t == cert.t - 2
    g = build_named_graph("complete", [4])
    assert verify_certificate(g, merged, merged.t, 0) is None
    # a loop and a two-vertex curve merge as well
    cert2 = find_curve_system(k4_map(), 3, float("inf"))
    seg_cycle = {s: i for i, c in enumerate(cert2.blue_cycles) for s in c}
    face = next(fid for fid, walk in enumerate(trace_faces(cert2.map))
                if len({seg_cycle[d >> 1] for d in walk
                        if cert2.map.is_blue(d >> 1)}) >= 2)
    merged2 = merge_coface_curves(cert2, face)
    assert merged2.t < cert2.t
    assert verify_certificate(g, merged2, merged2.t, 0) is None
    _ok("criterion 9: coface curve merges reduce the count and re-verify")


def test_criterion_10_property_suites():
    rng = random.Random(2026)
    cases = 0

    # strip formula symmetry and shift invariance
    def lift():
        w = rng.randint(-3, 3)
        return StripLift(Fraction(rng.randint(0, 11), 12), rng.randint(0, 1),
                         Fraction(rng.randint(0, 11), 12) + w,
                         rng.randint(0, 1), w)

    for _ in range(700):
        e, f = lift(), lift()
        c = strip_pair_crossings(e, f)
        assert c == strip_pair_crossings(f, e) >= 0
        s = rng.randint(-2, 2)
        assert c == strip_pair_crossings(
            StripLift(e.x0 + s, e.l0, e.x1 + s, e.l1, e.w),
            StripLift(f.x0 + s, f.l0, f.x1 + s, f.l1, f.w))
        cases += 1

    # rotation/reflection invariance of the cylindrical count
    done = 0
    while done < 150:
        d = random_valid_drawing(rng)
        if d is None:
            continue
        c = cyl_crossings(d)
        r = rotated(d, rng.randint(0, len(d.inner)),
                    rng.randint(0, max(len(d.outer), 1)))
        assert cyl_crossings(r) == c
        assert cyl_crossings(reflected(d)) == c
        done += 1
        cases += 1

    # witness recount consistency + relabeling invariance of solver values
    done = 0
    while done < 30:
        n = rng.randint(3, 5)
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.7)
        if not edges:
            continue
        g = Graph(n, edges)
        bres = book_crossing_number(g, 2, budget_ms=60000)
        assert book_crossings(bres.witness) == bres.value
        cres = cylindrical_crossing_number(g, 2, budget_ms=60000)
        assert cyl_crossings(cres.witness) == cres.value
        perm = list(range(n))
        rng.shuffle(perm)
        assert book_crossing_number(g.relabeled(perm), 2,
                                    budget_ms=60000).value == bres.value
        assert cylindrical_crossing_number(
            g.relabeled(perm), 2, budget_ms=60000).value == cres.value
        # cylindrical never beats two pages the wrong way
        assert cres.value <= bres.value
        done += 1
        cases += 5

    assert cases >= 1000
    _ok(f"criterion 10: property suites over {cases} randomized cases")
