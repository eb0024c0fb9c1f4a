"""Constructive families: the Z table, stacked triangulations, minimal
curve witnesses, reduction instances, composed drawings, tampering."""

import pytest

from tcircle.drawings import cyl_crossings
from tcircle.errors import ConstructionError, ParameterError
from tcircle.families import (K33_BOOK_SPINE, compose_reduction_drawing,
                              gt_cache_text, gt_triangulation, hill_drawing,
                              k33_book_drawing, minimal_tcurve_triangulation,
                              parse_gt_cache, reduction_instance,
                              stacked_triangulation, z_number)
from tcircle.graphs import (build_named_graph, chen_yu_bound,
                            is_three_connected, longest_cycle_length)
from tcircle.maps import (RotationMap, TCurveCertificate,
                          certificate_crossings, check_plane_map,
                          project_graph, trace_faces, verify_certificate)
from tcircle.solvers import book_crossing_number, t_curve_embeddable

Z_TABLE = {3: 0, 4: 0, 5: 1, 6: 3, 7: 9, 8: 18, 9: 36, 10: 60, 11: 100,
           12: 150}


def test_z_number_table():
    for n, v in Z_TABLE.items():
        assert z_number(n) == v
    assert z_number(1) == 0
    with pytest.raises(ParameterError):
        z_number(0)


def test_stacked_triangulation_counts():
    sizes = {1: 4, 2: 7, 3: 16, 4: 43, 5: 124}
    for i, n in sizes.items():
        tri = stacked_triangulation(i)
        assert tri.n == n
        assert check_plane_map(tri.map) is None
        faces = trace_faces(tri.map)
        assert all(len(w) == 3 for w in faces)
        g = tri.graph()
        assert g.m == 3 * g.n - 6  # maximal planar
        assert max(tri.generation) == i


def test_stacked_triangulation_longest_cycles_under_bound():
    for i in (1, 2, 3):
        tri = stacked_triangulation(i)
        lc = longest_cycle_length(tri.graph(), budget_ms=120000)
        assert lc < chen_yu_bound(tri.n)


def test_t3_not_hamiltonian():
    t3 = stacked_triangulation(3)
    lc = longest_cycle_length(t3.graph(), budget_ms=120000)
    assert lc < 16


def test_hill_drawings_hit_z():
    for n in range(3, 13):
        d = hill_drawing(n)
        assert cyl_crossings(d) == z_number(n)
    assert len(hill_drawing(7).inner) == 3  # floor(n/2) inside


def test_minimal_tcurve_triangulation_properties():
    g2 = minimal_tcurve_triangulation(2, budget_ms=300000)
    g = g2.graph()
    assert 8 <= g.n <= 16
    assert g.m == 3 * g.n - 6
    assert is_three_connected(g)
    assert t_curve_embeddable(g2.map, 1, budget_ms=120000) is None
    cert = t_curve_embeddable(g2.map, 2, budget_ms=120000)
    assert cert is not None
    assert verify_certificate(g, cert, 2, 0) is None


def test_gt_cache_round_trip(tmp_path):
    g2 = gt_triangulation(2, budget_ms=300000)
    text = gt_cache_text(g2, 2)
    again = parse_gt_cache(text, 2)
    assert again.map == g2.map and again.generation == g2.generation
    broken = text.replace("sha256=", "sha256=0")
    with pytest.raises(ConstructionError):
        parse_gt_cache(broken, 2)
    with pytest.raises(ConstructionError):
        parse_gt_cache(text, 3)


def test_k33_constant_layout():
    d = k33_book_drawing()
    assert d.spine == K33_BOOK_SPINE
    from tcircle.drawings import book_crossings
    assert book_crossings(d) == 1


def test_reduction_instance_shapes():
    k4 = build_named_graph("complete", [4])
    inst = reduction_instance(k4, 2, 0)
    gt = gt_triangulation(2)
    assert inst.graph.n == 4 + gt.n
    assert inst.roles == ("input", "gadget-Gt")
    c4 = build_named_graph("cycle", [4])
    inst3 = reduction_instance(c4, 2, 3)
    assert inst3.graph.n == 4 + gt.n + 18
    assert sum(1 for r in inst3.roles if r.startswith("gadget-K33")) == 3
    # size grows linearly in |V(g)| + k for fixed t
    sizes = [reduction_instance(build_named_graph("path", [n]), 2, 1).graph.n
             for n in (2, 4, 6)]
    assert sizes[1] - sizes[0] == sizes[2] - sizes[1] == 2


def test_nonplanar_input_keeps_reduction_nonplanar():
    # the union contains a K33 component, so it cannot have any 0-crossing
    # drawing; its 2-page refutation mirrors the input's
    k33 = build_named_graph("complete_bipartite", [3, 3])
    inst = reduction_instance(k33, 2, 0)
    from tcircle.solvers import is_two_page_embeddable
    assert not is_two_page_embeddable(k33)
    assert inst.graph.n == 6 + gt_triangulation(2).n


def _compose(kind, k):
    g = build_named_graph(kind, [4])
    bd = book_crossing_number(g, 2).witness
    return compose_reduction_drawing(bd, 2, k), g


def test_compose_reduction_drawing_counts():
    for kind in ("cycle", "complete"):
        for k in (0, 2):
            cert, g = _compose(kind, k)
            assert cert.t == 2
            assert certificate_crossings(cert) == k
            gp = project_graph(cert.map)
            assert verify_certificate(gp, cert, 2, k) is None
            gt = gt_triangulation(2)
            assert gp.n == 4 + gt.n + 6 * k


def test_compose_requires_clean_two_page_drawing():
    k5 = build_named_graph("complete", [5])
    bd = book_crossing_number(k5, 2).witness  # has one crossing
    with pytest.raises(ParameterError):
        compose_reduction_drawing(bd, 2, 0)


def test_tampering_uncovered_vertex():
    cert, _ = _compose("cycle", 0)
    gp = project_graph(cert.map)
    # cut one vertex out of its blue cycle by splicing the two neighbouring
    # blue segments into one that skips it
    cyc = max(cert.blue_cycles, key=len)
    victim_seg = cyc[0]
    nxt_seg = cyc[1]
    m = cert.map
    shared = set(m.seg_ends[victim_seg]) & set(m.seg_ends[nxt_seg])
    victim = shared.pop()
    other_a = next(x for x in m.seg_ends[victim_seg] if x != victim)
    other_b = next(x for x in m.seg_ends[nxt_seg] if x != victim)
    ends = list(m.seg_ends)
    ends[victim_seg] = (other_a, other_b)
    rots = []
    for v, rot in enumerate(m.rotations):
        if v == victim:
            rot = tuple(d for d in rot
                        if (d >> 1) not in (victim_seg, nxt_seg))
        else:
            rot = tuple(2 * victim_seg + (0 if ends[victim_seg][0] == v
                                          else 1)
                        if (d >> 1) == nxt_seg else d for d in rot)
        rots.append(rot)
    # note: this crude surgery may or may not stay a sphere map; the
    # verifier must reject it one way or the other, never accept
    new_cyc = tuple(s for s in cyc if s != nxt_seg)
    cycles = tuple(new_cyc if c == cyc else c for c in cert.blue_cycles)
    bad = TCurveCertificate(
        RotationMap(m.node_kinds, tuple(ends), m.seg_edge, tuple(rots)),
        cycles, cert.t, cert.claimed_k)
    reason = verify_certificate(gp, bad, bad.t, 0)
    assert reason is not None


def test_tampering_overlapping_cycles():
    cert, _ = _compose("cycle", 0)
    gp = project_graph(cert.map)
    # claim a vertex belongs to both cycles by rerouting one cycle's
    # segment endpoint onto the other cycle
    a = cert.blue_cycles[0]
    b = cert.blue_cycles[1]
    m = cert.map
    va = m.seg_ends[a[0]][0]
    sb = b[0]
    ends = list(m.seg_ends)
    old = ends[sb]
    ends[sb] = (va, old[1])
    bad_map = RotationMap(m.node_kinds, tuple(ends), m.seg_edge, m.rotations)
    bad = TCurveCertificate(bad_map, cert.blue_cycles, cert.t,
                            cert.claimed_k)
    reason = verify_certificate(gp, bad, bad.t, 0)
    assert reason is not None


def test_tampering_dropped_k33_crossing():
    cert, _ = _compose("cycle", 1)
    gp = project_graph(cert.map)
    m = cert.map
    z = m.crossing_ids()[0]
    # remove the crossing node and reconnect both edges straight through
    rot = m.rotations[z]
    segs = [d >> 1 for d in rot]
    e_segs = [s for s in segs if m.seg_edge[s] == m.seg_edge[segs[0]]]
    f_segs = [s for s in segs if s not in e_segs]
    ends = list(m.seg_ends)
    edges = list(m.seg_edge)

    def other_end(s):
        a, b = ends[s]
        return a if b == z else b

    keep = [s for s in range(m.num_segments)
            if s not in (e_segs[1], f_segs[1])]
    renum = {s: i for i, s in enumerate(keep)}
    new_ends = []
    new_edges = []
    for s in keep:
        if s == e_segs[0]:
            new_ends.append((other_end(e_segs[0]), other_end(e_segs[1])))
        elif s == f_segs[0]:
            new_ends.append((other_end(f_segs[0]), other_end(f_segs[1])))
        else:
            new_ends.append(ends[s])
        new_edges.append(edges[s])
    sub = {2 * e_segs[1] + 1: 2 * renum[e_segs[0]] + 1,
           2 * f_segs[1] + 1: 2 * renum[f_segs[0]] + 1}

    def renum_dart(d):
        if d in sub:
            return sub[d]
        s = d >> 1
        return 2 * renum[s] + (d & 1)

    rots = []
    for v in range(m.num_nodes):
        if v == z:
            rots.append(())
        else:
            rots.append(tuple(renum_dart(d) for d in m.rotations[v]
                              if (d >> 1) in renum or d in sub))
    kinds = list(m.node_kinds)
    # drop the crossing node entirely
    node_keep = [v for v in range(m.num_nodes) if v != z]
    node_renum = {v: i for i, v in enumerate(node_keep)}
    final_ends = tuple((node_renum[a], node_renum[b]) for (a, b) in new_ends)
    final_rots = tuple(rots[v] for v in node_keep)
    bad_map = RotationMap(tuple(kinds[v] for v in node_keep), final_ends,
                          tuple(new_edges), final_rots)
    cycles = tuple(tuple(renum[s] for s in cyc) for cyc in cert.blue_cycles)
    bad = TCurveCertificate(bad_map, cycles, cert.t, 0)
    reason = verify_certificate(gp, bad, bad.t, 0)
    assert reason is not None and "plane-map" in reason


def test_lowered_budget_rejected():
    cert, _ = _compose("cycle", 2)
    gp = project_graph(cert.map)
    assert "crossing-budget" in verify_certificate(gp, cert, 2, 1)


def test_negative_direction_spot_check():
    """The union of the 16-vertex round with the gadget admits no 2-curve
    system: the 16-vertex component alone refutes it."""
    from test_curves import union_map
    t3 = stacked_triangulation(3)
    g2 = gt_triangulation(2)
    m = union_map(t3.map, g2.map)
    assert t_curve_embeddable(m, 2, budget_ms=300000) is None


def test_render_gadget_certificate():
    from tcircle.svg import render_svg
    g2 = gt_triangulation(2)
    cert = t_curve_embeddable(g2.map, 2, budget_ms=120000)
    body = render_svg(cert)
    assert body.count("stroke-dasharray") >= 2  # two dashed closed curves
    assert "curves=2" in body
