"""Curve-system search: degenerate curves, certificates, components."""

import pytest

from tcircle.errors import ParameterError, SearchBudgetExceeded
from tcircle.graphs import build_named_graph
from tcircle.maps import (RotationMap, MapBuilder, VERTEX,
                          plane_map_from_neighbors, project_graph,
                          verify_certificate)
from tcircle.solvers import t_curve_embeddable

K4_NEIGHBORS = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]


def union_map(a: RotationMap, b: RotationMap) -> RotationMap:
    kinds = a.node_kinds + b.node_kinds
    ends = a.seg_ends + tuple((x + a.num_nodes, y + a.num_nodes)
                              for (x, y) in b.seg_ends)
    na = sum(1 for e in a.seg_edge if e is not None)
    edges = a.seg_edge + tuple(None if e is None else e + na
                               for e in b.seg_edge)
    rots = a.rotations + tuple(tuple(d + 2 * a.num_segments for d in r)
                               for r in b.rotations)
    return RotationMap(kinds, ends, edges, rots)


def test_k4_hamiltonian_curve():
    m = plane_map_from_neighbors(4, K4_NEIGHBORS)
    cert = t_curve_embeddable(m, 1)
    assert cert is not None and cert.t == 1
    g = build_named_graph("complete", [4])
    assert verify_certificate(g, cert, 1, 0) is None


def test_loop_and_two_vertex_curves():
    # a single edge needs one 2-vertex curve (two parallel blue arcs)
    b = MapBuilder()
    b.add_node(VERTEX)
    b.add_node(VERTEX)
    b.add_segment(0, 1, 0)
    b.rotations[0] = [0]
    b.rotations[1] = [1]
    m = b.finish()
    cert = t_curve_embeddable(m, 1)
    assert cert is not None and len(cert.blue_cycles) == 1
    assert len(cert.blue_cycles[0]) == 2
    # an isolated vertex is covered by a loop
    b2 = MapBuilder()
    b2.add_node(VERTEX)
    m2 = b2.finish()
    cert2 = t_curve_embeddable(m2, 1)
    assert cert2 is not None
    assert len(cert2.blue_cycles[0]) == 1


def test_monotone_in_t():
    m = plane_map_from_neighbors(3, [[1, 2], [2, 0], [0, 1]])
    for t in (1, 2, 3):
        cert = t_curve_embeddable(m, t)
        assert cert is not None and cert.t <= t
        g = build_named_graph("cycle", [3])
        assert verify_certificate(g, cert, t, 0) is None


def test_spanning_curve_across_components():
    c3 = plane_map_from_neighbors(3, [[1, 2], [2, 0], [0, 1]])
    m = union_map(c3, c3)
    cert = t_curve_embeddable(m, 1, budget_ms=30000)
    assert cert is not None and cert.t == 1
    assert verify_certificate(project_graph(m), cert, 1, 0) is None


def test_component_refutation():
    from tcircle.families import stacked_triangulation
    t3 = stacked_triangulation(3)
    c3 = plane_map_from_neighbors(3, [[1, 2], [2, 0], [0, 1]])
    m = union_map(t3.map, c3)
    # one component already needs more than one curve
    assert t_curve_embeddable(m, 1, budget_ms=60000) is None


def test_requires_plane_map():
    bad = plane_map_from_neighbors(5, [[1, 2, 3, 4], [0, 2, 3, 4],
                                       [0, 1, 3, 4], [0, 1, 2, 4],
                                       [0, 1, 2, 3]])
    with pytest.raises(ParameterError):
        t_curve_embeddable(bad, 2)


def test_budget_is_unknown_not_no():
    from tcircle.families import stacked_triangulation
    t3 = stacked_triangulation(3)
    with pytest.raises(SearchBudgetExceeded):
        t_curve_embeddable(t3.map, 1, budget_ms=0.0)
