"""Planarization of book and cylindrical drawings into verified certificates.

The combinatorial crossing formulas are the authority on *how many* times
edges cross; this module additionally needs the *order* of crossings along
every edge and the cyclic order of branches at every crossing to build a
rotation map.  Those are read off an exact-rational geometric realization:

* disk regions:  vertices at rational approximations of circle points
  (verified to be in strictly convex position), edges as straight chords;
* the annulus:  the universal-cover strip, cross edges as straight segments
  between the two boundary levels, same-side edges as low "tents", with
  every pair's geometric crossing count checked against the strip formula
  and the whole construction retried with smaller tents on any mismatch or
  degeneracy.

Blue cycles run along the circles (a loop for a 1-vertex circle, a pair of
parallel segments for a 2-vertex circle, an empty circle is omitted).  The
result must pass the certificate verifier and realize exactly the formula
crossing count, or construction fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .drawings import (ROUTE_ANNULUS, ROUTE_INNER, ROUTE_OUTER, BookDrawing,
                       CylindricalDrawing, StripLift, book_crossings,
                       cyl_crossings, edge_lift, strip_pair_crossings,
                       validate_book, validate_cylindrical)
from .errors import ConstructionError, ParameterError
from .maps import (CROSSING, VERTEX, MapBuilder, TCurveCertificate,
                   project_graph, verify_certificate)

Vec = tuple[Fraction, Fraction]


def _cross(o: Vec, a: Vec, b: Vec) -> Fraction:
    return ((a[0] - o[0]) * (b[1] - o[1])
            - (a[1] - o[1]) * (b[0] - o[0]))


def _vcross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _convex_points(m: int, denom: int, jitter: int) -> list[Vec]:
    """Rational circle points in strictly convex ccw position.

    ``jitter`` deterministically skews the angles to break symmetric
    concurrences (e.g. all main diagonals of a regular polygon meeting in
    the center)."""
    pts = []
    for r in range(m):
        ang = 2 * math.pi * (r + jitter * (r + 1) / (31.0 * (m + 1))) / m
        pts.append((Fraction(round(math.cos(ang) * denom), denom),
                    Fraction(round(math.sin(ang) * denom), denom)))
    if m >= 3:
        for i in range(m):
            if _cross(pts[i], pts[(i + 1) % m], pts[(i + 2) % m]) <= 0:
                raise ConstructionError("circle points not strictly convex")
    if len(set(pts)) != m:
        raise ConstructionError("circle points collide")
    return pts


def _ccw_key(v: Vec):
    """Total order of nonzero vectors by angle in [0, 2pi)."""
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    # within a halfplane -x/y ascends with angle; the axis direction that
    # opens the halfplane (angle 0 or pi) sorts first
    return (half, Fraction(-v[0], v[1]) if v[1] != 0 else Fraction(-10 ** 9))


def _sort_ccw(items: list[tuple[Vec, object]]) -> list[object]:
    keyed = [(_ccw_key(v), i, tag) for i, (v, tag) in enumerate(items)]
    keyed.sort()
    for a in range(1, len(keyed)):
        if keyed[a][0] == keyed[a - 1][0]:
            raise ConstructionError("parallel branch directions at a node")
    return [tag for (_, _, tag) in keyed]


# ---------------------------------------------------------------------------
# Disk gadget
# ---------------------------------------------------------------------------


@dataclass
class _DiskGadget:
    """Crossing structure of chords inside a disk.

    crossings: list of (edge_i, edge_j, point, dirs) in creation order
    on_edge:   edge -> sorted list of (param_from_first_endpoint, crossing idx)
    at_vertex: circle rank -> chord edge ids in disk-sweep order
               (sweeping from the next circle vertex around to the previous)
    """

    crossings: list
    on_edge: dict
    at_vertex: dict


def _disk_gadget(order: tuple[int, ...], chords: list[tuple[int, int, int]],
                 denom: int, jitter: int) -> _DiskGadget:
    """chords: (edge_id, u, v) with both endpoints on this circle."""
    m = len(order)
    rank = {v: i for i, v in enumerate(order)}
    pts = _convex_points(m, denom, jitter)
    crossings = []
    on_edge: dict[int, list] = {e: [] for (e, _, _) in chords}
    for i in range(len(chords)):
        ei, u1, v1 = chords[i]
        a1, b1 = pts[rank[u1]], pts[rank[v1]]
        for j in range(i + 1, len(chords)):
            ej, u2, v2 = chords[j]
            if len({u1, v1, u2, v2}) != 4:
                continue
            a2, b2 = pts[rank[u2]], pts[rank[v2]]
            r = (b1[0] - a1[0], b1[1] - a1[1])
            s = (b2[0] - a2[0], b2[1] - a2[1])
            den = _vcross(r, s)
            if den == 0:
                continue
            qp = (a2[0] - a1[0], a2[1] - a1[1])
            t = _vcross(qp, s) / den
            u = _vcross(qp, r) / den
            if not (0 < t < 1 and 0 < u < 1):
                continue
            point = (a1[0] + t * r[0], a1[1] + t * r[1])
            idx = len(crossings)
            crossings.append((ei, ej, point, {ei: r, ej: s}))
            on_edge[ei].append((t, idx))
            on_edge[ej].append((u, idx))
    for e, lst in on_edge.items():
        lst.sort()
        for a in range(1, len(lst)):
            if lst[a][0] == lst[a - 1][0]:
                raise ConstructionError("coincident crossings along a chord")
    at_vertex: dict[int, list[int]] = {}
    for r0 in range(m):
        v = order[r0]
        incident = [(e, u1, v1) for (e, u1, v1) in chords if v in (u1, v1)]
        incident.sort(key=lambda t: (rank[t[1] if t[2] == v else t[2]] - r0)
                      % m)
        at_vertex[r0] = [e for (e, _, _) in incident]
    return _DiskGadget(crossings, on_edge, at_vertex)


def _disk_check(order, chords, gadget: _DiskGadget):
    """Geometric crossing count must equal circular interleaving, pairwise."""
    m = len(order)
    rank = {v: i for i, v in enumerate(order)}
    want = 0
    for i in range(len(chords)):
        _, u1, v1 = chords[i]
        for j in range(i + 1, len(chords)):
            _, u2, v2 = chords[j]
            if len({u1, v1, u2, v2}) != 4:
                continue
            ca = (rank[u2] - rank[u1]) % m
            da = (rank[v2] - rank[u1]) % m
            ba = (rank[v1] - rank[u1]) % m
            if (0 < ca < ba) != (0 < da < ba):
                want += 1
    if want != len(gadget.crossings):
        raise ConstructionError(
            f"disk geometry found {len(gadget.crossings)} crossings, "
            f"interleaving predicts {want}")


# ---------------------------------------------------------------------------
# Annulus gadget
# ---------------------------------------------------------------------------


@dataclass
class _ArcGeom:
    edge: int
    lift: StripLift
    pieces: list[tuple[Vec, Vec]]  # polyline pieces, canonical frame

    def direction_at_start(self) -> Vec:
        (p, q) = self.pieces[0]
        return (q[0] - p[0], q[1] - p[1])

    def direction_at_end(self) -> Vec:
        (p, q) = self.pieces[-1]
        return (q[0] - p[0], q[1] - p[1])


def _make_arc(edge: int, lift: StripLift, height: Fraction) -> _ArcGeom:
    y0 = Fraction(lift.l0)
    y1 = Fraction(lift.l1)
    p = (lift.x0, y0)
    q = (lift.x1, y1)
    if lift.l0 != lift.l1:
        return _ArcGeom(edge, lift, [(p, q)])
    apex_y = y0 + height if lift.l0 == 0 else y0 - height
    apex = ((lift.x0 + lift.x1) / 2, apex_y)
    return _ArcGeom(edge, lift, [(p, apex), (apex, q)])


def _piece_intersections(a: _ArcGeom, b: _ArcGeom, shift: int):
    """Proper crossings of a's pieces with b's pieces translated by shift.

    Returns a list of (point, param_key_a, param_key_b, dir_a, dir_b);
    raises ConstructionError on any degenerate contact (endpoint touch away
    from a true shared vertex, overlapping pieces), which triggers a retry
    with different tent heights.
    """
    out = []
    for ia, (p1, p2) in enumerate(a.pieces):
        r = (p2[0] - p1[0], p2[1] - p1[1])
        for ib, (q1r, q2r) in enumerate(b.pieces):
            q1 = (q1r[0] + shift, q1r[1])
            q2 = (q2r[0] + shift, q2r[1])
            s = (q2[0] - q1[0], q2[1] - q1[1])
            den = _vcross(r, s)
            qp = (q1[0] - p1[0], q1[1] - p1[1])
            if den == 0:
                if _vcross(qp, r) == 0:
                    # collinear pieces: only tolerable when disjoint
                    raise ConstructionError("collinear arc pieces")
                continue
            t = _vcross(qp, s) / den
            u = _vcross(qp, r) / den
            if t < 0 or t > 1 or u < 0 or u > 1:
                continue
            a_end = (ia == 0 and t == 0) or (ia == len(a.pieces) - 1 and t == 1)
            b_end = (ib == 0 and u == 0) or (ib == len(b.pieces) - 1 and u == 1)
            if a_end and b_end:
                continue  # contact at shared endpoints (adjacent edges)
            if t in (0, 1) or u in (0, 1):
                raise ConstructionError("degenerate contact between arcs")
            point = (p1[0] + t * r[0], p1[1] + t * r[1])
            out.append((point, (ia, t), (ib, u), r, s))
    return out


def _annulus_gadget(ann: list[tuple[int, StripLift]], heights: dict):
    """Crossing structure of annulus arcs, checked against the strip formula.

    Returns (crossings, on_edge, start_dirs) where crossings are
    (edge_i, edge_j, point, dirs) and on_edge maps edges to sorted
    (param_key, crossing_index) lists in canonical-lift coordinates.
    """
    arcs = {e: _make_arc(e, lift, heights[e]) for (e, lift) in ann}
    crossings = []
    on_edge: dict[int, list] = {e: [] for (e, _) in ann}
    items = sorted(arcs.values(), key=lambda a: a.edge)
    for i in range(len(items)):
        a = items[i]
        for j in range(i + 1, len(items)):
            b = items[j]
            kmax = abs(a.lift.w) + abs(b.lift.w) + 3
            found = []
            for k in range(-kmax, kmax + 1):
                for (pt, ka, kb, da, db) in _piece_intersections(a, b, k):
                    found.append((pt, ka, (kb, k), da, db))
            want = strip_pair_crossings(a.lift, b.lift)
            if len(found) != want:
                raise ConstructionError(
                    f"annulus geometry found {len(found)} crossings between "
                    f"edges {a.edge} and {b.edge}, formula says {want}")
            for (pt, ka, (kb, k), da, db) in found:
                idx = len(crossings)
                crossings.append((a.edge, b.edge, pt, {a.edge: da,
                                                       b.edge: db}))
                on_edge[a.edge].append((ka, idx))
                # map the point back into b's canonical frame
                on_edge[b.edge].append((kb, idx))
        # self-translates must stay disjoint (self-simple edges)
        kmax = 2 * abs(a.lift.w) + 3
        for k in range(1, kmax + 1):
            if _piece_intersections(a, a, k):
                raise ConstructionError(
                    f"annulus edge {a.edge} self-intersects geometrically")
    for e, lst in on_edge.items():
        lst.sort()
        for x in range(1, len(lst)):
            if lst[x][0] == lst[x - 1][0]:
                raise ConstructionError("coincident crossings along an arc")
    return arcs, crossings, on_edge


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def _slope_key(v: Vec) -> Fraction:
    if v[1] == 0:
        raise ConstructionError("horizontal arc direction at a vertex")
    return Fraction(v[0], v[1])


def _build_certificate(inner: tuple[int, ...], outer: tuple[int, ...],
                       route_of: dict, edges: tuple[tuple[int, int], ...],
                       lifts: dict, denom: int, tent_height: Fraction,
                       jitter: int) -> TCurveCertificate:
    n = len(inner) + len(outer)
    rank = {}
    for i, v in enumerate(inner):
        rank[v] = i
    for i, v in enumerate(outer):
        rank[v] = i

    # order-preserving lift jitter: counts depend only on coordinate orders
    # within each level, so nudging vertices by tiny distinct amounts never
    # changes a count, while a seeded pseudo-random pattern breaks symmetric
    # concurrences; every attempt is still gated by the exact checks below
    if jitter:
        import random
        lcm = max(len(inner), 1) * max(len(outer), 1)
        unit = Fraction(1, 4 * lcm * (1 << 16))
        rng = random.Random(0xC0FFEE + jitter)
        table = [rng.randrange(1, 1 << 16) for _ in range(len(rank) + 1)]

        def nudge(v):
            return table[v] * unit / (1 << 16)

        nudged = {}
        for ei, lift in lifts.items():
            u, v = edges[ei]
            a, bb = (u, v) if u < v else (v, u)
            nudged[ei] = StripLift(lift.x0 + nudge(a), lift.l0,
                                   lift.x1 + nudge(bb), lift.l1, lift.w)
        lifts = nudged

    chords_in = [(ei, u, v) for ei, (u, v) in enumerate(edges)
                 if route_of[(u, v)][0] == ROUTE_INNER]
    chords_out = [(ei, u, v) for ei, (u, v) in enumerate(edges)
                  if route_of[(u, v)][0] == ROUTE_OUTER]
    ann = [(ei, lifts[ei]) for ei, (u, v) in enumerate(edges)
           if route_of[(u, v)][0] == ROUTE_ANNULUS]

    gad_in = _disk_gadget(inner, chords_in, denom, jitter) if inner else None
    if gad_in:
        _disk_check(inner, chords_in, gad_in)
    outer_rev = tuple(reversed(outer))
    gad_out = (_disk_gadget(outer_rev, chords_out, denom, jitter)
               if outer else None)
    if gad_out:
        _disk_check(outer_rev, chords_out, gad_out)


    # tents are similar triangles with span-ranked side slopes: a longer
    # span gets a strictly steeper side, which makes nested tents (possibly
    # sharing a foot at a common vertex) provably disjoint while partially
    # overlapping tents cross exactly once
    same_side = [(abs(l.x1 - l.x0), e) for (e, l) in ann if l.l0 == l.l1]
    same_side.sort()
    cnt = len(same_side)
    heights = {}
    for pos, (span, e) in enumerate(same_side):
        slope = tent_height * (pos + 2) / (cnt + 2)
        heights[e] = slope * span / 2
    for (e, l) in ann:
        heights.setdefault(e, Fraction(0))
    arcs, ann_crossings, ann_on_edge = _annulus_gadget(ann, heights)

    b = MapBuilder()
    for _ in range(n):
        b.add_node(VERTEX)

    # crossing nodes in deterministic region order; the annulus strip frame
    # and the reversed outer gadget are mirrored relative to the ring plane
    cross_node = {}
    cross_info = []  # (node, edge_i, edge_j, dirs, mirrored)
    for region, gad, mirrored in (("in", gad_in, False),
                                  ("out", gad_out, False)):
        if gad is None:
            continue
        for ci, (ei, ej, pt, dirs) in enumerate(gad.crossings):
            node = b.add_node(CROSSING)
            cross_node[(region, ci)] = node
            cross_info.append((node, ei, ej, dirs, mirrored))
    for ci, (ei, ej, pt, dirs) in enumerate(ann_crossings):
        node = b.add_node(CROSSING)
        cross_node[("ann", ci)] = node
        cross_info.append((node, ei, ej, dirs, True))

    # chains: edge -> [u, x1, ..., v] node ids ordered from the smaller id
    chain_nodes = {}
    for ei, (u, v) in enumerate(edges):
        kind = route_of[(u, v)][0]
        if kind == ROUTE_INNER:
            seq = [cross_node[("in", idx)] for (_, idx) in
                   gad_in.on_edge[ei]]
        elif kind == ROUTE_OUTER:
            seq = [cross_node[("out", idx)] for (_, idx) in
                   gad_out.on_edge[ei]]
        else:
            seq = [cross_node[("ann", idx)] for (_, idx) in
                   ann_on_edge[ei]]
        chain_nodes[ei] = [u] + seq + [v]

    # segments along each chain; remember the dart of each edge at each node
    dart_at = {}  # (edge, node_position) -> dart ids (seg, end)
    edge_segs = {}
    for ei in range(len(edges)):
        nodes = chain_nodes[ei]
        segs = []
        for a in range(len(nodes) - 1):
            s = b.add_segment(nodes[a], nodes[a + 1], ei)
            segs.append(s)
        edge_segs[ei] = segs

    def edge_dart_at_chain_pos(ei, pos, side):
        """Dart of edge ei at chain position pos; side 0 = toward smaller
        chain positions (backward), 1 = forward."""
        segs = edge_segs[ei]
        if side == 0:
            return 2 * segs[pos - 1] + 1
        return 2 * segs[pos]

    # blue circle segments
    blue_cycles = []
    blue_next = {}
    blue_prev = {}
    for circle in (inner, outer):
        if not circle:
            continue
        m = len(circle)
        cyc = []
        if m == 1:
            v = circle[0]
            s = b.add_segment(v, v, None)
            cyc.append(s)
            blue_next[v] = 2 * s
            blue_prev[v] = 2 * s + 1
        else:
            for i in range(m):
                u = circle[i]
                w = circle[(i + 1) % m]
                s = b.add_segment(u, w, None)
                cyc.append(s)
                blue_next[u] = 2 * s
                blue_prev[w] = 2 * s + 1
        blue_cycles.append(tuple(cyc))

    # rotations at crossings: branches sorted counterclockwise
    chain_pos = {}
    for ei in range(len(edges)):
        for pos, node in enumerate(chain_nodes[ei]):
            if b.node_kinds[node] == CROSSING:
                chain_pos[(ei, node)] = pos
    for (node, ei, ej, dirs, mirrored) in cross_info:
        branches = []
        for e in (ei, ej):
            d = dirs[e]
            pos = chain_pos[(e, node)]
            branches.append((d, edge_dart_at_chain_pos(e, pos, 1)))
            branches.append(((-d[0], -d[1]),
                             edge_dart_at_chain_pos(e, pos, 0)))
        rot = _sort_ccw(branches)
        b.rotations[node] = rot[::-1] if mirrored else rot

    # rotations at vertices: blue-next, disk block, blue-prev, annulus block
    for circle, gad, is_inner in ((inner, gad_in, True),
                                  (outer, gad_out, False)):
        if not circle:
            continue
        m = len(circle)
        seq = circle if is_inner else tuple(reversed(circle))
        for r0, v in enumerate(seq):
            disk_darts = []
            for e in (gad.at_vertex[r0] if gad else []):
                u1, v1 = edges[e]
                other = v1 if u1 == v else u1
                pos = 0 if min(u1, v1) == v else len(chain_nodes[e]) - 1
                side = 1 if pos == 0 else 0
                disk_darts.append(edge_dart_at_chain_pos(e, pos, side))
            ann_darts = []
            for (e, lift) in ann:
                u1, v1 = edges[e]
                if v not in (u1, v1):
                    continue
                arc = arcs[e]
                if v == min(u1, v1):
                    d = arc.direction_at_start()
                    pos, side = 0, 1
                else:
                    de = arc.direction_at_end()
                    d = (-de[0], -de[1])
                    pos, side = len(chain_nodes[e]) - 1, 0
                ann_darts.append((_slope_key(d), (e, u1, v1),
                                  edge_dart_at_chain_pos(e, pos, side)))
            ann_darts.sort(key=lambda t: (t[0], t[1]))
            for a in range(1, len(ann_darts)):
                if ann_darts[a][0] == ann_darts[a - 1][0]:
                    raise ConstructionError(
                        "parallel annulus directions at a vertex")
            ann_block = [d for (_, _, d) in ann_darts]
            if is_inner:
                rot = [blue_next[v]] + disk_darts + [blue_prev[v]] + ann_block
            else:
                rot = [blue_next[v]] + ann_block + [blue_prev[v]] + disk_darts
            b.rotations[v] = rot

    m = b.finish()
    return TCurveCertificate(m, tuple(blue_cycles), len(blue_cycles), 0)


def drawing_to_certificate(d) -> TCurveCertificate:
    """Planarized rotation map of a drawing, with blue cycles along the
    circles (or the spine circle for a book drawing).

    The certificate realizes exactly the formula crossing count and passes
    the verifier, or construction fails with ConstructionError.
    """
    if isinstance(d, BookDrawing):
        err = validate_book(d)
        if err is not None:
            raise ParameterError(err)
        if d.p > 2:
            raise ParameterError(
                "only 1- and 2-page drawings are plane drawings")
        inner = tuple(d.spine)
        outer: tuple[int, ...] = ()
        routes = {}
        for (u, v), pg in d.pages:
            routes[(u, v)] = (ROUTE_INNER,) if pg == 1 else (ROUTE_ANNULUS, 0)
        cyl = CylindricalDrawing.make(inner, outer, routes)
        # page-2 edges become same-side annulus arcs; fix self-simple windings
        fixed = {}
        for (u, v), r in cyl.routes:
            if r[0] == ROUTE_ANNULUS:
                lift = edge_lift(cyl, u, v, 0)
                w = 0 if abs(lift.x1 - lift.x0) < 1 else -1
                if lift.x1 < lift.x0:
                    w = 0 if lift.x0 - lift.x1 < 1 else 1
                fixed[(u, v)] = (ROUTE_ANNULUS, w)
            else:
                fixed[(u, v)] = r
        cyl = CylindricalDrawing.make(inner, outer, fixed)
        expected = book_crossings(d)
        cert = _planarize_cylindrical(cyl, expected)
        return cert
    if isinstance(d, CylindricalDrawing):
        err = validate_cylindrical(d)
        if err is not None:
            raise ParameterError(err)
        return _planarize_cylindrical(d, cyl_crossings(d))
    raise ParameterError("expected a BookDrawing or CylindricalDrawing")


def _planarize_cylindrical(d: CylindricalDrawing,
                           expected: int) -> TCurveCertificate:
    err = validate_cylindrical(d)
    if err is not None:
        raise ParameterError(err)
    if cyl_crossings(d) != expected:
        raise ConstructionError(
            "drawing recount differs from the expected crossing total")
    edges = d.edges()
    route_of = d.route_of()
    lifts = {}
    for ei, (u, v) in enumerate(edges):
        r = route_of[(u, v)]
        if r[0] == ROUTE_ANNULUS:
            lifts[ei] = edge_lift(d, u, v, r[1])
    last_exc = None
    for denom, jitter in ((1 << 20, 0), (1 << 20, 1), (3 ** 13, 2),
                          (5 ** 9, 3), (7 ** 8, 5), (1 << 21, 7)):
        for shrink in range(16):
            tent = Fraction(1, 4 * (1 << shrink))
            try:
                cert = _build_certificate(d.inner, d.outer, route_of, edges,
                                          lifts, denom, tent, jitter)
            except ConstructionError as exc:
                last_exc = exc
                continue
            got = len(cert.map.crossing_ids())
            if got != expected:
                raise ConstructionError(
                    f"planarization realized {got} crossings, formula "
                    f"says {expected}")
            g = project_graph(cert.map)
            verr = verify_certificate(g, cert, cert.t, expected)
            if verr is not None:
                raise ConstructionError(
                    f"planarized certificate rejected: {verr}")
            return cert
    raise ConstructionError(
        f"could not realize the drawing geometrically: {last_exc}")
