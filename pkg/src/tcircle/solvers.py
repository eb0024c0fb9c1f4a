"""Exact optimization and decision procedures: p-page and cylindrical
crossing numbers by branch and bound, t-curve embeddability by certificate
backtracking, and the necessary-condition curve cover filter.

All searches are deterministic: orders are enumerated lexicographically,
incumbents are replaced only by strictly better values, and optimal results
are re-derived by a canonical witness pass, so reported witnesses do not
depend on exploration order.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import kernels
from .curves import find_curve_system
from .drawings import (ROUTE_ANNULUS, ROUTE_INNER, ROUTE_OUTER, BookDrawing,
                       CylindricalDrawing, book_crossings, cyl_crossings)
from .errors import ConstructionError, ParameterError, SearchBudgetExceeded
from .graphs import Graph
from .maps import (RotationMap, TCurveCertificate, check_plane_map,
                   node_components, project_graph, trace_faces,
                   verify_certificate)

STATUS_OPTIMAL = "optimal"
STATUS_TIMEOUT = "timeout-with-bound"
STATUS_INFEASIBLE = "infeasible"

DEFAULT_NODE_CAP = 1 << 62


@dataclass
class SolveResult:
    status: str
    value: int | None
    witness: object | None
    explored: int
    winding_cap_used: int | None = None


def _deadline(budget_ms: float | None) -> float:
    if budget_ms is None:
        return float("inf")
    return time.monotonic() + budget_ms / 1000.0


# ---------------------------------------------------------------------------
# Book crossing number
# ---------------------------------------------------------------------------


def _greedy_book(g: Graph, p: int) -> BookDrawing:
    """Identity spine, every edge on the page where it currently crosses
    least; the branch-and-bound incumbent."""
    spine = list(range(g.n))
    placed: list[list[tuple[int, int]]] = [[] for _ in range(p)]
    pages = {}
    for (u, v) in g.edges:
        best_pg, best_c = 0, None
        for pg in range(p):
            c = 0
            for (a, b) in placed[pg]:
                if a in (u, v) or b in (u, v):
                    continue
                if (u < a < v) != (u < b < v):
                    c += 1
            if best_c is None or c < best_c:
                best_pg, best_c = pg, c
        placed[best_pg].append((u, v))
        pages[(u, v)] = best_pg + 1
    return BookDrawing.make(spine, pages, p)


def book_crossing_number(g: Graph, p: int,
                         budget_ms: float | None = None,
                         node_cap: int = DEFAULT_NODE_CAP) -> SolveResult:
    """Minimum crossings over all spine orders and page assignments.

    The spine's first vertex is fixed and its reflection quotiented away;
    page assignments are branched as soon as both endpoints are placed, so
    partial counts prune exactly.
    """
    if p < 1:
        raise ParameterError("page count must be >= 1")
    greedy = _greedy_book(g, p)
    incumbent_val = book_crossings(greedy)
    if g.m == 0 or g.n <= 2:
        return SolveResult(STATUS_OPTIMAL, 0, greedy, 0)
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    status, best, spine, pages, explored = kernels.book_search(
        g.n, eu, ev, p, incumbent_val + 1, _deadline(budget_ms), node_cap)
    if spine is None:
        value, witness = incumbent_val, greedy
    else:
        value = best
        witness = BookDrawing.make(
            spine, {e: pages[i] + 1 for i, e in enumerate(g.edges)}, p)
    if book_crossings(witness) != value:
        raise ConstructionError("book witness does not recount to its value")
    if status == kernels.STATUS_TIMEOUT:
        return SolveResult(STATUS_TIMEOUT, value, witness, explored)
    return SolveResult(STATUS_OPTIMAL, value, witness, explored)


def is_two_page_embeddable(g: Graph,
                           budget_ms: float | None = None) -> bool:
    """True iff the graph has a 0-crossing 2-page drawing.

    Runs the branch and bound as a pure decision (every partial drawing with
    a crossing prunes), so refutations do not pay for crossing minimization.
    A timeout surfaces as SearchBudgetExceeded: unknown, not false.
    """
    if g.m == 0 or g.n <= 2:
        return True
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    status, spine, pages, _ = kernels.book_embed2(
        g.n, eu, ev, _deadline(budget_ms), DEFAULT_NODE_CAP)
    if spine is not None:
        witness = BookDrawing.make(
            spine, {e: pages[i] + 1 for i, e in enumerate(g.edges)}, 2)
        if book_crossings(witness) != 0:
            raise ConstructionError("embeddability witness has crossings")
        return True
    if status == kernels.STATUS_TIMEOUT:
        raise SearchBudgetExceeded("2-page embeddability undecided in budget")
    return False


# ---------------------------------------------------------------------------
# Cylindrical crossing number
# ---------------------------------------------------------------------------


def _reflected(order: tuple[int, ...]) -> tuple[int, ...]:
    return order[0:1] + order[:0:-1]


def _configurations(n: int):
    """All (inner_order, outer_order) with |inner| >= |outer|, rotations
    anchored at each circle's minimum, reflections quotiented."""
    for size_in in range((n + 1) // 2, n + 1):
        for s_set in itertools.combinations(range(n), size_in):
            rest = tuple(v for v in range(n) if v not in set(s_set))
            if size_in == n - size_in and 0 not in s_set:
                continue
            in_head, in_tail = s_set[0], s_set[1:]
            out_head, out_tail = (rest[0], rest[1:]) if rest else (None, ())
            for ip in itertools.permutations(in_tail):
                io = (in_head,) + ip
                for op in itertools.permutations(out_tail):
                    oo = ((out_head,) + op) if rest else ()
                    if (_reflected(io), _reflected(oo)) < (io, oo):
                        continue
                    yield io, oo


def _greedy_cylindrical(g: Graph) -> CylindricalDrawing:
    """Balanced identity split with minimal-span windings; the incumbent."""
    from fractions import Fraction
    n_in = (g.n + 1) // 2
    inner = tuple(range(n_in))
    outer = tuple(range(n_in, g.n))
    n_out = max(g.n - n_in, 1)
    routes = {}
    for (u, v) in g.edges:
        if v < n_in:
            routes[(u, v)] = (ROUTE_INNER,)
        elif u >= n_in:
            routes[(u, v)] = (ROUTE_OUTER,)
        else:
            diff = Fraction(v - n_in, n_out) - Fraction(u, n_in)
            best = None
            for cand in range(int(-diff) - 2, int(-diff) + 3):
                span = diff + cand
                key = (abs(span), 0 if span > 0 else 1)
                if best is None or key < best[0]:
                    best = (key, cand)
            routes[(u, v)] = (ROUTE_ANNULUS, best[1])
    return CylindricalDrawing.make(inner, outer, routes)


def _decode_drawing(g: Graph, io, oo, assignment) -> CylindricalDrawing:
    routes = {}
    for i, (u, v) in enumerate(g.edges):
        kind, w = assignment[i]
        routes[(u, v)] = ((ROUTE_INNER,), (ROUTE_OUTER,),
                          (ROUTE_ANNULUS, w))[kind]
    return CylindricalDrawing.make(io, oo, routes)


def _solve_config(args):
    """Worker for one configuration; module level so process pools can
    pickle it."""
    eu, ev, io, oo, cap, limit, deadline, node_cap = args
    n = len(io) + len(oo)
    side = [0] * n
    rank = [0] * n
    for i, v in enumerate(io):
        side[v], rank[v] = 0, i
    for i, v in enumerate(oo):
        side[v], rank[v] = 1, i
    st, val, assign, exp = kernels.cyl_subproblem(
        eu, ev, side, rank, len(io), len(oo), cap, limit, deadline, node_cap)
    return st, val, assign, io, oo, exp


def _run_pass_parallel(g: Graph, cap: int, best_val: int, best_drawing,
                       deadline, node_cap, workers: int):
    """Parallel sweep: workers solve configuration chunks against the initial
    incumbent; results reduce deterministically by (value, config order)."""
    from concurrent.futures import ProcessPoolExecutor
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    configs = list(_configurations(g.n))
    args = [(eu, ev, io, oo, cap, best_val, deadline, node_cap)
            for (io, oo) in configs]
    explored = 0
    timed_out = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for st, val, assign, io, oo, exp in pool.map(_solve_config, args,
                                                     chunksize=4):
            explored += exp
            if st == kernels.STATUS_TIMEOUT:
                timed_out = True
            if assign is not None and val < best_val:
                best_val = val
                best_drawing = _decode_drawing(g, io, oo, assign)
    return best_val, best_drawing, explored, timed_out


def _run_pass(g: Graph, cap: int, best_val: int, best_drawing, deadline,
              node_cap, target=None):
    """One sweep over all configurations at a fixed winding cap.

    With ``target`` set, stops at the first drawing recounting to target
    (the canonical witness pass).
    """
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    explored = 0
    timed_out = False
    for io, oo in _configurations(g.n):
        if time.monotonic() > deadline:
            timed_out = True
            break
        side = [0] * g.n
        rank = [0] * g.n
        for i, v in enumerate(io):
            side[v], rank[v] = 0, i
        for i, v in enumerate(oo):
            side[v], rank[v] = 1, i
        limit = best_val if target is None else target + 1
        st, val, assign, exp = kernels.cyl_subproblem(
            eu, ev, side, rank, len(io), len(oo), cap, limit, deadline,
            node_cap)
        explored += exp
        if st == kernels.STATUS_TIMEOUT:
            timed_out = True
            if assign is not None and val < best_val:
                best_val, best_drawing = val, _decode_drawing(g, io, oo,
                                                              assign)
            break
        if assign is not None and val < limit:
            if target is not None:
                return val, _decode_drawing(g, io, oo, assign), explored, False
            if val < best_val:
                best_val, best_drawing = val, _decode_drawing(g, io, oo,
                                                              assign)
    return best_val, best_drawing, explored, timed_out


def cylindrical_crossing_number(g: Graph, winding_cap: int = 2,
                                budget_ms: float | None = None,
                                node_cap: int = DEFAULT_NODE_CAP,
                                workers: int = 1) -> SolveResult:
    """Minimum crossings over bipartitions, circular orders, routes, and
    windings within the cap.

    No finite winding bound is proven, so the search stabilizes: it reruns
    with the cap raised by one until two consecutive caps agree, and only
    then reports optimal (with the agreed cap in ``winding_cap_used``).
    A cap-sensitive result keeps escalating instead of being reported.
    """
    if winding_cap < 1:
        raise ParameterError("winding cap must be >= 1")
    if g.n == 0:
        return SolveResult(STATUS_OPTIMAL, 0, None, 0, winding_cap)
    deadline = _deadline(budget_ms)
    greedy = _greedy_cylindrical(g)
    best_val = cyl_crossings(greedy)
    best_drawing = greedy
    explored = 0

    cap = winding_cap
    prev = None
    while True:
        if workers > 1:
            best_val, best_drawing, exp, timed_out = _run_pass_parallel(
                g, cap, best_val, best_drawing, deadline, node_cap, workers)
        else:
            best_val, best_drawing, exp, timed_out = _run_pass(
                g, cap, best_val, best_drawing, deadline, node_cap)
        explored += exp
        if timed_out:
            return SolveResult(STATUS_TIMEOUT, best_val, best_drawing,
                               explored, cap)
        if prev is not None and prev == best_val:
            break
        prev = best_val
        cap += 1

    cap_used = cap - 1
    value, witness, exp, timed_out = _run_pass(
        g, cap_used, best_val + 1, best_drawing, deadline, node_cap,
        target=best_val)
    explored += exp
    if timed_out or witness is None:
        witness = best_drawing
        value = best_val
    if cyl_crossings(witness) != best_val:
        raise ConstructionError(
            "cylindrical witness does not recount to its value")
    return SolveResult(STATUS_OPTIMAL, best_val, witness, explored, cap_used)


# ---------------------------------------------------------------------------
# t-curve embeddability
# ---------------------------------------------------------------------------


def _split_components(m: RotationMap) -> list[RotationMap]:
    comp = node_components(m)
    ncomp = max(comp) + 1 if comp else 0
    if ncomp <= 1:
        return [m]
    out = []
    for c in range(ncomp):
        nodes = [v for v in range(m.num_nodes) if comp[v] == c]
        remap = {v: i for i, v in enumerate(nodes)}
        segs = [s for s in range(m.num_segments)
                if comp[m.seg_ends[s][0]] == c]
        seg_remap = {s: i for i, s in enumerate(segs)}
        kinds = tuple(m.node_kinds[v] for v in nodes)
        ends = tuple((remap[m.seg_ends[s][0]], remap[m.seg_ends[s][1]])
                     for s in segs)
        edges = tuple(m.seg_edge[s] for s in segs)
        # renumber edge ids densely per component
        eid_remap: dict[int, int] = {}
        new_edges = []
        for e in edges:
            if e is None:
                new_edges.append(None)
            else:
                new_edges.append(eid_remap.setdefault(e, len(eid_remap)))
        rots = tuple(
            tuple(2 * seg_remap[d >> 1] + (d & 1) for d in m.rotations[v])
            for v in nodes)
        out.append(RotationMap(kinds, ends, tuple(new_edges), rots))
    return out


def _union_certificates(m: RotationMap,
                        certs: list[TCurveCertificate]) -> TCurveCertificate:
    """Reassemble standalone per-component certificates over the input map's
    numbering (components laid out side by side, no interaction)."""
    comp = node_components(m)
    ncomp = max(comp) + 1
    node_of = [[v for v in range(m.num_nodes) if comp[v] == c]
               for c in range(ncomp)]
    kinds = list(m.node_kinds)
    ends: list[tuple[int, int]] = []
    edge: list[int | None] = []
    rots: list[tuple[int, ...]] = [()] * m.num_nodes
    cycles = []
    for c, cert in enumerate(certs):
        cm = cert.map
        seg_off = len(ends)
        for s in range(cm.num_segments):
            a, b = cm.seg_ends[s]
            ends.append((node_of[c][a], node_of[c][b]))
            edge.append(None if cm.seg_edge[s] is None else -1)
        for v_local, v_global in enumerate(node_of[c]):
            rots[v_global] = tuple(2 * (seg_off + (d >> 1)) + (d & 1)
                                   for d in cm.rotations[v_local])
        for cyc in cert.blue_cycles:
            cycles.append(tuple(seg_off + s for s in cyc))
    # retag graph segments with the input map's edge ids via endpoints
    want = {}
    for s in range(m.num_segments):
        if m.seg_edge[s] is not None:
            a, b = m.seg_ends[s]
            want[(min(a, b), max(a, b))] = m.seg_edge[s]
    for s in range(len(ends)):
        if edge[s] is not None:
            a, b = ends[s]
            edge[s] = want[(min(a, b), max(a, b))]
    new_map = RotationMap(tuple(kinds), tuple(ends), tuple(edge), tuple(rots))
    t = sum(cert.t for cert in certs)
    return TCurveCertificate(new_map, tuple(cycles), t, 0)


def t_curve_embeddable(m: RotationMap, t: int,
                       budget_ms: float | None = None) -> TCurveCertificate | None:
    """A verified t-curve certificate of the plane map, or None when no
    system of at most t disjoint clean curves covers all vertices.

    Multi-component maps first refute per component (a combined embedding
    restricts to one on every component), then try the cheap side-by-side
    composition, and only then the joint search with component placement.
    Timeouts raise SearchBudgetExceeded: unknown, never "none".
    """
    if t < 1:
        raise ParameterError("t must be >= 1")
    err = check_plane_map(m)
    if err is not None:
        raise ParameterError(f"not a plane map: {err}")
    deadline = _deadline(budget_ms)
    comps = _split_components(m)
    if len(comps) == 1:
        return find_curve_system(m, t, deadline)

    minimal: list[TCurveCertificate] = []
    for sub in comps:
        found = None
        for tc in range(1, t + 1):
            cert = find_curve_system(sub, tc, deadline)
            if cert is not None:
                found = cert
                break
        if found is None:
            return None  # this component alone refutes the whole union
        minimal.append(found)
    if sum(c.t for c in minimal) <= t:
        cert = _union_certificates(m, minimal)
        g = project_graph(m)
        errv = verify_certificate(g, cert, t, 0)
        if errv is not None:
            raise ConstructionError(f"component union certificate: {errv}")
        return cert
    return find_curve_system(m, t, deadline)


# ---------------------------------------------------------------------------
# Curve cover filter (necessary condition on triangulations)
# ---------------------------------------------------------------------------


def curve_cover_filter(m: RotationMap, t: int,
                       budget_ms: float | None = None) -> bool:
    """Whether <= t pairwise disjoint parts (singletons, edges, or cycles
    with consecutive vertices cofacial) cover every vertex of the plane
    triangulation.

    False soundly refutes t-curve embeddability; True proves nothing.
    In a triangulation cofacial pairs are exactly adjacent pairs.
    """
    if t < 1:
        raise ParameterError("t must be >= 1")
    err = check_plane_map(m)
    if err is not None:
        raise ParameterError(f"not a plane map: {err}")
    if any(len(w) != 3 for w in trace_faces(m)):
        raise ParameterError("curve cover filter needs a triangulation")
    comp = node_components(m)
    if comp and max(comp) > 0:
        raise ParameterError("curve cover filter needs a connected map")
    g = project_graph(m)
    n = g.n
    if n > 40:
        raise ParameterError("cover search capped at 40 vertices")
    adj = g.adjacency_masks()
    deadline = _deadline(budget_ms)
    full = (1 << n) - 1
    failed: set[tuple[int, int]] = set()
    ticks = [0]

    def tick():
        ticks[0] += 1
        if (ticks[0] & 0xFFF) == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded("cover search out of budget")

    def solve(mask: int, parts_left: int) -> bool:
        tick()
        if mask == full:
            return True
        if parts_left == 0:
            return False
        key = (mask, parts_left)
        if key in failed:
            return False
        v = ((~mask) & full)
        v = (v & -v).bit_length() - 1
        # singleton
        if solve(mask | (1 << v), parts_left - 1):
            return True
        # edge parts
        nb = adj[v] & ~mask
        u = nb
        while u:
            w = (u & -u).bit_length() - 1
            u &= u - 1
            if solve(mask | (1 << v) | (1 << w), parts_left - 1):
                return True
        # cycle parts anchored at v (direction quotient: second < last)
        if _cycles_from(v, mask, parts_left):
            return True
        failed.add(key)
        return False

    def _cycles_from(v: int, mask: int, parts_left: int) -> bool:
        start_mask = mask | (1 << v)

        def dfs(cur: int, used: int, second: int, length: int) -> bool:
            tick()
            if length >= 3 and (adj[cur] >> v) & 1 and cur > second:
                if solve(used, parts_left - 1):
                    return True
            nb = adj[cur] & ~used & ~mask
            u = nb
            while u:
                w = (u & -u).bit_length() - 1
                u &= u - 1
                if dfs(w, used | (1 << w), second, length + 1):
                    return True
            return False

        nb = adj[v] & ~start_mask
        u = nb
        while u:
            s = (u & -u).bit_length() - 1
            u &= u - 1
            if dfs(s, start_mask | (1 << s), s, 2):
                return True
        return False

    return solve(0, t)
