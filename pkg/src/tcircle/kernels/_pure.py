"""Pure-Python search kernels.

These are the hot inner loops of the toolkit: translate-alternation counting
on the annulus strip, chord interleaving, the spine/page branch-and-bound for
book drawings, the route/winding branch-and-bound for cylindrical drawings,
and exact longest-cycle backtracking.

A compiled twin of this module (``_fast``) is built with Cython when a C
compiler is available; :mod:`tcircle.kernels` selects whichever is importable
at run time.  Both implementations must stay behaviourally identical; the
test suite fuzzes them against each other.

All coordinates here are integers: callers scale rational angular positions
by a common denominator so one full turn equals ``step``.  No floating point
is used anywhere in a count.
"""

from __future__ import annotations

import time

IMPLEMENTATION = "pure"

INFEASIBLE = 1 << 30

STATUS_OPTIMAL = 0
STATUS_TIMEOUT = 1

_TIME_CHECK_MASK = 0xFFF


def _alternates(ex0, el0, ex1, el1, fx0, fl0, fx1, fl1):
    """Whether the two point pairs strictly alternate around the strip disk.

    Boundary cyclic order: level 0 by increasing x, then level 1 by
    decreasing x.  A shared point (same x and level) contributes 0.
    """
    if (ex0 == fx0 and el0 == fl0) or (ex0 == fx1 and el0 == fl1) \
            or (ex1 == fx0 and el1 == fl0) or (ex1 == fx1 and el1 == fl1):
        return False
    pts = [
        ((el0, -ex0 if el0 else ex0), 0),
        ((el1, -ex1 if el1 else ex1), 0),
        ((fl0, -fx0 if fl0 else fx0), 1),
        ((fl1, -fx1 if fl1 else fx1), 1),
    ]
    pts.sort()
    w0 = pts[0][1]
    w1 = pts[1][1]
    w2 = pts[2][1]
    return w0 != w1 and w1 != w2


def strip_alternation_count(ex0, el0, ex1, el1, fx0, fl0, fx1, fl1, step, kmax):
    """Count translates k in [-kmax, kmax] at which the two lifts alternate."""
    total = 0
    for k in range(-kmax, kmax + 1):
        off = k * step
        if _alternates(ex0, el0, ex1, el1, fx0 + off, fl0, fx1 + off, fl1):
            total += 1
    return total


def strip_self_count(ex0, el0, ex1, el1, step, kmax):
    """Self-crossing count of one lift: positive translates only."""
    total = 0
    for k in range(1, kmax + 1):
        off = k * step
        if _alternates(ex0, el0, ex1, el1, ex0 + off, el0, ex1 + off, el1):
            total += 1
    return total


def circular_interleave(a, b, c, d, m):
    """1 if chords {a,b} and {c,d} of an m-cycle interleave, else 0.

    Ranks must be distinct across the two chords (adjacent chords are the
    caller's business).
    """
    ca = (c - a) % m
    da = (d - a) % m
    ba = (b - a) % m
    inside_c = 0 < ca < ba
    inside_d = 0 < da < ba
    return 1 if inside_c != inside_d else 0


# ---------------------------------------------------------------------------
# Longest cycle
# ---------------------------------------------------------------------------


def longest_cycle(n, adj, deadline):
    """Exact maximum cycle length by backtracking; 0 when the graph is acyclic.

    ``adj`` is a list of neighbour bitmasks.  Returns (status, length).
    """
    best = 0
    nodes = 0
    full = (1 << n) - 1

    for s in range(n):
        if n - s <= best:
            break
        allowed = 0
        for v in range(s, n):
            allowed |= 1 << v
        stack = [(s, 1 << s, 1, None)]
        # iterative DFS: (vertex, visited mask, path length, iterator state)
        # implemented recursively for clarity; depth <= n
        status, best, nodes = _lc_dfs(s, s, 1 << s, 1, adj, allowed, best,
                                      nodes, deadline, n)
        if status == STATUS_TIMEOUT:
            return STATUS_TIMEOUT, best
    return STATUS_OPTIMAL, best


def _reachable(start_mask, free, adj):
    seen = start_mask & free
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= adj[v] & free & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _lc_dfs(s, v, visited, length, adj, allowed, best, nodes, deadline, n):
    nodes += 1
    if (nodes & _TIME_CHECK_MASK) == 0 and time.monotonic() > deadline:
        return STATUS_TIMEOUT, best, nodes
    if length >= 3 and (adj[v] >> s) & 1 and length > best:
        best = length
    free = adj[v] & allowed & ~visited
    if free:
        reach = _reachable(free, allowed & ~visited, adj)
        if length + bin(reach).count("1") > best:
            if (adj[s] & (reach | (1 << v))):
                f = free
                while f:
                    u = (f & -f).bit_length() - 1
                    f &= f - 1
                    st, best, nodes = _lc_dfs(s, u, visited | (1 << u),
                                              length + 1, adj, allowed, best,
                                              nodes, deadline, n)
                    if st == STATUS_TIMEOUT:
                        return STATUS_TIMEOUT, best, nodes
    return STATUS_OPTIMAL, best, nodes


# ---------------------------------------------------------------------------
# Book (p-page) branch and bound
# ---------------------------------------------------------------------------


def book_search(n, eu, ev, p, best_in, deadline, node_cap):
    """Minimise same-page interleavings over spine orders and page maps.

    Vertex 0 is pinned to spine position 0 and the reflection of the spine
    is quotiented away (spine[1] < spine[n-1]).  Edges are page-assigned as
    soon as both endpoints are placed, so partial counts are exact lower
    bounds.  Returns (status, best, spine, pages, explored).
    """
    m = len(eu)
    if n <= 1 or m == 0:
        return STATUS_OPTIMAL, 0, list(range(n)), [0] * m, 0

    inc = [[] for _ in range(n)]  # incident edge ids per vertex
    for i in range(m):
        inc[eu[i]].append(i)
        inc[ev[i]].append(i)

    pos = [-1] * n
    spine = [-1] * n
    page = [-1] * m
    # edges on each page, as (lo, hi) position pairs, rebuilt incrementally
    placed_edges = [[] for _ in range(p)]

    best = best_in
    best_spine = None
    best_pages = None
    explored = 0
    timed_out = False

    pos[0] = 0
    spine[0] = 0

    def edge_cost(lo, hi, pg):
        c = 0
        for (a, b) in placed_edges[pg]:
            if a == lo or a == hi or b == lo or b == hi:
                continue
            if (lo < a < hi) != (lo < b < hi):
                c += 1
        return c

    def assign(pending, idx, i, cost, pages_used):
        nonlocal best, best_spine, best_pages, explored, timed_out
        if timed_out or best == 0:
            return
        if idx == len(pending):
            place(i + 1, cost, pages_used)
            return
        e = pending[idx]
        a = pos[eu[e]]
        b = pos[ev[e]]
        lo, hi = (a, b) if a < b else (b, a)
        limit = pages_used + 1 if pages_used < p else p
        for pg in range(limit):
            explored += 1
            if (explored & _TIME_CHECK_MASK) == 0:
                if time.monotonic() > deadline or explored > node_cap:
                    timed_out = True
                    return
            delta = edge_cost(lo, hi, pg)
            if cost + delta >= best:
                continue
            page[e] = pg
            placed_edges[pg].append((lo, hi))
            assign(pending, idx + 1, i, cost + delta,
                   max(pages_used, pg + 1))
            placed_edges[pg].pop()
            page[e] = -1
            if timed_out or best == 0:
                return

    def place(i, cost, pages_used):
        nonlocal best, best_spine, best_pages, timed_out
        if timed_out:
            return
        if i == n:
            if cost < best:
                best = cost
                best_spine = spine[:]
                best_pages = page[:]
            return
        for v in range(1, n):
            if pos[v] >= 0:
                continue
            if i == n - 1 and n >= 3 and spine[1] > v:
                continue
            pos[v] = i
            spine[i] = v
            pending = [e for e in inc[v]
                       if pos[eu[e]] >= 0 and pos[ev[e]] >= 0]
            assign(pending, 0, i, cost, pages_used)
            spine[i] = -1
            pos[v] = -1
            if timed_out or best == 0:
                return

    place(1, 0, 0)

    status = STATUS_TIMEOUT if timed_out else STATUS_OPTIMAL
    return status, best, best_spine, best_pages, explored


def book_embed2(n, eu, ev, deadline, node_cap):
    """Decide 0-crossing 2-page embeddability.

    Pages are never branched: an order admits a 0-crossing 2-page drawing
    exactly when its interleaving-conflict graph is bipartite, maintained
    incrementally with a parity union-find as edges complete.  Half-placed
    edges constrain early: once an edge completes, any half-placed edge
    whose placed end lies strictly inside the new span must cross it (its
    other end can only land beyond the current frontier).  Returns
    (status, spine, pages, explored) with spine None when no embedding
    exists.
    """
    m = len(eu)
    if n <= 2 or m == 0:
        return STATUS_OPTIMAL, list(range(n)), [0] * m, 0

    inc = [[] for _ in range(n)]
    for i in range(m):
        inc[eu[i]].append(i)
        inc[ev[i]].append(i)

    pos = [-1] * n
    spine = [-1] * n
    placed: list[int] = []  # completed edge ids
    span = [(0, 0)] * m
    state = [0] * m  # 0 = untouched, 1 = dangling, 2 = completed
    dang_pos = [0] * m
    dangling: list[int] = []

    parent = list(range(m))
    parity = [0] * m  # parity relative to parent
    trail: list[int] = []

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    def union(a, b, rel) -> bool:
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            return (pa ^ pb) == rel
        parent[rb] = ra
        parity[rb] = pa ^ pb ^ rel
        trail.append(rb)
        return True

    explored = 0
    timed_out = False
    pos[0] = 0
    spine[0] = 0
    for e in inc[0]:
        state[e] = 1
        dang_pos[e] = 0
        dangling.append(e)

    def place(i):
        nonlocal explored, timed_out
        if timed_out:
            return None
        if i == n:
            pages = []
            for e in range(m):
                _, p = find(e)
                pages.append(p)
            return spine[:], pages
        for v in range(1, n):
            if pos[v] >= 0:
                continue
            if i == n - 1 and n >= 3 and spine[1] > v:
                continue
            explored += 1
            if (explored & _TIME_CHECK_MASK) == 0:
                if time.monotonic() > deadline or explored > node_cap:
                    timed_out = True
                    return None
            pos[v] = i
            spine[i] = v
            uf_mark = len(trail)
            placed_mark = len(placed)
            dang_mark = len(dangling)
            newly_done = []
            ok = True
            for e in inc[v]:
                pu, pv = pos[eu[e]], pos[ev[e]]
                if pu < 0 or pv < 0:
                    state[e] = 1
                    dang_pos[e] = i
                    dangling.append(e)
                    continue
                lo, hi = (pu, pv) if pu < pv else (pv, pu)
                for f in placed:
                    a, b = span[f]
                    if a == lo or a == hi or b == lo or b == hi:
                        continue
                    if (lo < a < hi) != (lo < b < hi):
                        if not union(e, f, 1):
                            ok = False
                            break
                if ok:
                    for f in dangling:
                        if state[f] != 1 or f == e:
                            continue
                        if eu[f] == v or ev[f] == v:
                            continue  # completes this very step, lands at i
                        if lo < dang_pos[f] < hi:
                            if not union(e, f, 1):
                                ok = False
                                break
                if not ok:
                    break
                span[e] = (lo, hi)
                state[e] = 2
                placed.append(e)
                newly_done.append(e)
            if ok:
                res = place(i + 1)
                if res is not None:
                    return res
            del placed[placed_mark:]
            for e in newly_done:
                state[e] = 1  # back to dangling; dang_pos is still valid
            while len(dangling) > dang_mark:
                state[dangling.pop()] = 0
            while len(trail) > uf_mark:
                x = trail.pop()
                parent[x] = x
                parity[x] = 0
            spine[i] = -1
            pos[v] = -1
            if timed_out:
                return None
        return None

    res = place(1)
    if timed_out:
        return STATUS_TIMEOUT, None, None, explored
    if res is None:
        return STATUS_OPTIMAL, None, None, explored
    return STATUS_OPTIMAL, res[0], res[1], explored


# ---------------------------------------------------------------------------
# Cylindrical subproblem: candidate routes and their pairwise costs
# ---------------------------------------------------------------------------


def _build_candidates(m_edges, eu, ev, side, rank, n_in, n_out, cap):
    """Candidate (kind, w, lift) list per edge for one fixed configuration.

    kind 0 = inner disk chord, 1 = outer disk chord, 2 = annulus.
    Lift coordinates are scaled so a full turn is ``step``.
    """
    step = (n_in if n_in else 1) * (n_out if n_out else 1)
    unit_in = step // n_in if n_in else 0
    unit_out = step // n_out if n_out else 0

    def coord(v):
        if side[v] == 0:
            return rank[v] * unit_in, 0
        return rank[v] * unit_out, 1

    cands = []
    for i in range(m_edges):
        u, v = eu[i], ev[i]
        xu, lu = coord(u)
        xv, lv = coord(v)
        clist = []
        if side[u] == side[v]:
            kind = side[u]
            clist.append((kind, 0, xu, lu, xv, lv))
            delta = xv - xu
            if delta > 0:
                ws = (0, -1)
            else:
                ws = (0, 1)
            for w in ws:
                clist.append((2, w, xu, lu, xv + w * step, lv))
        else:
            for w in range(-cap, cap + 1):
                clist.append((2, w, xu, lu, xv + w * step, lv))
        cands.append(clist)
    return cands, step


def _pair_cost(ci, cj, adjacent, n_in, n_out, step, rank_u_i, rank_v_i,
               rank_u_j, rank_v_j):
    ki, wi, ix0, il0, ix1, il1 = ci
    kj, wj, jx0, jl0, jx1, jl1 = cj
    if ki == 2 and kj == 2:
        kmax = abs(wi) + abs(wj) + 3
        c = strip_alternation_count(ix0, il0, ix1, il1,
                                    jx0, jl0, jx1, jl1, step, kmax)
        if adjacent:
            return 0 if c == 0 else INFEASIBLE
        return c
    if adjacent:
        return 0
    if ki == kj == 0:
        return circular_interleave(rank_u_i, rank_v_i, rank_u_j, rank_v_j,
                                   n_in)
    if ki == kj == 1:
        return circular_interleave(rank_u_i, rank_v_i, rank_u_j, rank_v_j,
                                   n_out)
    return 0


def cyl_subproblem(eu, ev, side, rank, n_in, n_out, cap, best_in, deadline,
                   node_cap):
    """Exact minimum over route/winding assignments for fixed circles.

    Returns (status, best, assignment, explored) where assignment is a list
    of (kind, w) per edge, or None when nothing beat ``best_in``.
    """
    m = len(eu)
    if m == 0:
        return STATUS_OPTIMAL, 0, [], 0
    cands, step = _build_candidates(m, eu, ev, side, rank, n_in, n_out, cap)

    # order edges: fewest candidates first, then lexicographic
    order = sorted(range(m), key=lambda i: (len(cands[i]), eu[i], ev[i]))

    ncand = [len(cands[i]) for i in order]
    # pairwise cost table[i][ci][j][cj] for ordered indices i < j
    cost = [[None] * m for _ in range(m)]
    for a in range(m):
        i = order[a]
        for b in range(a + 1, m):
            j = order[b]
            adjacent = (eu[i] == eu[j] or eu[i] == ev[j]
                        or ev[i] == eu[j] or ev[i] == ev[j])
            tab = []
            for ci in cands[i]:
                row = []
                for cj in cands[j]:
                    row.append(_pair_cost(
                        ci, cj, adjacent, n_in, n_out, step,
                        rank[eu[i]], rank[ev[i]], rank[eu[j]], rank[ev[j]]))
                tab.append(row)
            cost[a][b] = tab

    best = best_in
    best_assign = None
    explored = 0
    timed_out = False
    chosen = [-1] * m
    # minvs[b][cj] = cost of candidate cj of ordered edge b against all
    # currently assigned edges
    minvs = [[0] * ncand[b] for b in range(m)]

    def lb_tail(a):
        t = 0
        for b in range(a, m):
            mv = minvs[b]
            mn = mv[0]
            for x in mv[1:]:
                if x < mn:
                    mn = x
            t += mn
            if t >= INFEASIBLE:
                break
        return t

    def dfs(a, cost_so_far):
        nonlocal best, best_assign, explored, timed_out
        if timed_out:
            return
        if a == m:
            if cost_so_far < best:
                best = cost_so_far
                best_assign = chosen[:]
            return
        for ci in range(ncand[a]):
            explored += 1
            if (explored & _TIME_CHECK_MASK) == 0:
                if time.monotonic() > deadline or explored > node_cap:
                    timed_out = True
                    return
            c = cost_so_far + minvs[a][ci]
            if c >= best:
                continue
            chosen[a] = ci
            for b in range(a + 1, m):
                tab = cost[a][b][ci]
                mv = minvs[b]
                for cj in range(ncand[b]):
                    mv[cj] += tab[cj]
            if c + lb_tail(a + 1) < best:
                dfs(a + 1, c)
            for b in range(a + 1, m):
                tab = cost[a][b][ci]
                mv = minvs[b]
                for cj in range(ncand[b]):
                    mv[cj] -= tab[cj]
            chosen[a] = -1
            if timed_out or best == 0:
                return

    dfs(0, 0)

    assignment = None
    if best_assign is not None:
        assignment = [None] * m
        for a in range(m):
            k, w = cands[order[a]][best_assign[a]][0:2]
            assignment[order[a]] = (k, w)
    status = STATUS_TIMEOUT if timed_out else STATUS_OPTIMAL
    return status, best, assignment, explored
