# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: the Cython twin of ``_pure``.

Behaviour must match the pure implementation exactly; the test suite fuzzes
the two against each other.  All coordinates are integers scaled so one full
turn equals ``step``; no floating point enters a count.
"""

import time

from cpython.mem cimport PyMem_Free, PyMem_Malloc

IMPLEMENTATION = "fast"

INFEASIBLE = 1 << 30

STATUS_OPTIMAL = 0
STATUS_TIMEOUT = 1

DEF TIME_MASK = 0xFFF

ctypedef long long ll


cdef inline bint _alt(ll ex0, int el0, ll ex1, int el1,
                      ll fx0, int fl0, ll fx1, int fl1) nogil:
    """Strict alternation around the strip-disk boundary (level 0 by
    increasing x, then level 1 by decreasing x); shared points never
    alternate."""
    if (ex0 == fx0 and el0 == fl0) or (ex0 == fx1 and el0 == fl1) \
            or (ex1 == fx0 and el1 == fl0) or (ex1 == fx1 and el1 == fl1):
        return 0
    cdef ll ka0, ka1, kb0, kb1, t
    cdef int la0, la1, lb0, lb1, lt
    ka0 = -ex0 if el0 else ex0
    la0 = el0
    ka1 = -ex1 if el1 else ex1
    la1 = el1
    kb0 = -fx0 if fl0 else fx0
    lb0 = fl0
    kb1 = -fx1 if fl1 else fx1
    lb1 = fl1
    # sort the two points of each pair (level first, then key)
    if la1 < la0 or (la1 == la0 and ka1 < ka0):
        t = ka0; ka0 = ka1; ka1 = t
        lt = la0; la0 = la1; la1 = lt
    if lb1 < lb0 or (lb1 == lb0 and kb1 < kb0):
        t = kb0; kb0 = kb1; kb1 = t
        lt = lb0; lb0 = lb1; lb1 = lt
    # merge the four points; word alternates iff neighbours differ twice
    cdef int who[4]
    cdef int ia = 0, ib = 0, k = 0
    while ia < 2 and ib < 2:
        if ia == 0:
            if ib == 0:
                if (la0 < lb0) or (la0 == lb0 and ka0 < kb0):
                    who[k] = 0; ia += 1
                else:
                    who[k] = 1; ib += 1
            else:
                if (la0 < lb1) or (la0 == lb1 and ka0 < kb1):
                    who[k] = 0; ia += 1
                else:
                    who[k] = 1; ib += 1
        else:
            if ib == 0:
                if (la1 < lb0) or (la1 == lb0 and ka1 < kb0):
                    who[k] = 0; ia += 1
                else:
                    who[k] = 1; ib += 1
            else:
                if (la1 < lb1) or (la1 == lb1 and ka1 < kb1):
                    who[k] = 0; ia += 1
                else:
                    who[k] = 1; ib += 1
        k += 1
    while ia < 2:
        who[k] = 0; ia += 1; k += 1
    while ib < 2:
        who[k] = 1; ib += 1; k += 1
    return who[0] != who[1] and who[1] != who[2]


def strip_alternation_count(ll ex0, int el0, ll ex1, int el1,
                            ll fx0, int fl0, ll fx1, int fl1,
                            ll step, int kmax):
    """Count translates k in [-kmax, kmax] at which the two lifts alternate."""
    cdef int total = 0
    cdef int k
    cdef ll off
    for k in range(-kmax, kmax + 1):
        off = k * step
        if _alt(ex0, el0, ex1, el1, fx0 + off, fl0, fx1 + off, fl1):
            total += 1
    return total


def strip_self_count(ll ex0, int el0, ll ex1, int el1, ll step, int kmax):
    """Self-crossing count of one lift: positive translates only."""
    cdef int total = 0
    cdef int k
    cdef ll off
    for k in range(1, kmax + 1):
        off = k * step
        if _alt(ex0, el0, ex1, el1, ex0 + off, el0, ex1 + off, el1):
            total += 1
    return total


def circular_interleave(ll a, ll b, ll c, ll d, ll m):
    """1 if chords {a,b} and {c,d} of an m-cycle interleave, else 0."""
    # C-style % truncates toward zero, so renormalize negatives
    cdef ll ca = ((c - a) % m + m) % m
    cdef ll da = ((d - a) % m + m) % m
    cdef ll ba = ((b - a) % m + m) % m
    cdef bint ic = 0 < ca < ba
    cdef bint jd = 0 < da < ba
    return 1 if ic != jd else 0


# ---------------------------------------------------------------------------
# Longest cycle
# ---------------------------------------------------------------------------


cdef ll _reach(ll start, ll free, ll* adj) nogil:
    cdef ll seen = start & free
    cdef ll frontier = seen
    cdef ll nxt, f
    cdef int v
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = _lowbit(f)
            f &= f - 1
            nxt |= adj[v] & free & ~seen
        seen |= nxt
        frontier = nxt
    return seen


cdef inline int _lowbit(ll x) nogil:
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


cdef inline int _popcount(ll x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef struct LCState:
    ll* adj
    ll allowed
    int s
    int best
    long long nodes
    double deadline
    bint timed_out


cdef void _lc_dfs(LCState* st, int v, ll visited, int length):
    if st.timed_out:
        return
    st.nodes += 1
    if (st.nodes & TIME_MASK) == 0 and time.monotonic() > st.deadline:
        st.timed_out = 1
        return
    cdef ll free, reach, f
    cdef int u
    if length >= 3 and ((st.adj[v] >> st.s) & 1) and length > st.best:
        st.best = length
    free = st.adj[v] & st.allowed & ~visited
    if free:
        reach = _reach(free, st.allowed & ~visited, st.adj)
        if length + _popcount(reach) > st.best:
            if st.adj[st.s] & (reach | (<ll>1 << v)):
                f = free
                while f:
                    u = _lowbit(f)
                    f &= f - 1
                    _lc_dfs(st, u, visited | (<ll>1 << u), length + 1)
                    if st.timed_out:
                        return


def longest_cycle(int n, adj_list, double deadline):
    """Exact maximum cycle length by backtracking; 0 when acyclic."""
    cdef ll* adj = <ll*> PyMem_Malloc(n * sizeof(ll))
    if adj == NULL:
        raise MemoryError
    cdef int i, s
    cdef LCState st
    try:
        for i in range(n):
            adj[i] = adj_list[i]
        st.adj = adj
        st.best = 0
        st.nodes = 0
        st.deadline = deadline
        st.timed_out = 0
        for s in range(n):
            if n - s <= st.best:
                break
            st.s = s
            st.allowed = 0
            for i in range(s, n):
                st.allowed |= (<ll>1 << i)
            _lc_dfs(&st, s, <ll>1 << s, 1)
            if st.timed_out:
                return STATUS_TIMEOUT, st.best
        return STATUS_OPTIMAL, st.best
    finally:
        PyMem_Free(adj)


# ---------------------------------------------------------------------------
# Book (p-page) branch and bound
# ---------------------------------------------------------------------------


cdef struct BookState:
    int n, m, p
    int* eu
    int* ev
    int* inc        # CSR neighbours: incident edge ids per vertex
    int* inc_off
    int* pos
    int* spine
    int* page
    int* span_lo    # per placed edge
    int* span_hi
    int* placed     # edge ids per page, flattened [pg * m + idx]
    int* placed_cnt
    int best
    int* best_spine
    int* best_pages
    bint have_best
    long long explored
    long long node_cap
    double deadline
    bint timed_out
    int* pending    # scratch: edges completed by the current vertex
    int* pending_stack  # per depth offset


cdef int _book_edge_cost(BookState* st, int lo, int hi, int pg):
    cdef int c = 0, idx, e, a, b
    for idx in range(st.placed_cnt[pg]):
        e = st.placed[pg * st.m + idx]
        a = st.span_lo[e]
        b = st.span_hi[e]
        if a == lo or a == hi or b == lo or b == hi:
            continue
        if (lo < a < hi) != (lo < b < hi):
            c += 1
    return c


cdef void _book_assign(BookState* st, int* pending, int npend, int idx,
                       int i, int cost, int pages_used):
    if st.timed_out or st.best == 0:
        return
    if idx == npend:
        _book_place(st, i + 1, cost, pages_used)
        return
    cdef int e = pending[idx]
    cdef int a = st.pos[st.eu[e]]
    cdef int b = st.pos[st.ev[e]]
    cdef int lo, hi, pg, delta, limit
    if a < b:
        lo = a; hi = b
    else:
        lo = b; hi = a
    limit = pages_used + 1 if pages_used < st.p else st.p
    for pg in range(limit):
        st.explored += 1
        if (st.explored & TIME_MASK) == 0:
            if time.monotonic() > st.deadline or st.explored > st.node_cap:
                st.timed_out = 1
                return
        delta = _book_edge_cost(st, lo, hi, pg)
        if cost + delta >= st.best:
            continue
        st.page[e] = pg
        st.span_lo[e] = lo
        st.span_hi[e] = hi
        st.placed[pg * st.m + st.placed_cnt[pg]] = e
        st.placed_cnt[pg] += 1
        _book_assign(st, pending, npend, idx + 1, i, cost + delta,
                     pages_used if pages_used > pg + 1 else pg + 1)
        st.placed_cnt[pg] -= 1
        st.page[e] = -1
        if st.timed_out or st.best == 0:
            return


cdef void _book_place(BookState* st, int i, int cost, int pages_used):
    if st.timed_out:
        return
    cdef int v, j, e, npend, k
    cdef int* pending
    if i == st.n:
        if cost < st.best:
            st.best = cost
            st.have_best = 1
            for j in range(st.n):
                st.best_spine[j] = st.spine[j]
            for j in range(st.m):
                st.best_pages[j] = st.page[j]
        return
    pending = st.pending + i * st.m
    for v in range(1, st.n):
        if st.pos[v] >= 0:
            continue
        if i == st.n - 1 and st.n >= 3 and st.spine[1] > v:
            continue
        st.pos[v] = i
        st.spine[i] = v
        npend = 0
        for j in range(st.inc_off[v], st.inc_off[v + 1]):
            e = st.inc[j]
            if st.pos[st.eu[e]] >= 0 and st.pos[st.ev[e]] >= 0:
                pending[npend] = e
                npend += 1
        _book_assign(st, pending, npend, 0, i, cost, pages_used)
        st.spine[i] = -1
        st.pos[v] = -1
        if st.timed_out or st.best == 0:
            return


def book_search(int n, eu_list, ev_list, int p, int best_in,
                double deadline, long long node_cap):
    """Minimise same-page interleavings over spine orders and page maps."""
    cdef int m = len(eu_list)
    if n <= 1 or m == 0:
        return STATUS_OPTIMAL, 0, list(range(n)), [0] * m, 0
    cdef BookState st
    cdef int i
    cdef size_t sz
    st.n = n; st.m = m; st.p = p
    st.best = best_in
    st.have_best = 0
    st.explored = 0
    st.node_cap = node_cap
    st.deadline = deadline
    st.timed_out = 0
    st.eu = <int*> PyMem_Malloc(m * sizeof(int))
    st.ev = <int*> PyMem_Malloc(m * sizeof(int))
    st.inc = <int*> PyMem_Malloc(2 * m * sizeof(int))
    st.inc_off = <int*> PyMem_Malloc((n + 2) * sizeof(int))
    st.pos = <int*> PyMem_Malloc(n * sizeof(int))
    st.spine = <int*> PyMem_Malloc(n * sizeof(int))
    st.page = <int*> PyMem_Malloc(m * sizeof(int))
    st.span_lo = <int*> PyMem_Malloc(m * sizeof(int))
    st.span_hi = <int*> PyMem_Malloc(m * sizeof(int))
    st.placed = <int*> PyMem_Malloc(p * m * sizeof(int))
    st.placed_cnt = <int*> PyMem_Malloc(p * sizeof(int))
    st.best_spine = <int*> PyMem_Malloc(n * sizeof(int))
    st.best_pages = <int*> PyMem_Malloc(m * sizeof(int))
    st.pending = <int*> PyMem_Malloc(n * m * sizeof(int))
    st.pending_stack = NULL
    try:
        for i in range(m):
            st.eu[i] = eu_list[i]
            st.ev[i] = ev_list[i]
            st.page[i] = -1
        # CSR incidence, edge ids ascending per vertex
        counts = [0] * n
        for i in range(m):
            counts[eu_list[i]] += 1
            counts[ev_list[i]] += 1
        off = 0
        offs = []
        for i in range(n):
            offs.append(off)
            off += counts[i]
        offs.append(off)
        fill = list(offs[:n])
        for i in range(m):
            st.inc[fill[eu_list[i]]] = i
            fill[eu_list[i]] += 1
            st.inc[fill[ev_list[i]]] = i
            fill[ev_list[i]] += 1
        for i in range(n + 1):
            st.inc_off[i] = offs[i]
        for i in range(n):
            st.pos[i] = -1
            st.spine[i] = -1
        for i in range(p):
            st.placed_cnt[i] = 0
        st.pos[0] = 0
        st.spine[0] = 0
        _book_place(&st, 1, 0, 0)
        status = STATUS_TIMEOUT if st.timed_out else STATUS_OPTIMAL
        if st.have_best:
            return (status, st.best, [st.best_spine[i] for i in range(n)],
                    [st.best_pages[i] for i in range(m)], st.explored)
        return status, st.best, None, None, st.explored
    finally:
        PyMem_Free(st.eu); PyMem_Free(st.ev); PyMem_Free(st.inc)
        PyMem_Free(st.inc_off); PyMem_Free(st.pos); PyMem_Free(st.spine)
        PyMem_Free(st.page); PyMem_Free(st.span_lo); PyMem_Free(st.span_hi)
        PyMem_Free(st.placed); PyMem_Free(st.placed_cnt)
        PyMem_Free(st.best_spine); PyMem_Free(st.best_pages)
        PyMem_Free(st.pending)


# ---------------------------------------------------------------------------
# 2-page embeddability decision (parity union-find, no page branching)
# ---------------------------------------------------------------------------


cdef struct EmbState:
    int n, m
    int* eu
    int* ev
    int* inc
    int* inc_off
    int* pos
    int* spine
    int* state      # 0 untouched, 1 dangling, 2 completed
    int* dang_pos
    int* span_lo
    int* span_hi
    int* placed
    int placed_cnt
    int* dangling
    int dangling_cnt
    int* parent
    int* parity
    int* trail
    int trail_cnt
    long long explored
    long long node_cap
    double deadline
    bint timed_out
    bint found


cdef int _emb_find(EmbState* st, int x, int* par_out):
    cdef int p = 0
    while st.parent[x] != x:
        p ^= st.parity[x]
        x = st.parent[x]
    par_out[0] = p
    return x


cdef bint _emb_union(EmbState* st, int a, int b, int rel):
    cdef int pa, pb, ra, rb
    ra = _emb_find(st, a, &pa)
    rb = _emb_find(st, b, &pb)
    if ra == rb:
        return (pa ^ pb) == rel
    st.parent[rb] = ra
    st.parity[rb] = pa ^ pb ^ rel
    st.trail[st.trail_cnt] = rb
    st.trail_cnt += 1
    return 1


cdef bint _emb_place(EmbState* st, int i):
    if st.timed_out:
        return 0
    cdef int v, j, e, f, k, lo, hi, pu, pv
    cdef int uf_mark, placed_mark, dang_mark, ndone
    cdef bint ok
    if i == st.n:
        st.found = 1
        return 1
    for v in range(1, st.n):
        if st.pos[v] >= 0:
            continue
        if i == st.n - 1 and st.n >= 3 and st.spine[1] > v:
            continue
        st.explored += 1
        if (st.explored & TIME_MASK) == 0:
            if time.monotonic() > st.deadline or st.explored > st.node_cap:
                st.timed_out = 1
                return 0
        st.pos[v] = i
        st.spine[i] = v
        uf_mark = st.trail_cnt
        placed_mark = st.placed_cnt
        dang_mark = st.dangling_cnt
        ndone = 0
        ok = 1
        for j in range(st.inc_off[v], st.inc_off[v + 1]):
            e = st.inc[j]
            pu = st.pos[st.eu[e]]
            pv = st.pos[st.ev[e]]
            if pu < 0 or pv < 0:
                st.state[e] = 1
                st.dang_pos[e] = i
                st.dangling[st.dangling_cnt] = e
                st.dangling_cnt += 1
                continue
            if pu < pv:
                lo = pu; hi = pv
            else:
                lo = pv; hi = pu
            for k in range(st.placed_cnt):
                f = st.placed[k]
                if st.span_lo[f] == lo or st.span_lo[f] == hi \
                        or st.span_hi[f] == lo or st.span_hi[f] == hi:
                    continue
                if (lo < st.span_lo[f] < hi) != (lo < st.span_hi[f] < hi):
                    if not _emb_union(st, e, f, 1):
                        ok = 0
                        break
            if ok:
                for k in range(st.dangling_cnt):
                    f = st.dangling[k]
                    if st.state[f] != 1 or f == e:
                        continue
                    if st.eu[f] == v or st.ev[f] == v:
                        continue  # completes this very step, lands at i
                    if lo < st.dang_pos[f] < hi:
                        if not _emb_union(st, e, f, 1):
                            ok = 0
                            break
            if not ok:
                break
            st.span_lo[e] = lo
            st.span_hi[e] = hi
            st.state[e] = 2
            st.placed[st.placed_cnt] = e
            st.placed_cnt += 1
            ndone += 1
        if ok:
            if _emb_place(st, i + 1):
                return 1
        for k in range(placed_mark, st.placed_cnt):
            st.state[st.placed[k]] = 1  # back to dangling
        st.placed_cnt = placed_mark
        while st.dangling_cnt > dang_mark:
            st.dangling_cnt -= 1
            st.state[st.dangling[st.dangling_cnt]] = 0
        while st.trail_cnt > uf_mark:
            st.trail_cnt -= 1
            k = st.trail[st.trail_cnt]
            st.parent[k] = k
            st.parity[k] = 0
        st.spine[i] = -1
        st.pos[v] = -1
        if st.timed_out:
            return 0
    return 0


def book_embed2(int n, eu_list, ev_list, double deadline, long long node_cap):
    """Decide 0-crossing 2-page embeddability (see the pure twin)."""
    cdef int m = len(eu_list)
    if n <= 2 or m == 0:
        return STATUS_OPTIMAL, list(range(n)), [0] * m, 0
    cdef EmbState st
    cdef int i, e, p
    st.n = n; st.m = m
    st.explored = 0
    st.node_cap = node_cap
    st.deadline = deadline
    st.timed_out = 0
    st.found = 0
    st.placed_cnt = 0
    st.dangling_cnt = 0
    st.trail_cnt = 0
    st.eu = <int*> PyMem_Malloc(m * sizeof(int))
    st.ev = <int*> PyMem_Malloc(m * sizeof(int))
    st.inc = <int*> PyMem_Malloc(2 * m * sizeof(int))
    st.inc_off = <int*> PyMem_Malloc((n + 2) * sizeof(int))
    st.pos = <int*> PyMem_Malloc(n * sizeof(int))
    st.spine = <int*> PyMem_Malloc(n * sizeof(int))
    st.state = <int*> PyMem_Malloc(m * sizeof(int))
    st.dang_pos = <int*> PyMem_Malloc(m * sizeof(int))
    st.span_lo = <int*> PyMem_Malloc(m * sizeof(int))
    st.span_hi = <int*> PyMem_Malloc(m * sizeof(int))
    st.placed = <int*> PyMem_Malloc(m * sizeof(int))
    st.dangling = <int*> PyMem_Malloc(m * sizeof(int))
    st.parent = <int*> PyMem_Malloc(m * sizeof(int))
    st.parity = <int*> PyMem_Malloc(m * sizeof(int))
    st.trail = <int*> PyMem_Malloc(m * sizeof(int))
    try:
        for i in range(m):
            st.eu[i] = eu_list[i]
            st.ev[i] = ev_list[i]
            st.state[i] = 0
            st.parent[i] = i
            st.parity[i] = 0
        counts = [0] * n
        for i in range(m):
            counts[eu_list[i]] += 1
            counts[ev_list[i]] += 1
        off = 0
        offs = []
        for i in range(n):
            offs.append(off)
            off += counts[i]
        offs.append(off)
        fill = list(offs[:n])
        for i in range(m):
            st.inc[fill[eu_list[i]]] = i
            fill[eu_list[i]] += 1
            st.inc[fill[ev_list[i]]] = i
            fill[ev_list[i]] += 1
        for i in range(n + 1):
            st.inc_off[i] = offs[i]
        for i in range(n):
            st.pos[i] = -1
            st.spine[i] = -1
        st.pos[0] = 0
        st.spine[0] = 0
        for i in range(st.inc_off[0], st.inc_off[1]):
            e = st.inc[i]
            st.state[e] = 1
            st.dang_pos[e] = 0
            st.dangling[st.dangling_cnt] = e
            st.dangling_cnt += 1
        _emb_place(&st, 1)
        if st.timed_out:
            return STATUS_TIMEOUT, None, None, st.explored
        if not st.found:
            return STATUS_OPTIMAL, None, None, st.explored
        spine = [st.spine[i] for i in range(n)]
        pages = []
        for e in range(m):
            _emb_find(&st, e, &i)
            pages.append(i)
        return STATUS_OPTIMAL, spine, pages, st.explored
    finally:
        PyMem_Free(st.eu); PyMem_Free(st.ev); PyMem_Free(st.inc)
        PyMem_Free(st.inc_off); PyMem_Free(st.pos); PyMem_Free(st.spine)
        PyMem_Free(st.state); PyMem_Free(st.dang_pos); PyMem_Free(st.span_lo)
        PyMem_Free(st.span_hi); PyMem_Free(st.placed); PyMem_Free(st.dangling)
        PyMem_Free(st.parent); PyMem_Free(st.parity); PyMem_Free(st.trail)


# ---------------------------------------------------------------------------
# Cylindrical subproblem
# ---------------------------------------------------------------------------


cdef struct RouteState:
    int m                 # edges
    int total_cands
    int* ncand            # per ordered edge
    int* cand_off         # prefix offsets into flat candidate arrays
    long long* cost       # flat pair costs [off_a + ci][off_b + cj]
    long long* minvs      # per candidate: cost against assigned edges
    int* chosen
    long long best
    int* best_assign
    bint have_best
    long long explored
    long long node_cap
    double deadline
    bint timed_out


cdef long long _lb_tail(RouteState* st, int a):
    cdef long long t = 0, mn
    cdef int b, cj
    for b in range(a, st.m):
        mn = st.minvs[st.cand_off[b]]
        for cj in range(1, st.ncand[b]):
            if st.minvs[st.cand_off[b] + cj] < mn:
                mn = st.minvs[st.cand_off[b] + cj]
        t += mn
        if t >= INFEASIBLE:
            break
    return t


cdef void _route_dfs(RouteState* st, int a, long long cost_so_far):
    if st.timed_out:
        return
    cdef int ci, b, cj, i
    cdef long long c
    cdef long long* tab
    if a == st.m:
        if cost_so_far < st.best:
            st.best = cost_so_far
            st.have_best = 1
            for i in range(st.m):
                st.best_assign[i] = st.chosen[i]
        return
    for ci in range(st.ncand[a]):
        st.explored += 1
        if (st.explored & TIME_MASK) == 0:
            if time.monotonic() > st.deadline or st.explored > st.node_cap:
                st.timed_out = 1
                return
        c = cost_so_far + st.minvs[st.cand_off[a] + ci]
        if c >= st.best:
            continue
        st.chosen[a] = ci
        tab = st.cost + <size_t>(st.cand_off[a] + ci) * st.total_cands
        for b in range(a + 1, st.m):
            for cj in range(st.ncand[b]):
                st.minvs[st.cand_off[b] + cj] += tab[st.cand_off[b] + cj]
        if c + _lb_tail(st, a + 1) < st.best:
            _route_dfs(st, a + 1, c)
        for b in range(a + 1, st.m):
            for cj in range(st.ncand[b]):
                st.minvs[st.cand_off[b] + cj] -= tab[st.cand_off[b] + cj]
        st.chosen[a] = -1
        if st.timed_out or st.best == 0:
            return


def cyl_subproblem(eu_list, ev_list, side_list, rank_list, int n_in,
                   int n_out, int cap, long long best_in, double deadline,
                   long long node_cap):
    """Exact minimum over route/winding assignments for fixed circles.

    Mirrors the pure twin: same candidate enumeration, same edge order,
    same depth-first traversal.
    """
    cdef int m = len(eu_list)
    if m == 0:
        return STATUS_OPTIMAL, 0, [], 0
    cdef ll step = (n_in if n_in else 1) * (n_out if n_out else 1)
    cdef ll unit_in = step // n_in if n_in else 0
    cdef ll unit_out = step // n_out if n_out else 0

    # candidate tuples (kind, w, x0, l0, x1, l1) per edge, python-side
    cands = []
    cdef int i, u, v
    cdef ll xu, xv, delta
    cdef int lu, lv
    for i in range(m):
        u = eu_list[i]
        v = ev_list[i]
        if side_list[u] == 0:
            xu = rank_list[u] * unit_in; lu = 0
        else:
            xu = rank_list[u] * unit_out; lu = 1
        if side_list[v] == 0:
            xv = rank_list[v] * unit_in; lv = 0
        else:
            xv = rank_list[v] * unit_out; lv = 1
        clist = []
        if side_list[u] == side_list[v]:
            clist.append((side_list[u], 0, xu, lu, xv, lv))
            delta = xv - xu
            ws = (0, -1) if delta > 0 else (0, 1)
            for w in ws:
                clist.append((2, w, xu, lu, xv + w * step, lv))
        else:
            for w in range(-cap, cap + 1):
                clist.append((2, w, xu, lu, xv + w * step, lv))
        cands.append(clist)

    order = sorted(range(m), key=lambda j: (len(cands[j]), eu_list[j],
                                            ev_list[j]))

    cdef RouteState st
    st.m = m
    st.best = best_in
    st.have_best = 0
    st.explored = 0
    st.node_cap = node_cap
    st.deadline = deadline
    st.timed_out = 0
    st.ncand = <int*> PyMem_Malloc(m * sizeof(int))
    st.cand_off = <int*> PyMem_Malloc((m + 1) * sizeof(int))
    st.chosen = <int*> PyMem_Malloc(m * sizeof(int))
    st.best_assign = <int*> PyMem_Malloc(m * sizeof(int))
    cdef int total = 0
    for i in range(m):
        st.ncand[i] = len(cands[order[i]])
        st.cand_off[i] = total
        total += st.ncand[i]
    st.cand_off[m] = total
    st.total_cands = total
    st.cost = <long long*> PyMem_Malloc(<size_t>total * total * sizeof(long long))
    st.minvs = <long long*> PyMem_Malloc(total * sizeof(long long))
    if st.cost == NULL or st.minvs == NULL:
        raise MemoryError
    cdef int a, b, ci, cj, ei, ej, kind_i, kind_j, wi, wj, kmax
    cdef ll ix0, ix1, jx0, jx1
    cdef int il0, il1, jl0, jl1
    cdef bint adjacent
    cdef long long cval
    try:
        for i in range(total):
            st.minvs[i] = 0
        for a in range(m):
            ei = order[a]
            for b in range(a + 1, m):
                ej = order[b]
                adjacent = (eu_list[ei] == eu_list[ej]
                            or eu_list[ei] == ev_list[ej]
                            or ev_list[ei] == eu_list[ej]
                            or ev_list[ei] == ev_list[ej])
                for ci in range(st.ncand[a]):
                    kind_i, wi, ix0, il0, ix1, il1 = cands[ei][ci]
                    for cj in range(st.ncand[b]):
                        kind_j, wj, jx0, jl0, jx1, jl1 = cands[ej][cj]
                        if kind_i == 2 and kind_j == 2:
                            kmax = abs(wi) + abs(wj) + 3
                            cval = 0
                            for i in range(-kmax, kmax + 1):
                                if _alt(ix0, il0, ix1, il1,
                                        jx0 + i * step, jl0,
                                        jx1 + i * step, jl1):
                                    cval += 1
                            if adjacent and cval > 0:
                                cval = INFEASIBLE
                        elif adjacent:
                            cval = 0
                        elif kind_i == 0 and kind_j == 0:
                            cval = circular_interleave(
                                rank_list[eu_list[ei]], rank_list[ev_list[ei]],
                                rank_list[eu_list[ej]], rank_list[ev_list[ej]],
                                n_in)
                        elif kind_i == 1 and kind_j == 1:
                            cval = circular_interleave(
                                rank_list[eu_list[ei]], rank_list[ev_list[ei]],
                                rank_list[eu_list[ej]], rank_list[ev_list[ej]],
                                n_out)
                        else:
                            cval = 0
                        st.cost[<size_t>(st.cand_off[a] + ci) * total
                                + st.cand_off[b] + cj] = cval
                        st.cost[<size_t>(st.cand_off[b] + cj) * total
                                + st.cand_off[a] + ci] = cval
        _route_dfs(&st, 0, 0)
        status = STATUS_TIMEOUT if st.timed_out else STATUS_OPTIMAL
        if st.have_best:
            assignment = [None] * m
            for a in range(m):
                kind_i, wi = cands[order[a]][st.best_assign[a]][0:2]
                assignment[order[a]] = (kind_i, wi)
            return status, st.best, assignment, st.explored
        return status, st.best, None, st.explored
    finally:
        PyMem_Free(st.ncand); PyMem_Free(st.cand_off); PyMem_Free(st.chosen)
        PyMem_Free(st.best_assign); PyMem_Free(st.cost); PyMem_Free(st.minvs)

