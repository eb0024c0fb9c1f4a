"""Exact search for t disjoint clean closed curves covering all vertices of an
embedded graph, and construction of the verifying certificate.

A curve is a closed alternating sequence of vertices and face transitions:
between consecutive vertices it runs as an arc inside one face, attached at
specific corners (occurrences of the vertices on the face boundary walk).
Inside a disk face a set of arcs is simultaneously drawable without crossings
exactly when no two of them have strictly interleaving endpoint positions,
with ends meeting at a shared corner always orderable locally.

Multi-component maps are supported by letting arcs join faces of different
components, which implicitly places one component inside a face of another.
Such merged regions are not disks, so face-local pruning is unsound there;
instead every candidate found in multi-component mode is assembled into a
blue-augmented map and accepted only if it passes the sphere (Euler) check.
Overgeneration during the search therefore never yields a false positive,
and enumerating all corner attachments keeps refutations complete.

Degenerate curves are first-class: a loop at a single vertex and a pair of
parallel arcs between two vertices both count as cycles.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError, ParameterError, SearchBudgetExceeded
from .maps import (VERTEX, RotationMap, TCurveCertificate, node_components,
                   project_graph, trace_faces, verify_certificate)

_TIME_MASK = 0x3FF

FLOAT_FACE = -1  # synthetic face of an isolated vertex


@dataclass(frozen=True)
class Arc:
    """A curve transition: endpoint A at corner ca of face fa, endpoint B at
    corner cb of face fb.  fa == fb for ordinary in-face arcs."""

    fa: int
    ca: int
    fb: int
    cb: int

    @property
    def intra(self) -> bool:
        return self.fa == self.fb

    def key(self):
        a = (self.fa, self.ca)
        b = (self.fb, self.cb)
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class CurvePlan:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]  # arcs[i] joins vertices[i] to vertices[(i+1) % m]


class FaceStructure:
    """Faces, corners, and cofaciality of a crossing-free plane map."""

    def __init__(self, m: RotationMap):
        if m.crossing_ids():
            raise ParameterError("curve search expects a crossing-free map")
        if any(e is None for e in m.seg_edge):
            raise ParameterError(
                "curve search expects a map without blue segments")
        self.map = m
        self.faces = trace_faces(m)
        self.corner_owner = [[m.owner(d) for d in w] for w in self.faces]
        self.vertex_corners: dict[int, list[tuple[int, int]]] = {
            v: [] for v in range(m.num_nodes)}
        for f, owners in enumerate(self.corner_owner):
            for c, v in enumerate(owners):
                self.vertex_corners[v].append((f, c))
        self.node_comp = node_components(m)
        self.n_comp = (max(self.node_comp) + 1) if self.node_comp else 0
        self.multi = self.n_comp > 1
        self.is_triangulation = (not self.multi
                                 and all(len(w) == 3 for w in self.faces))
        self.face_comp = [self.node_comp[m.owner(w[0])] if w else 0
                          for w in self.faces]
        # (u, v) with u < v  ->  sorted list of (face, corner_u, corner_v)
        self.pair_arcs: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        for f, owners in enumerate(self.corner_owner):
            L = len(owners)
            for i in range(L):
                for j in range(i + 1, L):
                    u, v = owners[i], owners[j]
                    if u == v:
                        continue
                    if u < v:
                        self.pair_arcs.setdefault((u, v), []).append((f, i, j))
                    else:
                        self.pair_arcs.setdefault((v, u), []).append((f, j, i))
        for opts in self.pair_arcs.values():
            opts.sort()

    def cofacial(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self.pair_arcs

    def arc_options(self, u: int, v: int) -> list[tuple[int, int, int]]:
        """In-face placements for a step u -> v as (face, corner_u, corner_v)."""
        if u < v:
            return self.pair_arcs.get((u, v), [])
        return [(f, cv, cu) for (f, cu, cv) in self.pair_arcs.get((v, u), [])]

    def loop_options(self, v: int) -> list[tuple[int, int, int]]:
        """Loop placements at v as (face, corner_a, corner_b), ca <= cb."""
        by_face: dict[int, list[int]] = {}
        for (f, c) in self.vertex_corners[v]:
            by_face.setdefault(f, []).append(c)
        opts = []
        for f, cs in sorted(by_face.items()):
            for i in range(len(cs)):
                for j in range(i, len(cs)):
                    opts.append((f, cs[i], cs[j]))
        return opts


def _interleaves(a1, b1, a2, b2, length):
    """Strict alternation of chords (a1,b1), (a2,b2) on a cycle of length L."""
    i2 = 0 < (a2 - a1) % length < (b1 - a1) % length
    j2 = 0 < (b2 - a1) % length < (b1 - a1) % length
    return i2 != j2


def _arc_compatible(arc: Arc, other: Arc, length: int) -> bool:
    """Drawability of two arcs attached inside the same disk face."""
    if arc.ca == arc.cb or other.ca == other.cb:
        return True  # a loop occupies one corner and nests on either side
    shared = {arc.ca, arc.cb} & {other.ca, other.cb}
    if shared:
        return True  # ends at a shared corner can be ordered locally
    return not _interleaves(arc.ca, arc.cb, other.ca, other.cb, length)


class _UndoUF:
    """Union-find without path compression, supporting exact undo."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        self.parent[rb] = ra
        return rb

    def undo(self, token):
        if token is not None:
            self.parent[token] = token


_NO_MERGE = (None, None)


class _Search:
    """Backtracking enumeration of curve systems, yielding candidate plans
    deterministically (lexicographic order everywhere)."""

    def __init__(self, fs: FaceStructure, t: int, deadline: float):
        self.fs = fs
        self.t = t
        self.deadline = deadline
        self.nodes = 0
        self.covered = [fs.map.node_kinds[v] != VERTEX
                        for v in range(fs.map.num_nodes)]
        self.face_arcs: list[list[Arc]] = [[] for _ in fs.faces]
        self.plans: list[CurvePlan] = []
        self.face_uf = _UndoUF(len(fs.faces))
        self.comp_uf = _UndoUF(max(fs.n_comp, 1))

    def _tick(self):
        self.nodes += 1
        if (self.nodes & _TIME_MASK) == 0 and time.monotonic() > self.deadline:
            raise SearchBudgetExceeded("curve search out of budget")

    def _arc_ok(self, arc: Arc) -> bool:
        if self.fs.multi:
            return True  # merged regions are judged by the Euler gate
        if arc.fa == FLOAT_FACE:
            return True
        for other in self.face_arcs[arc.fa]:
            if not _arc_compatible(arc, other, len(self.fs.faces[arc.fa])):
                return False
        return True

    def _merge(self, fa: int, fb: int):
        """Region legality for an arc between faces fa, fb.

        Returns an undo token or the string "no".  Faces of one component
        never merge; components may only nest forest-like.
        """
        if fa == fb or FLOAT_FACE in (fa, fb):
            return _NO_MERGE
        if self.face_uf.find(fa) == self.face_uf.find(fb):
            return _NO_MERGE
        c1, c2 = self.fs.face_comp[fa], self.fs.face_comp[fb]
        if c1 == c2:
            return "no"
        if self.comp_uf.find(c1) == self.comp_uf.find(c2):
            return "no"
        return (self.face_uf.union(fa, fb), self.comp_uf.union(c1, c2))

    def _unmerge(self, token):
        if token is not _NO_MERGE:
            self.face_uf.undo(token[0])
            self.comp_uf.undo(token[1])

    def _commit_arc(self, arc: Arc):
        if arc.intra and arc.fa != FLOAT_FACE:
            self.face_arcs[arc.fa].append(arc)

    def _uncommit_arc(self, arc: Arc):
        if arc.intra and arc.fa != FLOAT_FACE:
            self.face_arcs[arc.fa].pop()

    # -- pruning --------------------------------------------------------

    def _one_curve_feasible(self, pool: list[int]) -> bool:
        """Necessary conditions for a single curve to cover ``pool``."""
        if len(pool) <= 2:
            return True
        fs = self.fs

        def linked(u, v):
            return (fs.node_comp[u] != fs.node_comp[v]
                    or fs.cofacial(u, v))

        for v in pool:
            d = 0
            for u in pool:
                if u != v and linked(u, v):
                    d += 1
                    if d == 2:
                        break
            if d < 2:
                return False
        seen = {pool[0]}
        stack = [pool[0]]
        while stack:
            v = stack.pop()
            for u in pool:
                if u not in seen and linked(u, v):
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(pool)

    # -- enumeration ------------------------------------------------------

    def run(self):
        yield from self._next_curve()

    def _next_curve(self):
        self._tick()
        uncovered = [v for v, c in enumerate(self.covered) if not c]
        if not uncovered:
            yield list(self.plans)
            return
        if len(self.plans) >= self.t:
            return
        if len(self.plans) == self.t - 1:
            if not self._one_curve_feasible(uncovered):
                return
        v0 = uncovered[0]
        fs = self.fs

        loops = fs.loop_options(v0)
        if not loops and not fs.vertex_corners[v0]:
            loops = [(FLOAT_FACE, 0, 0)]
        if fs.is_triangulation and loops:
            loops = loops[:1]
        for (f, ca, cb) in loops:
            arc = Arc(f, ca, f, cb)
            if not self._arc_ok(arc):
                continue
            self.covered[v0] = True
            self._commit_arc(arc)
            self.plans.append(CurvePlan((v0,), (arc,)))
            yield from self._next_curve()
            self.plans.pop()
            self._uncommit_arc(arc)
            self.covered[v0] = False

        self.covered[v0] = True
        yield from self._extend([v0], [])
        self.covered[v0] = False

    def _step_descriptions(self, v: int, u: int):
        """Arc attachments for a step v -> u: (fa, ca, fb, cb)."""
        fs = self.fs
        if fs.node_comp[v] == fs.node_comp[u]:
            opts = fs.arc_options(v, u)
            if fs.is_triangulation and opts:
                opts = opts[:1]
            return [(f, c1, f, c2) for (f, c1, c2) in opts]
        out = []
        for (f1, c1) in fs.vertex_corners[v]:
            for (f2, c2) in fs.vertex_corners[u]:
                out.append((f1, c1, f2, c2))
        return out

    def _close_curve(self, path, arcs, arc: Arc):
        self._commit_arc(arc)
        self.plans.append(CurvePlan(tuple(path), tuple(arcs) + (arc,)))
        yield from self._next_curve()
        self.plans.pop()
        self._uncommit_arc(arc)

    def _extend(self, path, arcs):
        self._tick()
        v = path[-1]
        v0 = path[0]

        # close the curve back to its anchor
        may_close = (len(path) == 2) or (len(path) >= 3 and path[1] < path[-1])
        if may_close:
            for (fa, ca, fb, cb) in self._step_descriptions(v, v0):
                arc = Arc(fa, ca, fb, cb)
                if len(path) == 2 and arc.key() < arcs[0].key():
                    continue  # unordered pair of parallel arcs
                token = self._merge(fa, fb)
                if token == "no":
                    continue
                if self._arc_ok(arc):
                    yield from self._close_curve(path, arcs, arc)
                self._unmerge(token)

        # extend to a new vertex
        for u in range(len(self.covered)):
            if self.covered[u]:
                continue
            for (fa, ca, fb, cb) in self._step_descriptions(v, u):
                arc = Arc(fa, ca, fb, cb)
                token = self._merge(fa, fb)
                if token == "no":
                    continue
                if self._arc_ok(arc):
                    self.covered[u] = True
                    path.append(u)
                    arcs.append(arc)
                    self._commit_arc(arc)
                    yield from self._extend(path, arcs)
                    self._uncommit_arc(arc)
                    arcs.pop()
                    path.pop()
                    self.covered[u] = False
                self._unmerge(token)


# ---------------------------------------------------------------------------
# Certificate construction
# ---------------------------------------------------------------------------

# Arc ends inserted after their anchor dart in increasing sub-rank order; the
# unit tests on nested in-face curves pin this orientation down.
def _corner_anchor(fs: FaceStructure, f: int, c: int) -> int:
    walk = fs.faces[f]
    return walk[(c - 1) % len(walk)] ^ 1


def _collect_ends(plans):
    """Per (face, corner) lists of arc ends: (arc_unique_id, side)."""
    ends: dict[tuple[int, int], list[tuple[int, int]]] = {}
    arc_index = {}
    aid = 0
    for plan in plans:
        for i, arc in enumerate(plan.arcs):
            arc_index[aid] = (plan, i, arc)
            if arc.fa != FLOAT_FACE:
                ends.setdefault((arc.fa, arc.ca), []).append((aid, 0))
                ends.setdefault((arc.fb, arc.cb), []).append((aid, 1))
            aid += 1
    return ends, arc_index


def _positions_ok_single_face(face_len, arc_ends):
    """Strict pairwise non-interleaving of fully-in-face arcs.

    arc_ends: arc id -> (posA, posB) fractional positions on the face cycle.
    """
    items = list(arc_ends.items())
    for i in range(len(items)):
        a1, (p1, q1) = items[i]
        for j in range(i + 1, len(items)):
            a2, (p2, q2) = items[j]
            if _interleaves(p1, q1, p2, q2, face_len):
                return False
    return True


def build_certificate(fs: FaceStructure, plans,
                      attempt_cap: int = 4096) -> TCurveCertificate | None:
    """Assemble and verify the blue-augmented map realizing the curve plans.

    Returns None when no corner micro-ordering yields a sphere map (possible
    only for multi-component candidates); raises ConstructionError when a
    single-component candidate fails, since that would be a bug.
    """
    m = fs.map
    ends, arc_index = _collect_ends(plans)

    # group corners by the face they lie in; size-2 corners get two orders
    face_corners: dict[int, list[tuple[int, int]]] = {}
    for (f, c) in ends:
        face_corners.setdefault(f, []).append((f, c))
    for v in face_corners.values():
        v.sort()

    # regions of the final arrangement: faces joined by inter-face arcs
    region_uf = _UndoUF(len(fs.faces))
    for aid, (plan, i, arc) in arc_index.items():
        if not arc.intra and arc.fa != FLOAT_FACE:
            region_uf.union(arc.fa, arc.fb)
    region_faces: dict[int, list[int]] = {}
    for f in face_corners:
        region_faces.setdefault(region_uf.find(f), []).append(f)

    # per-corner orderings: list of choices per corner; choice = tuple of
    # (aid, side) in insertion order
    def corner_orders(key):
        lst = ends[key]
        if len(lst) == 1:
            return [tuple(lst)]
        return [tuple(p) for p in itertools.permutations(lst)]

    # decide orders per region; single-face disk regions locally, merged
    # regions by product enumeration judged with the final Euler check
    fixed_order: dict[tuple[int, int], tuple] = {}
    pending_regions = []
    for root, faces_in in sorted(region_faces.items()):
        corners = sorted(c for f in faces_in for c in face_corners[f])
        if len(faces_in) == 1:  # an unmerged face stays a disk
            f = faces_in[0]
            face_len = len(fs.faces[f])
            found = None
            for combo in itertools.product(*(corner_orders(c)
                                             for c in corners)):
                trial = dict(zip(corners, combo))
                arc_pos = {}
                skip = False
                for (fc, cc), order in trial.items():
                    for rank, (aid, side) in enumerate(order):
                        pos = Fraction(cc) + Fraction(rank + 1,
                                                      len(order) + 1)
                        arc_pos.setdefault(aid, {})[side] = pos
                in_face = {}
                for aid, sides in arc_pos.items():
                    arc = arc_index[aid][2]
                    if arc.intra and arc.fa == f and len(sides) == 2:
                        in_face[aid] = (sides[0], sides[1])
                if _positions_ok_single_face(face_len, in_face):
                    found = trial
                    break
            if found is None:
                if not fs.multi:
                    raise ConstructionError(
                        "no consistent corner ordering in a disk face")
                return None
            fixed_order.update(found)
        else:
            pending_regions.append(corners)

    def assemble(order_map):
        inserts: dict[int, list[tuple[int, int]]] = {}
        new_ends = list(m.seg_ends)
        new_edge = list(m.seg_edge)
        cycles = []
        float_rot: dict[int, list[int]] = {}
        aid = 0
        for plan in plans:
            cyc = []
            nverts = len(plan.vertices)
            for i, arc in enumerate(plan.arcs):
                va = plan.vertices[i]
                vb = plan.vertices[(i + 1) % nverts]
                seg = len(new_ends)
                new_ends.append((va, vb))
                new_edge.append(None)
                cyc.append(seg)
                if arc.fa == FLOAT_FACE:
                    float_rot.setdefault(va, []).extend([2 * seg, 2 * seg + 1])
                else:
                    for side, (f, c) in ((0, (arc.fa, arc.ca)),
                                         (1, (arc.fb, arc.cb))):
                        order = order_map[(f, c)]
                        rank = order.index((aid, side))
                        anchor = _corner_anchor(fs, f, c)
                        inserts.setdefault(anchor, []).append(
                            (rank, 2 * seg + side))
                aid += 1
            cycles.append(tuple(cyc))
        new_rots = []
        for nid, rot in enumerate(m.rotations):
            if not rot and nid in float_rot:
                new_rots.append(tuple(float_rot[nid]))
                continue
            out = []
            for d in rot:
                out.append(d)
                for (_, nd) in sorted(inserts.get(d, [])):
                    out.append(nd)
            new_rots.append(tuple(out))
        new_map = RotationMap(m.node_kinds, tuple(new_ends), tuple(new_edge),
                              tuple(new_rots))
        cert = TCurveCertificate(new_map, tuple(cycles), len(plans), 0)
        g = project_graph(new_map)
        err = verify_certificate(g, cert, len(plans),
                                 len(new_map.crossing_ids()))
        return cert if err is None else None

    if not pending_regions:
        cert = assemble(fixed_order)
        if cert is None and not fs.multi:
            raise ConstructionError(
                "curve certificate failed verification in a disk-face build")
        return cert

    attempts = 0
    all_corners = [c for region in pending_regions for c in region]
    for combo in itertools.product(*(corner_orders(c) for c in all_corners)):
        attempts += 1
        if attempts > attempt_cap:
            return None
        trial = dict(fixed_order)
        trial.update(zip(all_corners, combo))
        cert = assemble(trial)
        if cert is not None:
            return cert
    return None


def find_curve_system(m: RotationMap, t: int,
                      deadline: float) -> TCurveCertificate | None:
    """First (lexicographic) verified t-curve certificate of the map, or None.

    Raises SearchBudgetExceeded on timeout: that outcome is unknown, not no.
    """
    if t < 1:
        raise ParameterError("t must be >= 1")
    fs = FaceStructure(m)
    search = _Search(fs, t, deadline)
    for plans in search.run():
        cert = build_certificate(fs, plans)
        if cert is not None:
            return cert
    return None
