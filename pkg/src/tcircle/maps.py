"""Combinatorial maps (rotation systems), face tracing, plane-map validation,
and curve certificates: a planarized drawing augmented with disjoint "blue"
cycles covering every vertex.

A map is encoded by segments and darts.  Segment ``s`` joins ``seg_ends[s] =
(a, b)`` and owns darts ``2s`` (at ``a``) and ``2s+1`` (at ``b``); the twin of
dart ``d`` is ``d ^ 1``.  Each node carries a clockwise cyclic sequence of its
darts.  Faces are traced with ``next(d) = rotation_successor(twin(d))``; a map
is a sphere (plane) map exactly when every connected component satisfies
V - E + F = 2 under that tracing.

Graph edges that were split by crossings are tagged with their edge id, so the
chain of segments realizing an edge is recoverable by walking through its
degree-4 crossing nodes.  Blue segments carry no edge id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstructionError, FormatError, ParameterError
from .graphs import Graph

VERTEX = "vertex"
CROSSING = "crossing"


@dataclass(frozen=True)
class RotationMap:
    node_kinds: tuple[str, ...]
    seg_ends: tuple[tuple[int, int], ...]
    seg_edge: tuple[int | None, ...]  # edge id for graph segments, None = blue
    rotations: tuple[tuple[int, ...], ...]

    @property
    def num_nodes(self) -> int:
        return len(self.node_kinds)

    @property
    def num_segments(self) -> int:
        return len(self.seg_ends)

    def owner(self, dart: int) -> int:
        return self.seg_ends[dart >> 1][dart & 1]

    def is_blue(self, seg: int) -> bool:
        return self.seg_edge[seg] is None

    def vertex_ids(self) -> list[int]:
        return [i for i, k in enumerate(self.node_kinds) if k == VERTEX]

    def crossing_ids(self) -> list[int]:
        return [i for i, k in enumerate(self.node_kinds) if k == CROSSING]


@dataclass(frozen=True)
class TCurveCertificate:
    """A plane map plus t disjoint blue cycles covering every graph vertex."""

    map: RotationMap
    blue_cycles: tuple[tuple[int, ...], ...]  # ordered blue segment walks
    t: int
    claimed_k: int


@dataclass(frozen=True)
class CoverPart:
    kind: str  # "singleton" | "single-edge" | "cycle"
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class CurveCover:
    parts: tuple[CoverPart, ...]


# ---------------------------------------------------------------------------
# Face tracing and validation
# ---------------------------------------------------------------------------


def trace_faces(m: RotationMap) -> list[list[int]]:
    """Partition darts into face boundary walks.

    Raises :class:`ParameterError` naming the node when a rotation is
    malformed (a dart missing, duplicated, or owned by the wrong node).
    """
    err = _structural_violation(m)
    if err is not None:
        raise ParameterError(err)
    succ = {}
    for rot in m.rotations:
        ln = len(rot)
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % ln]
    seen = set()
    faces = []
    for start in range(2 * m.num_segments):
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(walk)
    return faces


def _structural_violation(m: RotationMap) -> str | None:
    total = 2 * m.num_segments
    seen = {}
    for node, rot in enumerate(m.rotations):
        for d in rot:
            if not (0 <= d < total):
                return f"node {node}: dart {d} out of range"
            if d in seen:
                return f"node {node}: dart {d} already in rotation of node {seen[d]}"
            seen[d] = node
            if m.owner(d) != node:
                return f"node {node}: dart {d} belongs to node {m.owner(d)}"
    if len(seen) != total:
        missing = next(d for d in range(total) if d not in seen)
        return f"dart {missing} missing from every rotation"
    if len(m.rotations) != m.num_nodes:
        return "rotation table size differs from node count"
    for s, (a, b) in enumerate(m.seg_ends):
        if not (0 <= a < m.num_nodes and 0 <= b < m.num_nodes):
            return f"segment {s} has endpoint out of range"
    return None


def node_components(m: RotationMap) -> list[int]:
    """Connected-component index per node (components of the map graph)."""
    return _component_of_nodes(m)


def _component_of_nodes(m: RotationMap) -> list[int]:
    comp = [-1] * m.num_nodes
    c = 0
    for start in range(m.num_nodes):
        if comp[start] >= 0:
            continue
        comp[start] = c
        stack = [start]
        while stack:
            v = stack.pop()
            for d in m.rotations[v]:
                w = m.owner(d ^ 1)
                if comp[w] < 0:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def edge_chains(m: RotationMap) -> dict[int, list[int]]:
    """Ordered segment chain per edge id, from the smaller endpoint.

    Raises :class:`ParameterError` when the tagged segments of some edge do
    not form a simple path through crossing nodes between two vertex nodes.
    """
    by_edge: dict[int, list[int]] = {}
    for s, e in enumerate(m.seg_edge):
        if e is not None:
            by_edge.setdefault(e, []).append(s)
    chains = {}
    for e, segs in sorted(by_edge.items()):
        incidence: dict[int, list[int]] = {}
        for s in segs:
            a, b = m.seg_ends[s]
            if a == b:
                raise ParameterError(f"edge {e}: segment {s} is a loop")
            incidence.setdefault(a, []).append(s)
            incidence.setdefault(b, []).append(s)
        ends = [v for v, ss in incidence.items() if len(ss) == 1]
        mids = [v for v, ss in incidence.items() if len(ss) == 2]
        if len(ends) != 2 or len(ends) + len(mids) != len(incidence):
            raise ParameterError(f"edge {e}: segments do not form a path")
        for v in ends:
            if m.node_kinds[v] != VERTEX:
                raise ParameterError(f"edge {e}: path ends at non-vertex {v}")
        for v in mids:
            if m.node_kinds[v] != CROSSING:
                raise ParameterError(
                    f"edge {e}: interior node {v} is not a crossing")
        u = min(ends)
        chain = []
        prev = None
        cur = u
        while True:
            nxt_seg = next(s for s in incidence[cur] if s != prev)
            chain.append(nxt_seg)
            a, b = m.seg_ends[nxt_seg]
            cur = b if a == cur else a
            prev = nxt_seg
            if cur in ends and cur != u:
                break
            if len(chain) > len(segs):
                raise ParameterError(f"edge {e}: segment chain cycles")
        if len(chain) != len(segs):
            raise ParameterError(f"edge {e}: disconnected segment chain")
        chains[e] = chain
    return chains


def project_graph(m: RotationMap) -> Graph:
    """The original graph carried by the map's graph-colored segments."""
    vid = m.vertex_ids()
    if vid != list(range(len(vid))):
        raise ParameterError("vertex nodes must be ids 0..n-1")
    chains = edge_chains(m)
    edges = []
    for e, chain in sorted(chains.items()):
        nodes = {m.seg_ends[chain[0]][0], m.seg_ends[chain[0]][1]}
        if len(chain) > 1:
            first = set(m.seg_ends[chain[0]])
            last = set(m.seg_ends[chain[-1]])
            mids = set()
            for s in chain[1:]:
                mids |= set(m.seg_ends[s])
            u = next(iter(first - mids))
            v = next(iter(last - set(m.seg_ends[chain[-2]])))
            nodes = {u, v}
        edges.append(tuple(sorted(nodes)))
    return Graph(len(vid), tuple(edges))


def check_plane_map(m: RotationMap) -> str | None:
    """None when the map is a valid sphere map, else the first violation.

    Every connected component must satisfy V - E + F = 2; crossing nodes must
    have degree 4 with the two passing edges alternating in rotation, both
    graph-colored.  Disconnected maps are fine: components are independently
    placeable in the plane.
    """
    err = _structural_violation(m)
    if err is not None:
        return err
    for node, kind in enumerate(m.node_kinds):
        if kind not in (VERTEX, CROSSING):
            return f"node {node}: unknown kind {kind!r}"
        if kind == CROSSING:
            rot = m.rotations[node]
            if len(rot) != 4:
                return f"crossing node {node} has degree {len(rot)}"
            eids = [m.seg_edge[d >> 1] for d in rot]
            if any(e is None for e in eids):
                return f"crossing node {node} touched by a blue segment"
            if eids[0] != eids[2] or eids[1] != eids[3] or eids[0] == eids[1]:
                return f"crossing node {node}: passing edges do not alternate"
    try:
        edge_chains(m)
    except ParameterError as exc:
        return str(exc)
    faces = trace_faces(m)
    comp = _component_of_nodes(m)
    ncomp = max(comp) + 1 if comp else 0
    v_cnt = [0] * ncomp
    e_cnt = [0] * ncomp
    f_cnt = [0] * ncomp
    for node in range(m.num_nodes):
        v_cnt[comp[node]] += 1
    for s, (a, b) in enumerate(m.seg_ends):
        e_cnt[comp[a]] += 1
    for walk in faces:
        f_cnt[comp[m.owner(walk[0])]] += 1
    for c in range(ncomp):
        if e_cnt[c] == 0:
            continue  # isolated node: sphere around it, trivially planar
        if v_cnt[c] - e_cnt[c] + f_cnt[c] != 2:
            return (f"component {c}: V-E+F = "
                    f"{v_cnt[c]}-{e_cnt[c]}+{f_cnt[c]} != 2")
    return None


# ---------------------------------------------------------------------------
# Certificate verification
# ---------------------------------------------------------------------------


def blue_cycle_vertices(m: RotationMap, cycle: tuple[int, ...]) -> list[int]:
    """Vertex sequence along a blue cycle walk; raises on a broken walk."""
    if not cycle:
        raise ParameterError("empty blue cycle")
    if len(cycle) == 1:
        a, b = m.seg_ends[cycle[0]]
        if a != b:
            raise ParameterError(
                f"single-segment blue cycle {cycle[0]} is not a loop")
        return [a]
    first = set(m.seg_ends[cycle[0]])
    last = set(m.seg_ends[cycle[-1]])
    shared = first & last
    if not shared:
        raise ParameterError("blue cycle does not close")
    v = min(shared)
    verts = []
    cur = v
    for s in cycle:
        a, b = m.seg_ends[s]
        if a == b:
            raise ParameterError(
                "loop segment inside a multi-segment blue cycle")
        if cur not in (a, b):
            raise ParameterError("blue cycle segments do not chain")
        verts.append(cur)
        cur = b if cur == a else a
    if cur != v:
        raise ParameterError("blue cycle does not return to its start")
    return verts


def verify_certificate(g: Graph, cert: TCurveCertificate, t: int,
                       k: int) -> str | None:
    """None when the certificate attests a t-curve drawing of g with at most
    k crossings; otherwise a reject reason naming the failed clause.

    The verifier recounts everything; ``claimed_k`` is never trusted.  Runs
    in time polynomial in the certificate size.
    """
    m = cert.map
    err = check_plane_map(m)
    if err is not None:
        return f"plane-map: {err}"

    vids = m.vertex_ids()
    if len(vids) != g.n or vids != list(range(g.n)):
        return (f"graph-mismatch: certificate has vertex nodes {len(vids)}, "
                f"graph has {g.n}")
    try:
        projected = project_graph(m)
    except ParameterError as exc:
        return f"graph-mismatch: {exc}"
    if projected.edges != g.edges:
        return "graph-mismatch: projected edge set differs from the graph"

    crossings = m.crossing_ids()
    if len(crossings) > k:
        return (f"crossing-budget: {len(crossings)} crossing nodes exceed "
                f"budget {k}")

    if len(cert.blue_cycles) != cert.t:
        return (f"blue-count: certificate declares t={cert.t} but carries "
                f"{len(cert.blue_cycles)} blue cycles")
    if cert.t > t:
        return f"blue-count: certificate uses {cert.t} curves, limit is {t}"

    blue_segs = {s for s in range(m.num_segments) if m.is_blue(s)}
    used = []
    covered: dict[int, int] = {}
    for ci, cycle in enumerate(cert.blue_cycles):
        for s in cycle:
            if s not in blue_segs:
                return f"blue-cycle-broken: cycle {ci} uses non-blue segment {s}"
        try:
            verts = blue_cycle_vertices(m, cycle)
        except ParameterError as exc:
            return f"blue-cycle-broken: cycle {ci}: {exc}"
        if len(set(verts)) != len(verts):
            return f"blue-not-simple: cycle {ci} revisits a node"
        for v in verts:
            if m.node_kinds[v] != VERTEX:
                return f"blue-at-crossing: cycle {ci} passes node {v}"
            if v in covered:
                if covered[v] == ci:
                    return f"blue-not-simple: cycle {ci} revisits node {v}"
                return (f"blue-overlap: cycles {covered[v]} and {ci} share "
                        f"vertex {v}")
            covered[v] = ci
        used.extend(cycle)
    if len(used) != len(set(used)):
        return "blue-overlap: a blue segment appears in two cycles"
    stray = blue_segs - set(used)
    if stray:
        return f"blue-stray: segment {min(stray)} belongs to no blue cycle"
    for v in range(g.n):
        if v not in covered:
            return f"uncovered-vertex: vertex {v} lies on no blue cycle"
    return None


def certificate_crossings(cert: TCurveCertificate) -> int:
    return len(cert.map.crossing_ids())


# ---------------------------------------------------------------------------
# Curve covers
# ---------------------------------------------------------------------------


def extract_curve_cover(cert: TCurveCertificate) -> CurveCover:
    """Read off the cover structure from the vertices along each blue cycle.

    The certificate must verify against its own projected graph; feeding an
    unverified certificate is a precondition error.
    """
    g = project_graph(cert.map)
    err = verify_certificate(g, cert, cert.t, certificate_crossings(cert))
    if err is not None:
        raise ParameterError(f"certificate does not verify: {err}")
    parts = []
    for cycle in cert.blue_cycles:
        verts = blue_cycle_vertices(cert.map, cycle)
        if len(verts) == 1:
            parts.append(CoverPart("singleton", (verts[0],)))
        elif len(verts) == 2:
            parts.append(CoverPart("single-edge", tuple(verts)))
        else:
            parts.append(CoverPart("cycle", tuple(verts)))
    return CurveCover(tuple(parts))


def check_cover(cover: CurveCover, n: int) -> str | None:
    """None when parts are pairwise disjoint and jointly cover 0..n-1."""
    seen: set[int] = set()
    for part in cover.parts:
        expect = {"singleton": 1, "single-edge": 2}.get(part.kind)
        if expect is not None and len(part.vertices) != expect:
            return f"part {part.kind} has {len(part.vertices)} vertices"
        if part.kind == "cycle" and len(part.vertices) < 3:
            return "cycle part with fewer than 3 vertices"
        for v in part.vertices:
            if v in seen:
                return f"vertex {v} in two parts"
            seen.add(v)
    if seen != set(range(n)):
        missing = min(set(range(n)) - seen)
        return f"vertex {missing} uncovered"
    return None


# ---------------------------------------------------------------------------
# Coface curve merging (certificate surgery)
# ---------------------------------------------------------------------------


def merge_coface_curves(cert: TCurveCertificate,
                        face_id: int) -> TCurveCertificate:
    """Merge all blue cycles entering one face into a single blue cycle.

    For each cycle entering the face, one of its blue segments on the face
    boundary is removed, and the opened paths are re-chained with new blue
    bridge segments routed inside the face.  The graph part and all crossings
    are untouched; the curve count drops by (cycles entering - 1).
    """
    m = cert.map
    faces = trace_faces(m)
    if not (0 <= face_id < len(faces)):
        raise ParameterError(f"no face {face_id}")
    walk = faces[face_id]

    seg_cycle: dict[int, int] = {}
    for ci, cycle in enumerate(cert.blue_cycles):
        for s in cycle:
            seg_cycle[s] = ci

    # first blue dart of each entering cycle, in face walk order
    sites = []  # (dart, cycle id)
    seen_cycles = set()
    for d in walk:
        s = d >> 1
        if m.is_blue(s) and s in seg_cycle:
            ci = seg_cycle[s]
            if ci not in seen_cycles:
                seen_cycles.add(ci)
                sites.append((d, ci))
    if len(sites) < 2:
        raise ParameterError(
            f"face {face_id} is entered by {len(sites)} blue cycle(s); "
            "merging needs at least 2")

    r = len(sites)
    deleted = [d >> 1 for d, _ in sites]
    deleted_set = set(deleted)

    # new segment numbering: survivors keep relative order, bridges appended
    old_to_new = {}
    new_ends = []
    new_edge = []
    for s in range(m.num_segments):
        if s in deleted_set:
            continue
        old_to_new[s] = len(new_ends)
        new_ends.append(m.seg_ends[s])
        new_edge.append(m.seg_edge[s])

    # bridge i joins end-node of site i to start-node of site i+1
    bridge_dart_for_old: dict[int, int] = {}
    for i in range(r):
        d_i, _ = sites[i]
        d_next, _ = sites[(i + 1) % r]
        b_node = m.owner(d_i ^ 1)
        a_node = m.owner(d_next)
        seg = len(new_ends)
        new_ends.append((b_node, a_node))
        new_edge.append(None)
        # the bridge's dart at b_node substitutes the deleted dart there,
        # and its far dart substitutes the next site's deleted dart
        bridge_dart_for_old[d_i ^ 1] = 2 * seg
        bridge_dart_for_old[d_next] = 2 * seg + 1

    def renum(d: int) -> int:
        if (d >> 1) in deleted_set:
            return bridge_dart_for_old[d]
        return 2 * old_to_new[d >> 1] + (d & 1)

    new_rotations = tuple(tuple(renum(d) for d in rot) for rot in m.rotations)
    new_map = RotationMap(m.node_kinds, tuple(new_ends), tuple(new_edge),
                          new_rotations)

    # merged blue walk: a_1 -P_1-> b_1 -bridge-> a_2 -P_2-> b_2 ... -> a_1
    merged: list[int] = []
    for i in range(r):
        d_i, ci = sites[i]
        s_i = d_i >> 1
        cyc = list(cert.blue_cycles[ci])
        pos = cyc.index(s_i)
        path = cyc[pos + 1:] + cyc[:pos]
        a_node = m.owner(d_i)
        # orient the path from a_node around to b_node
        if path:
            first_pts = set(m.seg_ends[path[0]])
            if a_node not in first_pts:
                path.reverse()
        merged.extend(old_to_new[s] for s in path)
        # bridge from b_i to a_{i+1} was appended as segment pair above
        merged.append(bridge_dart_for_old[d_i ^ 1] >> 1)

    survivors = tuple(
        tuple(old_to_new[s] for s in cyc)
        for ci, cyc in enumerate(cert.blue_cycles) if ci not in seen_cycles)
    new_cycles = survivors + (tuple(merged),)
    new_t = cert.t - (r - 1)
    new_cert = TCurveCertificate(new_map, new_cycles, new_t, cert.claimed_k)

    g = project_graph(new_map)
    err = verify_certificate(g, new_cert, new_t, certificate_crossings(cert))
    if err is not None:
        raise ConstructionError(f"merged certificate fails to verify: {err}")
    return new_cert


# ---------------------------------------------------------------------------
# Builders and text formats
# ---------------------------------------------------------------------------


class MapBuilder:
    """Mutable helper assembling a RotationMap."""

    def __init__(self):
        self.node_kinds: list[str] = []
        self.seg_ends: list[tuple[int, int]] = []
        self.seg_edge: list[int | None] = []
        self.rotations: list[list[int]] = []

    def add_node(self, kind: str) -> int:
        self.node_kinds.append(kind)
        self.rotations.append([])
        return len(self.node_kinds) - 1

    def add_segment(self, a: int, b: int, edge: int | None) -> int:
        self.seg_ends.append((a, b))
        self.seg_edge.append(edge)
        return len(self.seg_ends) - 1

    def dart(self, seg: int, end: int) -> int:
        return 2 * seg + end

    def finish(self) -> RotationMap:
        return RotationMap(tuple(self.node_kinds), tuple(self.seg_ends),
                           tuple(self.seg_edge),
                           tuple(tuple(r) for r in self.rotations))


def plane_map_from_neighbors(n: int, neighbors: list[list[int]]) -> RotationMap:
    """Map of a simple graph from clockwise neighbor lists per vertex."""
    b = MapBuilder()
    for _ in range(n):
        b.add_node(VERTEX)
    edge_ids: dict[tuple[int, int], int] = {}
    edges = sorted({(min(u, v), max(u, v))
                    for u in range(n) for v in neighbors[u]})
    seg_of: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(edges):
        edge_ids[(u, v)] = i
        seg_of[(u, v)] = b.add_segment(u, v, i)
    for u in range(n):
        rot = []
        for v in neighbors[u]:
            key = (min(u, v), max(u, v))
            if key not in seg_of:
                raise ParameterError(f"neighbor list names missing edge {key}")
            s = seg_of[key]
            rot.append(b.dart(s, 0 if u == key[0] else 1))
        b.rotations[u] = rot
    m = b.finish()
    err = _structural_violation(m)
    if err is not None:
        raise ParameterError(f"inconsistent neighbor lists: {err}")
    return m


def neighbors_from_map(m: RotationMap) -> list[list[int]]:
    """Clockwise neighbor lists (only valid for crossing-free simple maps)."""
    if m.crossing_ids():
        raise ParameterError("map has crossing nodes")
    return [[m.owner(d ^ 1) for d in rot] for rot in m.rotations]


def format_rotation_text(m: RotationMap) -> str:
    lines = []
    for v, nbrs in enumerate(neighbors_from_map(m)):
        lines.append(f"{v}: " + " ".join(str(u) for u in nbrs))
    return "\n".join(lines) + "\n"


def parse_rotation_text(text: str) -> RotationMap:
    rows: dict[int, list[int]] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if ":" not in ln:
            raise FormatError(f"bad rotation line {ln!r}")
        head, rest = ln.split(":", 1)
        try:
            v = int(head)
            nbrs = [int(x) for x in rest.split()]
        except ValueError as exc:
            raise FormatError(f"bad rotation line {ln!r}") from exc
        if v in rows:
            raise FormatError(f"vertex {v} listed twice")
        rows[v] = nbrs
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise FormatError("vertex ids must be 0..n-1")
    return plane_map_from_neighbors(n, [rows[v] for v in range(n)])


def format_cert_text(cert: TCurveCertificate) -> str:
    m = cert.map
    lines = [f"tcc-cert 1 t={cert.t} k={cert.claimed_k}", "NODES"]
    for i, kind in enumerate(m.node_kinds):
        lines.append(f"{i} {kind}")
    lines.append("SEGMENTS")
    for s, (a, bnd) in enumerate(m.seg_ends):
        e = m.seg_edge[s]
        tag = "blue" if e is None else str(e)
        color = "blue" if e is None else "graph"
        lines.append(f"{s} {a} {bnd} edge={tag} color={color}")
    lines.append("ROT")
    for v, rot in enumerate(m.rotations):
        lines.append(f"{v}: " + " ".join(str(d) for d in rot))
    lines.append("BLUE")
    for i, cyc in enumerate(cert.blue_cycles):
        lines.append(f"cycle {i}: " + " ".join(str(s) for s in cyc))
    return "\n".join(lines) + "\n"


def parse_cert_text(text: str) -> TCurveCertificate:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("tcc-cert 1 "):
        raise FormatError("missing tcc-cert 1 header")
    head = lines[0].split()
    try:
        t = int(next(p[2:] for p in head if p.startswith("t=")))
        k = int(next(p[2:] for p in head if p.startswith("k=")))
    except (StopIteration, ValueError) as exc:
        raise FormatError("header must carry t= and k=") from exc

    sections: dict[str, list[str]] = {}
    current = None
    for ln in lines[1:]:
        if ln in ("NODES", "SEGMENTS", "ROT", "BLUE"):
            current = ln
            sections[current] = []
            continue
        if current is None:
            raise FormatError(f"content before first section: {ln!r}")
        sections[current].append(ln)
    for sec in ("NODES", "SEGMENTS", "ROT"):
        if sec not in sections:
            raise FormatError(f"missing section {sec}")

    kinds = []
    for ln in sections["NODES"]:
        parts = ln.split()
        if len(parts) != 2 or int(parts[0]) != len(kinds):
            raise FormatError(f"bad node line {ln!r}")
        kinds.append(parts[1])
    seg_ends = []
    seg_edge: list[int | None] = []
    for ln in sections["SEGMENTS"]:
        parts = ln.split()
        if len(parts) != 5 or int(parts[0]) != len(seg_ends):
            raise FormatError(f"bad segment line {ln!r}")
        seg_ends.append((int(parts[1]), int(parts[2])))
        etag = parts[3]
        ctag = parts[4]
        if not etag.startswith("edge=") or not ctag.startswith("color="):
            raise FormatError(f"bad segment line {ln!r}")
        ev = etag[5:]
        seg_edge.append(None if ev == "blue" else int(ev))
        if (ev == "blue") != (ctag[6:] == "blue"):
            raise FormatError(f"segment {len(seg_ends)-1}: color/edge mismatch")
    rotations: list[tuple[int, ...]] = [()] * len(kinds)
    seen_rot = set()
    for ln in sections["ROT"]:
        head_, rest = ln.split(":", 1)
        v = int(head_)
        if v in seen_rot or not (0 <= v < len(kinds)):
            raise FormatError(f"bad rotation line {ln!r}")
        seen_rot.add(v)
        rotations[v] = tuple(int(x) for x in rest.split())
    if len(seen_rot) != len(kinds):
        raise FormatError("a node is missing its rotation line")
    cycles = []
    for ln in sections.get("BLUE", []):
        if not ln.startswith("cycle "):
            raise FormatError(f"bad blue line {ln!r}")
        head_, rest = ln.split(":", 1)
        idx = int(head_.split()[1])
        if idx != len(cycles):
            raise FormatError("blue cycles out of order")
        cycles.append(tuple(int(x) for x in rest.split()))
    m = RotationMap(tuple(kinds), tuple(seg_ends), tuple(seg_edge),
                    tuple(rotations))
    return TCurveCertificate(m, tuple(cycles), t, k)
