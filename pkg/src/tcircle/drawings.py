"""Combinatorial drawing models with provably-minimal crossing counting.

Book (p-page) drawings: vertices on a spine, each edge on one page; two
edges on the same page cross exactly when their endpoints interleave along
the spine.

Cylindrical drawings: two circular vertex sequences (inner, outer) bounding
disk - annulus - disk regions on the sphere; each edge is routed in one
region.  Disk edges are chords counted by circular interleaving.  Annulus
edges carry an integer winding classifying their homotopy class rel
endpoints; pairs are counted by lifting to the universal cover (an infinite
strip) and counting the integer translates at which the four endpoints
strictly alternate around the strip boundary.  All coordinates are exact
rationals; floating point never enters a count.

Counts are minima over drawings realizing the given orders and routes:
chords are pairwise-minimal, and annulus geodesic representatives realize
all pairwise minima simultaneously.  Adjacent edges never count: a drawing
whose fixed windings would force adjacent annulus edges to cross is rejected
by validation instead, since no crossing-minimal drawing routes edges that
way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FormatError, ParameterError
from .graphs import Graph

ROUTE_INNER = "in"
ROUTE_OUTER = "out"
ROUTE_ANNULUS = "ann"


@dataclass(frozen=True)
class StripLift:
    """Universal-cover lift of an annulus edge.

    Endpoint A is the edge's smaller vertex id at exact angular coordinate
    ``x0`` on level ``l0`` (0 = inner circle, 1 = outer); endpoint B carries
    the winding offset already folded into ``x1``.
    """

    x0: Fraction
    l0: int
    x1: Fraction
    l1: int
    w: int


def _alternate(ax0, al0, ax1, al1, bx0, bl0, bx1, bl1) -> bool:
    """Strict alternation around the strip-disk boundary: level 0 by
    increasing x, then level 1 by decreasing x.  Shared points never
    alternate."""
    pa = {(ax0, al0), (ax1, al1)}
    pb = {(bx0, bl0), (bx1, bl1)}
    if pa & pb:
        return False
    pts = sorted([((al0, -ax0 if al0 else ax0), 0),
                  ((al1, -ax1 if al1 else ax1), 0),
                  ((bl0, -bx0 if bl0 else bx0), 1),
                  ((bl1, -bx1 if bl1 else bx1), 1)])
    w = [p[1] for p in pts]
    return w[0] != w[1] and w[1] != w[2]


def strip_pair_crossings(e: StripLift, f: StripLift) -> int:
    """Minimal crossings of two annulus edges: the number of integer
    translates k in [-K, K] at which their lifts strictly alternate, with
    K = |w_e| + |w_f| + 3 (beyond which the x-ranges cannot overlap)."""
    kmax = abs(e.w) + abs(f.w) + 3
    total = 0
    for k in range(-kmax, kmax + 1):
        if _alternate(e.x0, e.l0, e.x1, e.l1,
                      f.x0 + k, f.l0, f.x1 + k, f.l1):
            total += 1
    return total


def annulus_self_crossings(e: StripLift) -> int:
    """Self-crossings of one annulus edge: positive translates only."""
    kmax = 2 * abs(e.w) + 3
    total = 0
    for k in range(1, kmax + 1):
        if _alternate(e.x0, e.l0, e.x1, e.l1,
                      e.x0 + k, e.l0, e.x1 + k, e.l1):
            total += 1
    return total


# ---------------------------------------------------------------------------
# Book drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BookDrawing:
    spine: tuple[int, ...]
    pages: tuple[tuple[tuple[int, int], int], ...]  # ((u, v), page), sorted
    p: int

    @staticmethod
    def make(spine, page_map: dict, p: int) -> "BookDrawing":
        items = tuple(sorted(((min(u, v), max(u, v)), pg)
                             for (u, v), pg in page_map.items()))
        return BookDrawing(tuple(spine), items, p)

    @property
    def n(self) -> int:
        return len(self.spine)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for (e, _) in self.pages)

    def page_of(self) -> dict[tuple[int, int], int]:
        return dict(self.pages)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges())


def validate_book(d: BookDrawing) -> str | None:
    if sorted(d.spine) != list(range(d.n)):
        return "spine is not a permutation of the vertices"
    if d.p < 1:
        return "page count must be >= 1"
    seen = set()
    for (u, v), pg in d.pages:
        if not (0 <= u < d.n and 0 <= v < d.n) or u == v:
            return f"bad edge ({u},{v})"
        if (u, v) in seen:
            return f"edge ({u},{v}) assigned twice"
        seen.add((u, v))
        if not (1 <= pg <= d.p):
            return f"edge ({u},{v}) on page {pg} outside 1..{d.p}"
    return None


def book_crossings(d: BookDrawing) -> int:
    """Sum over same-page edge pairs with four distinct endpoints whose
    endpoints interleave along the spine; adjacent edges contribute 0."""
    err = validate_book(d)
    if err is not None:
        raise ParameterError(err)
    pos = {v: i for i, v in enumerate(d.spine)}
    items = [((pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]), pg)
             for (u, v), pg in d.pages]
    total = 0
    for i in range(len(items)):
        (a, b), pg1 = items[i]
        for j in range(i + 1, len(items)):
            (c, dd), pg2 = items[j]
            if pg1 != pg2:
                continue
            if a in (c, dd) or b in (c, dd):
                continue
            if (a < c < b) != (a < dd < b):
                total += 1
    return total


# ---------------------------------------------------------------------------
# Cylindrical drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CylindricalDrawing:
    inner: tuple[int, ...]
    outer: tuple[int, ...]
    routes: tuple[tuple[tuple[int, int], tuple], ...]  # ((u,v), route), sorted
    # route: ("in",) | ("out",) | ("ann", w)

    @staticmethod
    def make(inner, outer, route_map: dict) -> "CylindricalDrawing":
        items = tuple(sorted(((min(u, v), max(u, v)), tuple(r))
                             for (u, v), r in route_map.items()))
        return CylindricalDrawing(tuple(inner), tuple(outer), items)

    @property
    def n(self) -> int:
        return len(self.inner) + len(self.outer)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for (e, _) in self.routes)

    def route_of(self) -> dict[tuple[int, int], tuple]:
        return dict(self.routes)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges())


def _positions(d: CylindricalDrawing):
    side = {}
    rank = {}
    for i, v in enumerate(d.inner):
        side[v] = 0
        rank[v] = i
    for i, v in enumerate(d.outer):
        side[v] = 1
        rank[v] = i
    return side, rank


def edge_lift(d: CylindricalDrawing, u: int, v: int, w: int) -> StripLift:
    """Lift of annulus edge (u, v): endpoint A is min(u, v), endpoint B
    carries the +w offset.  Inner rank r of m maps to x = r/m at level 0,
    outer rank s of m' to x = s/m' at level 1."""
    side, rank = _positions(d)
    a, b = (u, v) if u < v else (v, u)
    n_in = max(len(d.inner), 1)
    n_out = max(len(d.outer), 1)

    def coord(z):
        if side[z] == 0:
            return Fraction(rank[z], n_in), 0
        return Fraction(rank[z], n_out), 1

    xa, la = coord(a)
    xb, lb = coord(b)
    return StripLift(xa, la, xb + w, lb, w)


def validate_cylindrical(d: CylindricalDrawing) -> str | None:
    """Partition, route legality, self-simplicity of every annulus edge, and
    absence of forced crossings between adjacent annulus edges."""
    both = list(d.inner) + list(d.outer)
    if sorted(both) != list(range(len(both))):
        return "inner and outer sequences must partition the vertices"
    side, _ = _positions(d)
    seen = set()
    ann_edges = []
    for (u, v), route in d.routes:
        if u == v or not (0 <= u < d.n and 0 <= v < d.n):
            return f"bad edge ({u},{v})"
        if (u, v) in seen:
            return f"edge ({u},{v}) routed twice"
        seen.add((u, v))
        kind = route[0]
        if kind == ROUTE_INNER:
            if side[u] != 0 or side[v] != 0:
                return f"edge ({u},{v}) routed in the inner disk but not inner-inner"
        elif kind == ROUTE_OUTER:
            if side[u] != 1 or side[v] != 1:
                return f"edge ({u},{v}) routed in the outer disk but not outer-outer"
        elif kind == ROUTE_ANNULUS:
            if len(route) != 2 or not isinstance(route[1], int):
                return f"edge ({u},{v}): annulus route needs an integer winding"
            lift = edge_lift(d, u, v, route[1])
            if annulus_self_crossings(lift) != 0:
                return (f"edge ({u},{v}) with winding {route[1]} is not "
                        "self-simple")
            ann_edges.append(((u, v), lift))
        else:
            return f"edge ({u},{v}): unknown route {kind!r}"
        if side[u] != side[v] and kind != ROUTE_ANNULUS:
            return f"edge ({u},{v}) joins the circles and must be an annulus route"
    for i in range(len(ann_edges)):
        (e1, l1) = ann_edges[i]
        for j in range(i + 1, len(ann_edges)):
            (e2, l2) = ann_edges[j]
            if len(set(e1) | set(e2)) != 3:
                continue  # only adjacent pairs
            if strip_pair_crossings(l1, l2) != 0:
                return (f"adjacent annulus edges {e1} and {e2} have windings "
                        "that force a crossing")
    return None


def _circ_interleave(a, b, c, dd, m):
    i = 0 < (c - a) % m < (b - a) % m
    j = 0 < (dd - a) % m < (b - a) % m
    return i != j


def cyl_crossings(d: CylindricalDrawing) -> int:
    """Crossing count of a valid cylindrical drawing: disk pairs by circular
    interleaving, annulus pairs by the strip formula, mixed regions and
    adjacent pairs 0."""
    err = validate_cylindrical(d)
    if err is not None:
        raise ParameterError(err)
    side, rank = _positions(d)
    n_in = max(len(d.inner), 1)
    n_out = max(len(d.outer), 1)
    items = list(d.routes)
    total = 0
    for i in range(len(items)):
        (u1, v1), r1 = items[i]
        for j in range(i + 1, len(items)):
            (u2, v2), r2 = items[j]
            if len({u1, v1, u2, v2}) != 4:
                continue
            if r1[0] != r2[0]:
                continue
            if r1[0] == ROUTE_INNER:
                total += _circ_interleave(rank[u1], rank[v1],
                                          rank[u2], rank[v2], n_in)
            elif r1[0] == ROUTE_OUTER:
                total += _circ_interleave(rank[u1], rank[v1],
                                          rank[u2], rank[v2], n_out)
            else:
                total += strip_pair_crossings(
                    edge_lift(d, u1, v1, r1[1]), edge_lift(d, u2, v2, r2[1]))
    return total


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def format_cylindrical_text(d: CylindricalDrawing) -> str:
    lines = ["inner: " + " ".join(str(v) for v in d.inner),
             "outer: " + " ".join(str(v) for v in d.outer)]
    for (u, v), route in d.routes:
        if route[0] == ROUTE_ANNULUS:
            lines.append(f"{u} {v} ann:{route[1]}")
        else:
            lines.append(f"{u} {v} {route[0]}")
    return "\n".join(lines) + "\n"


def parse_cylindrical_text(text: str) -> CylindricalDrawing:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("inner:") \
            or not lines[1].startswith("outer:"):
        raise FormatError("expected 'inner:' and 'outer:' header lines")
    inner = tuple(int(x) for x in lines[0][6:].split())
    outer = tuple(int(x) for x in lines[1][6:].split())
    routes = {}
    for ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad route line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        tok = parts[2]
        if tok == ROUTE_INNER:
            routes[(u, v)] = (ROUTE_INNER,)
        elif tok == ROUTE_OUTER:
            routes[(u, v)] = (ROUTE_OUTER,)
        elif tok.startswith("ann:"):
            routes[(u, v)] = (ROUTE_ANNULUS, int(tok[4:]))
        else:
            raise FormatError(f"unknown route {tok!r}")
    return CylindricalDrawing.make(inner, outer, routes)


def format_book_text(d: BookDrawing) -> str:
    lines = ["spine: " + " ".join(str(v) for v in d.spine)]
    for (u, v), pg in d.pages:
        lines.append(f"{u} {v} {pg}")
    return "\n".join(lines) + "\n"


def parse_book_text(text: str) -> BookDrawing:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("spine:"):
        raise FormatError("expected 'spine:' header line")
    spine = tuple(int(x) for x in lines[0][6:].split())
    pages = {}
    maxp = 1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad page line {ln!r}")
        u, v, pg = int(parts[0]), int(parts[1]), int(parts[2])
        pages[(u, v)] = pg
        maxp = max(maxp, pg)
    return BookDrawing.make(spine, pages, maxp)
