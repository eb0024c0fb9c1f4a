"""Deterministic SVG rendering of drawings and certificates.

Geometry here is illustrative only: crossing counts in captions come from
the counting formulas, never from coordinates.  Output element order is
stable, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math

from .drawings import (ROUTE_INNER, ROUTE_OUTER, BookDrawing,
                       CylindricalDrawing, book_crossings, cyl_crossings)
from .errors import ParameterError
from .maps import (CROSSING, TCurveCertificate, node_components, trace_faces)

_HEADER = ('<?xml version="1.0" encoding="UTF-8"?>\n'
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n')

_BLUE = "#1f4fd8"
_EDGE = "#333333"


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _poly(points, stroke, dashed=False, width=1.3) -> str:
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for (x, y) in points)
    dash = ' stroke-dasharray="6 4"' if dashed else ""
    return (f'<path d="{d}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}"{dash}/>\n')


def _circle(cx, cy, r, stroke, dashed=False) -> str:
    dash = ' stroke-dasharray="6 4"' if dashed else ""
    return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'fill="none" stroke="{stroke}" stroke-width="1.3"{dash}/>\n')


def _vertex(cx, cy, label) -> str:
    return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3.2" '
            f'fill="#000000"/>\n'
            f'<text x="{_fmt(cx + 5)}" y="{_fmt(cy - 5)}" '
            f'font-size="11">{label}</text>\n')


def _caption(text, w, h) -> str:
    return (f'<text x="12" y="{h - 12}" font-size="14" '
            f'font-family="monospace">{text}</text>\n')


def render_svg(x) -> str:
    """SVG text for a cylindrical drawing, a book drawing, or a certificate."""
    if isinstance(x, CylindricalDrawing):
        return _render_cylindrical(x)
    if isinstance(x, BookDrawing):
        return _render_book(x)
    if isinstance(x, TCurveCertificate):
        return _render_certificate(x)
    raise ParameterError("cannot render this object")


def _render_cylindrical(d: CylindricalDrawing) -> str:
    w = h = 520
    cx = cy = 260.0
    r_in, r_out = 100.0, 210.0

    def angle(v):
        if v in d.inner:
            return 2 * math.pi * d.inner.index(v) / max(len(d.inner), 1)
        return 2 * math.pi * d.outer.index(v) / max(len(d.outer), 1)

    def pos(v):
        r = r_in if v in d.inner else r_out
        return (cx + r * math.cos(angle(v)), cy - r * math.sin(angle(v)))

    out = [_HEADER.format(w=w, h=h)]
    if d.inner:
        out.append(_circle(cx, cy, r_in, _BLUE, dashed=True))
    if d.outer:
        out.append(_circle(cx, cy, r_out, _BLUE, dashed=True))
    for (u, v), route in d.routes:
        if route[0] in (ROUTE_INNER, ROUTE_OUTER):
            if route[0] == ROUTE_INNER:
                out.append(_poly([pos(u), pos(v)], _EDGE))
            else:
                (x1, y1), (x2, y2) = pos(u), pos(v)
                mx, my = (x1 + x2) / 2, (y1 + y2) / 2
                dx, dy = mx - cx, my - cy
                nrm = math.hypot(dx, dy) or 1.0
                bulge = 1.0 + 70.0 / nrm
                ctrl = (cx + dx * bulge * 1.6, cy + dy * bulge * 1.6)
                out.append(_poly([pos(u), ctrl, pos(v)], _EDGE))
        else:
            a, b = (u, v) if u < v else (v, u)
            wnd = route[1]
            au = angle(a)
            av = angle(b) + 2 * math.pi * wnd
            ru = r_in if a in d.inner else r_out
            rv = r_in if b in d.inner else r_out
            pts = []
            steps = 14 + 10 * abs(wnd)
            same = (a in d.inner) == (b in d.inner)
            for i in range(steps + 1):
                t = i / steps
                th = au + (av - au) * t
                if same:
                    mid = (r_in + r_out) / 2
                    r = ru + (mid - ru) * math.sin(math.pi * t)
                else:
                    r = ru + (rv - ru) * t
                pts.append((cx + r * math.cos(th), cy - r * math.sin(th)))
            out.append(_poly(pts, _EDGE))
    for v in list(d.inner) + list(d.outer):
        out.append(_vertex(*pos(v), v))
    out.append(_caption(f"crossings={cyl_crossings(d)}", w, h))
    out.append("</svg>\n")
    return "".join(out)


def _render_book(d: BookDrawing) -> str:
    n = d.n
    w = max(80 * n, 240)
    h = 420
    y0 = h / 2
    xs = {v: 40 + (w - 80) * i / max(n - 1, 1)
          for i, v in enumerate(d.spine)}
    out = [_HEADER.format(w=w, h=h)]
    out.append(_poly([(20, y0), (w - 20, y0)], _BLUE, dashed=True))
    for (u, v), pg in d.pages:
        x1, x2 = xs[u], xs[v]
        span = abs(x2 - x1)
        lift = min(0.48 * span, y0 - 24) * (1 + 0.08 * (pg - 1))
        ym = y0 - lift if pg == 1 else y0 + lift
        out.append(_poly([(x1, y0), ((x1 + x2) / 2, ym), (x2, y0)], _EDGE))
    for v in d.spine:
        out.append(_vertex(xs[v], y0, v))
    out.append(_caption(f"crossings={book_crossings(d)}", w, h))
    out.append("</svg>\n")
    return "".join(out)


def _tutte_layout(cert: TCurveCertificate) -> dict[int, tuple[float, float]]:
    """Barycentric layout per component: the largest face is pinned to a
    regular polygon and interior nodes relax to neighbour averages."""
    m = cert.map
    comp = node_components(m)
    ncomp = (max(comp) + 1) if comp else 0
    faces = trace_faces(m) if m.num_segments else []
    nbrs: dict[int, list[int]] = {v: [] for v in range(m.num_nodes)}
    for (a, b) in m.seg_ends:
        nbrs[a].append(b)
        nbrs[b].append(a)
    positions: dict[int, tuple[float, float]] = {}
    for c in range(ncomp):
        nodes = [v for v in range(m.num_nodes) if comp[v] == c]
        offset_x = 260.0 + 520.0 * (c % 3)
        offset_y = 260.0 + 520.0 * (c // 3)
        cfaces = [wk for wk in faces if comp[m.owner(wk[0])] == c]
        if not cfaces:
            positions[nodes[0]] = (offset_x, offset_y)
            continue
        outer = max(cfaces, key=len)
        ring = []
        for dart in outer:
            v = m.owner(dart)
            if v not in ring:
                ring.append(v)
        for i, v in enumerate(ring):
            ang = 2 * math.pi * i / len(ring)
            positions[v] = (offset_x + 230 * math.cos(ang),
                            offset_y - 230 * math.sin(ang))
        inner = [v for v in nodes if v not in set(ring)]
        for v in inner:
            positions[v] = (offset_x, offset_y)
        for _ in range(220):
            for v in inner:
                px = sum(positions[u][0] for u in nbrs[v]) / len(nbrs[v])
                py = sum(positions[u][1] for u in nbrs[v]) / len(nbrs[v])
                positions[v] = (px, py)
    return positions


def _render_certificate(cert: TCurveCertificate) -> str:
    m = cert.map
    comp = node_components(m)
    ncomp = (max(comp) + 1) if comp else 1
    w = 520 * min(ncomp, 3)
    h = 520 * ((ncomp + 2) // 3)
    pos = _tutte_layout(cert)
    out = [_HEADER.format(w=w, h=h)]
    seen_pairs: dict[tuple[int, int], int] = {}
    for s in range(m.num_segments):
        a, b = m.seg_ends[s]
        blue = m.is_blue(s)
        color = _BLUE if blue else _EDGE
        if a == b:
            x, y = pos[a]
            out.append(_circle(x + 10, y - 10, 12, color, dashed=blue))
            continue
        key = (min(a, b), max(a, b))
        bump = seen_pairs.get(key, 0)
        seen_pairs[key] = bump + 1
        (x1, y1), (x2, y2) = pos[a], pos[b]
        if bump == 0:
            out.append(_poly([(x1, y1), (x2, y2)], color, dashed=blue))
        else:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            dx, dy = x2 - x1, y2 - y1
            nrm = math.hypot(dx, dy) or 1.0
            off = 14.0 * bump
            out.append(_poly([(x1, y1),
                              (mx - dy / nrm * off, my + dx / nrm * off),
                              (x2, y2)], color, dashed=blue))
    for v in range(m.num_nodes):
        x, y = pos[v]
        if m.node_kinds[v] == CROSSING:
            out.append(f'<rect x="{_fmt(x - 3)}" y="{_fmt(y - 3)}" '
                       f'width="6" height="6" fill="#c0392b"/>\n')
        else:
            out.append(_vertex(x, y, v))
    out.append(_caption(
        f"crossings={len(m.crossing_ids())} curves={cert.t}", w, h))
    out.append("</svg>\n")
    return "".join(out)
