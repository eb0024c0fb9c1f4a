"""Drawing models: strip counting, book and cylindrical crossing formulas,
validation, invariances, and text formats."""

import itertools
import random
from fractions import Fraction as F

import pytest

from tcircle.drawings import (ROUTE_ANNULUS, ROUTE_INNER, ROUTE_OUTER,
                              BookDrawing, CylindricalDrawing, StripLift,
                              annulus_self_crossings, book_crossings,
                              cyl_crossings, edge_lift, format_book_text,
                              format_cylindrical_text, parse_book_text,
                              parse_cylindrical_text, strip_pair_crossings,
                              validate_cylindrical)
from tcircle.errors import ParameterError
from tcircle.graphs import Graph, build_named_graph


def oracle_strip_pair(e: StripLift, f: StripLift) -> int:
    """Independent translate enumeration with a brute cyclic-order builder."""
    kmax = abs(e.w) + abs(f.w) + 3
    total = 0
    for k in range(-kmax, kmax + 1):
        pts = [(e.x0, e.l0, "e"), (e.x1, e.l1, "e"),
               (f.x0 + k, f.l0, "f"), (f.x1 + k, f.l1, "f")]
        if len({(x, l) for (x, l, _) in pts}) < 4:
            continue
        lower = sorted(((x, w) for (x, l, w) in pts if l == 0))
        upper = sorted(((x, w) for (x, l, w) in pts if l == 1),
                       reverse=True)
        word = [w for (_, w) in lower] + [w for (_, w) in upper]
        if word in (["e", "f", "e", "f"], ["f", "e", "f", "e"]):
            total += 1
    return total


def test_strip_examples():
    e = StripLift(F(0), 0, F(1, 2), 1, 0)
    parallel = StripLift(F(1, 4), 0, F(3, 4), 1, 0)
    assert strip_pair_crossings(e, parallel) == 0  # shifted parallel chords
    crossing = StripLift(F(3, 4), 0, F(1, 4), 1, 0)
    assert strip_pair_crossings(e, crossing) == 1
    vertical = StripLift(F(0), 0, F(0), 1, 0)
    wound = StripLift(F(1, 2), 0, F(5, 2), 1, 2)
    assert strip_pair_crossings(vertical, wound) == 2
    short_tent = StripLift(F(0), 0, F(2, 5), 0, 0)
    assert annulus_self_crossings(short_tent) == 0
    assert annulus_self_crossings(StripLift(F(0), 0, F(2, 5) + 2, 0, 2)) == 2
    assert annulus_self_crossings(StripLift(F(0), 0, F(3, 5) + 1, 0, 1)) == 1


def test_strip_symmetry_and_shift_fuzz():
    rng = random.Random(5)
    for _ in range(400):
        def lift():
            l0, l1 = rng.randint(0, 1), rng.randint(0, 1)
            w = rng.randint(-3, 3)
            return StripLift(F(rng.randint(0, 11), 12), l0,
                             F(rng.randint(0, 11), 12) + w, l1, w)
        e, f = lift(), lift()
        c = strip_pair_crossings(e, f)
        assert c == strip_pair_crossings(f, e) >= 0
        assert c == oracle_strip_pair(e, f)
        s = rng.randint(-3, 3)
        es = StripLift(e.x0 + s, e.l0, e.x1 + s, e.l1, e.w)
        fs = StripLift(f.x0 + s, f.l0, f.x1 + s, f.l1, f.w)
        assert strip_pair_crossings(es, fs) == c


def one_page_drawing(g: Graph, spine) -> BookDrawing:
    return BookDrawing.make(spine, {e: 1 for e in g.edges}, 1)


def test_book_examples():
    c4 = BookDrawing.make([0, 1, 2, 3],
                          {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1}, 1)
    assert book_crossings(c4) == 0
    k4 = one_page_drawing(build_named_graph("complete", [4]), [0, 1, 2, 3])
    assert book_crossings(k4) == 1
    k33 = build_named_graph("complete_bipartite", [3, 3])
    from tcircle.families import K33_BOOK_PAGES, K33_BOOK_SPINE
    d = BookDrawing.make(list(K33_BOOK_SPINE), dict(K33_BOOK_PAGES), 2)
    assert book_crossings(d) == 1


def test_book_one_page_equals_chord_model():
    """Against an independent quadratic counter on the circular order."""
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(3, 8)
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < 0.6)
        if not edges:
            continue
        g = Graph(n, edges)
        spine = list(range(n))
        rng.shuffle(spine)
        d = one_page_drawing(g, spine)
        pos = {v: i for i, v in enumerate(spine)}
        want = 0
        for (a, b), (c, e) in itertools.combinations(edges, 2):
            if len({a, b, c, e}) < 4:
                continue
            pa, pb = sorted((pos[a], pos[b]))
            want += (pa < pos[c] < pb) != (pa < pos[e] < pb)
        assert book_crossings(d) == want


def test_book_validation():
    with pytest.raises(ParameterError):
        book_crossings(BookDrawing.make([0, 0, 1], {}, 1))
    with pytest.raises(ParameterError):
        book_crossings(BookDrawing.make([0, 1], {(0, 1): 3}, 2))


def k4_cylindrical() -> CylindricalDrawing:
    return CylindricalDrawing.make(
        [0, 1], [2, 3],
        {(0, 1): (ROUTE_INNER,), (2, 3): (ROUTE_OUTER,),
         (0, 2): (ROUTE_ANNULUS, 0), (1, 3): (ROUTE_ANNULUS, 0),
         (0, 3): (ROUTE_ANNULUS, 0), (1, 2): (ROUTE_ANNULUS, 1)})


def test_cylindrical_examples():
    d = k4_cylindrical()
    assert validate_cylindrical(d) is None
    assert cyl_crossings(d) == 0
    from tcircle.families import hill_drawing
    assert cyl_crossings(hill_drawing(6)) == 3


def test_cylindrical_validation():
    bad = CylindricalDrawing.make([0, 1], [2], {(0, 2): (ROUTE_INNER,)})
    assert "inner-inner" in validate_cylindrical(bad)
    # same-side annulus edge wound past a full turn self-crosses
    bad2 = CylindricalDrawing.make([0, 1, 2], [],
                                   {(0, 1): (ROUTE_ANNULUS, 2)})
    assert "self-simple" in validate_cylindrical(bad2)
    # adjacent annulus edges with clashing windings force a crossing
    bad3 = CylindricalDrawing.make(
        [0, 1, 2], [3],
        {(0, 3): (ROUTE_ANNULUS, 0), (1, 3): (ROUTE_ANNULUS, 3),
         (0, 1): (ROUTE_INNER,), (1, 2): (ROUTE_INNER,),
         (0, 2): (ROUTE_INNER,), (2, 3): (ROUTE_ANNULUS, 0)})
    assert "force a crossing" in validate_cylindrical(bad3)
    bad4 = CylindricalDrawing.make([0, 2], [1], {(0, 2): (ROUTE_OUTER,)})
    assert "outer" in validate_cylindrical(bad4)


def test_cylindrical_fixed_order_against_reroute_oracle():
    """Exhaustive reroute enumeration agrees with the solver kernel on a
    fixed configuration, and the one-edge-outside K5 drawing counts right."""
    import tcircle.kernels as K
    g = build_named_graph("complete", [4])
    inner = (0, 1, 2, 3)
    edges = g.edges

    def routes_for(edge):
        out = [(ROUTE_INNER,)]
        for w in (-1, 0, 1):
            d = CylindricalDrawing.make(inner, (), {edge: (ROUTE_ANNULUS, w)})
            if annulus_self_crossings(edge_lift(d, *edge, w)) == 0:
                out.append((ROUTE_ANNULUS, w))
        return out

    best = None
    for combo in itertools.product(*(routes_for(e) for e in edges)):
        d = CylindricalDrawing.make(inner, (), dict(zip(edges, combo)))
        if validate_cylindrical(d) is not None:
            continue
        c = cyl_crossings(d)
        best = c if best is None else min(best, c)
    eu = [e[0] for e in edges]
    ev = [e[1] for e in edges]
    st, val, assign, _ = K.cyl_subproblem(eu, ev, [0] * 4, [0, 1, 2, 3],
                                          4, 0, 2, 1 << 30, float("inf"),
                                          1 << 50)
    assert st == K.STATUS_OPTIMAL and val == best == 0

    # K5 in convex position with {0,2} rerouted through the annulus: the
    # rerouted edge meets no other annulus edge, so only the remaining
    # chord interleavings count
    k5 = build_named_graph("complete", [5])
    routes = {e: (ROUTE_INNER,) for e in k5.edges}
    routes[(0, 2)] = (ROUTE_ANNULUS, 0)
    d = CylindricalDrawing.make((0, 1, 2, 3, 4), (), routes)
    assert validate_cylindrical(d) is None
    pos = {v: v for v in range(5)}
    want = 0
    for (a, b), (c, e) in itertools.combinations(
            [x for x in k5.edges if x != (0, 2)], 2):
        if len({a, b, c, e}) < 4:
            continue
        want += (0 < (c - a) % 5 < (b - a) % 5) != (0 < (e - a) % 5
                                                    < (b - a) % 5)
    assert cyl_crossings(d) == want


def rotated(d: CylindricalDrawing, inner_steps: int,
            outer_steps: int) -> CylindricalDrawing:
    """The same drawing with both circles cyclically rotated; windings of
    edges whose endpoint wraps past rank 0 compensate so the homotopy class
    is preserved."""
    cur = d
    for _ in range(inner_steps):
        cur = _rotate_once(cur, True)
    for _ in range(outer_steps):
        cur = _rotate_once(cur, False)
    return cur


def _rotate_once(d: CylindricalDrawing, inner: bool) -> CylindricalDrawing:
    circle = d.inner if inner else d.outer
    if len(circle) <= 1:
        return d
    wrapped = circle[0]
    new_circle = circle[1:] + circle[:1]
    routes = {}
    for (u, v), r in d.routes:
        if r[0] == ROUTE_ANNULUS:
            on_circle = (lambda z: z in circle)
            w = r[1]
            if on_circle(u) and u == wrapped:
                w += 1
            if on_circle(v) and v == wrapped:
                w -= 1
            routes[(u, v)] = (ROUTE_ANNULUS, w)
        else:
            routes[(u, v)] = r
    if inner:
        return CylindricalDrawing.make(new_circle, d.outer, routes)
    return CylindricalDrawing.make(d.inner, new_circle, routes)


def reflected(d: CylindricalDrawing) -> CylindricalDrawing:
    routes = {}
    for (u, v), r in d.routes:
        routes[(u, v)] = (ROUTE_ANNULUS, -r[1]) if r[0] == ROUTE_ANNULUS else r
    return CylindricalDrawing.make(tuple(reversed(d.inner)),
                                   tuple(reversed(d.outer)), routes)


def random_valid_drawing(rng) -> CylindricalDrawing | None:
    n = rng.randint(2, 7)
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n)
                  if rng.random() < 0.55)
    if not edges:
        return None
    verts = list(range(n))
    rng.shuffle(verts)
    k = rng.randint(1, n)
    inner, outer = tuple(verts[:k]), tuple(verts[k:])
    side = {v: 0 for v in inner} | {v: 1 for v in outer}
    routes = {}
    for (u, v) in edges:
        if side[u] == side[v] and rng.random() < 0.5:
            routes[(u, v)] = (ROUTE_INNER,) if side[u] == 0 else (ROUTE_OUTER,)
        else:
            routes[(u, v)] = (ROUTE_ANNULUS, rng.randint(-2, 2))
    d = CylindricalDrawing.make(inner, outer, routes)
    return d if validate_cylindrical(d) is None else None


def test_rotation_reflection_invariance_fuzz():
    rng = random.Random(17)
    done = 0
    while done < 120:
        d = random_valid_drawing(rng)
        if d is None:
            continue
        c = cyl_crossings(d)
        r = rotated(d, rng.randint(0, len(d.inner)),
                    rng.randint(0, max(len(d.outer), 1)))
        assert validate_cylindrical(r) is None
        assert cyl_crossings(r) == c
        m = reflected(d)
        assert validate_cylindrical(m) is None
        assert cyl_crossings(m) == c
        done += 1


def test_drawing_text_roundtrip():
    d = k4_cylindrical()
    assert parse_cylindrical_text(format_cylindrical_text(d)) == d
    b = BookDrawing.make([2, 0, 1], {(0, 1): 2, (1, 2): 1}, 2)
    assert parse_book_text(format_book_text(b)) == b
