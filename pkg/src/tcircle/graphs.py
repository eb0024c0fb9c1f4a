"""Simple undirected labeled graphs, deterministic generators, and exact
small-scale structural queries (longest cycle, Hamiltonicity, 3-connectivity).

Vertices are dense integer ids 0..n-1.  The edge set is canonically sorted,
so two graphs with identical (n, edges) compare equal and every artifact
derived from a graph is reproducible byte for byte.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import kernels
from .errors import FormatError, ParameterError, SearchBudgetExceeded

LOG3_2 = math.log(2, 3)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with canonical edge ordering.

    ``tags`` optionally labels each vertex with the index of the part it came
    from in a disjoint union.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    tags: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError("vertex count must be nonnegative")
        seen = set()
        for (u, v) in self.edges:
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ParameterError(f"edge ({u},{v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParameterError(f"parallel edge ({u},{v})")
            seen.add(key)
        canon = tuple(sorted((min(u, v), max(u, v)) for (u, v) in self.edges))
        object.__setattr__(self, "edges", canon)
        if self.tags is not None and len(self.tags) != self.n:
            raise ParameterError("tags length must equal vertex count")

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for (u, v) in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for (u, v) in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)

    def relabeled(self, perm: list[int]) -> "Graph":
        """Graph with vertex i renamed perm[i]."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("not a permutation")
        edges = tuple((perm[u], perm[v]) for (u, v) in self.edges)
        tags = None
        if self.tags is not None:
            tags = tuple(self.tags[perm.index(i)] for i in range(self.n))
        return Graph(self.n, edges, tags)


def _require_arity(kind: str, params, k: int):
    if len(params) != k:
        raise ParameterError(
            f"family {kind!r} takes {k} parameter(s), got {len(params)}")


def build_named_graph(kind: str, params: list[int]) -> Graph:
    """Deterministic labeled graph from a family name.

    Families: complete(n), complete_bipartite(a,b), cycle(n), path(n),
    wheel(n), grid(a,b).
    """
    if kind == "complete":
        _require_arity(kind, params, 1)
        n = params[0]
        if n < 1:
            raise ParameterError("complete requires n >= 1")
        return Graph(n, tuple((i, j) for i in range(n)
                              for j in range(i + 1, n)))
    if kind == "complete_bipartite":
        _require_arity(kind, params, 2)
        a, b = params
        if a < 1 or b < 1:
            raise ParameterError("complete_bipartite requires a,b >= 1")
        return Graph(a + b, tuple((i, a + j) for i in range(a)
                                  for j in range(b)))
    if kind == "cycle":
        _require_arity(kind, params, 1)
        n = params[0]
        if n < 3:
            raise ParameterError("cycle requires n >= 3")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if kind == "path":
        _require_arity(kind, params, 1)
        n = params[0]
        if n < 1:
            raise ParameterError("path requires n >= 1")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if kind == "wheel":
        _require_arity(kind, params, 1)
        n = params[0]
        if n < 4:
            raise ParameterError("wheel requires n >= 4")
        rim = n - 1
        edges = [(i, (i + 1) % rim) for i in range(rim)]
        edges += [(i, rim) for i in range(rim)]
        return Graph(n, tuple(edges))
    if kind == "grid":
        _require_arity(kind, params, 2)
        a, b = params
        if a < 1 or b < 1:
            raise ParameterError("grid requires a,b >= 1")
        edges = []
        for i in range(a):
            for j in range(b):
                v = i * b + j
                if j + 1 < b:
                    edges.append((v, v + 1))
                if i + 1 < a:
                    edges.append((v, v + b))
        return Graph(a * b, tuple(edges))
    raise ParameterError(f"unknown graph family {kind!r}")


def disjoint_union(parts: list[Graph]) -> Graph:
    """Disjoint union with deterministic offset relabeling.

    Vertex ids are shifted by running offsets; the component tag of every
    vertex records the (flattened) part index, so unions nest associatively.
    """
    if not parts:
        raise ParameterError("disjoint_union requires at least one part")
    edges = []
    tags = []
    offset = 0
    tag_base = 0
    for g in parts:
        for (u, v) in g.edges:
            edges.append((u + offset, v + offset))
        if g.tags is None:
            tags.extend([tag_base] * g.n)
            tag_base += 1
        else:
            tags.extend(t + tag_base for t in g.tags)
            tag_base += (max(g.tags) + 1) if g.n else 0
        offset += g.n
    return Graph(offset, tuple(edges), tuple(tags))


def _deadline(budget_ms: float | None) -> float:
    if budget_ms is None:
        return float("inf")
    return time.monotonic() + budget_ms / 1000.0


def longest_cycle_length(g: Graph, budget_ms: float | None = None) -> int:
    """Exact maximum cycle length via backtracking; 0 if acyclic.

    Raises :class:`SearchBudgetExceeded` when the budget runs out, which is
    deliberately distinct from returning a number.
    """
    if g.n == 0:
        return 0
    status, best = kernels.longest_cycle(g.n, g.adjacency_masks(),
                                         _deadline(budget_ms))
    if status == kernels.STATUS_TIMEOUT:
        raise SearchBudgetExceeded("longest cycle search out of budget",
                                   best=best)
    return best


def is_hamiltonian(g: Graph, budget_ms: float | None = None) -> bool:
    return g.n >= 3 and longest_cycle_length(g, budget_ms) == g.n


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def is_three_connected(g: Graph) -> bool:
    """Exhaustive check: removing every vertex pair leaves a connected graph."""
    if g.n < 4:
        raise ParameterError("3-connectivity check requires n >= 4")
    if not is_connected(g):
        return False
    adj = g.adjacency()
    for a in range(g.n):
        for b in range(a + 1, g.n):
            removed = {a, b}
            start = next(v for v in range(g.n) if v not in removed)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in removed and u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) != g.n - 2:
                return False
    return True


def chen_yu_bound(n: int) -> float:
    """The 3.5 * n**log3(2) longest-cycle bound for stacked triangulations."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    return 3.5 * n ** LOG3_2


# ---------------------------------------------------------------------------
# Text format: first line "n m", then m lines "u v", canonical order, LF.
# ---------------------------------------------------------------------------


def format_graph_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for (u, v) in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("first line must be 'n m'") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges))
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc
