"""Wye-delta / delta-wye steps and the Petersen family as their closure from K6."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import (
    Graph,
    GraphError,
    bits,
    complete_graph,
    complete_multipartite,
    delete_vertex,
    k6_delta_y,
    k44_minus,
    petersen_graph,
)
from .iso import are_isomorphic, canonical_form, canonical_graph


def y_delta(g: Graph, v: int) -> Graph:
    """Delete degree-3 vertex ``v`` and join every non-adjacent pair of its neighbours."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph")
    if g.degree(v) != 3:
        raise GraphError(f"vertex {v} has degree {g.degree(v)}, expected 3")
    adj = list(g.adj)
    for a, b in combinations(bits(g.adj[v]), 2):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return delete_vertex(Graph._trusted(g.n, adj), v)


def delta_y(g: Graph, t) -> Graph:
    """Remove the edges of triangle ``t`` and attach a new vertex ``n`` to its corners."""
    a, b, c = t
    if len({a, b, c}) != 3 or not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        raise GraphError(f"{tuple(t)} is not a triangle")
    adj = list(g.adj)
    for x, y in ((a, b), (b, c), (a, c)):
        adj[x] &= ~(1 << y)
        adj[y] &= ~(1 << x)
    new = g.n
    for x in (a, b, c):
        adj[x] |= 1 << new
    adj.append((1 << a) | (1 << b) | (1 << c))
    return Graph._trusted(g.n + 1, adj)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges():
        for w in bits(g.adj[u] & g.adj[v] & ~((2 << v) - 1)):
            out.append((u, v, w))
    return out


def transformation_sites(g: Graph):
    """Yield ``(kind, site, result)`` for every applicable YΔ and ΔY step."""
    for v in range(g.n):
        if g.degree(v) == 3:
            yield "y_delta", v, y_delta(g, v)
    for t in triangles(g):
        yield "delta_y", t, delta_y(g, t)


NAMED_MEMBERS = {
    "K6": lambda: complete_graph(6),
    "K6_deltaY": k6_delta_y,
    "K_{1,3,3}": lambda: complete_multipartite(1, 3, 3),
    "K44_minus": k44_minus,
    "petersen_graph": petersen_graph,
}


def recognize(g: Graph) -> str | None:
    for name, make in NAMED_MEMBERS.items():
        if are_isomorphic(g, make()):
            return name
    return None


@dataclass(frozen=True)
class PetersenFamily:
    members: tuple[Graph, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Graph:
        return self.members[i]

    def index_of(self, g: Graph) -> int | None:
        key = canonical_form(g).canonical_bytes
        for i, m in enumerate(self.members):
            if canonical_form(m).canonical_bytes == key:
                return i
        return None

    def names(self) -> list[str | None]:
        return [recognize(m) for m in self.members]


_FAMILY: PetersenFamily | None = None


def petersen_family() -> PetersenFamily:
    """Breadth-first closure of K6 under both transformations, up to isomorphism.

    Members are canonically labelled and sorted by (vertex count, graph6).
    """
    global _FAMILY
    if _FAMILY is not None:
        return _FAMILY
    start = canonical_graph(complete_graph(6))
    found = {canonical_form(start).canonical_bytes: start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for _, _, h in transformation_sites(g):
            key = canonical_form(h).canonical_bytes
            if key not in found:
                found[key] = canonical_graph(h)
                queue.append(found[key])
    if len(found) != 7:
        raise AssertionError(f"Petersen family closure produced {len(found)} graphs, expected 7")
    members = tuple(found[k] for k in sorted(found, key=lambda k: (found[k].n, k)))
    _FAMILY = PetersenFamily(members)
    return _FAMILY
