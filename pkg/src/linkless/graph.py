"""Simple undirected graphs on vertices 0..n-1 backed by adjacency bitmasks.

Every operation here is pure: graphs are immutable values, and operations that
remove vertices re-compact labels deterministically (the surviving labels keep
their relative order, higher labels shift down by one).
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, loops, missing elements)."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def drop_bit(mask: int, v: int) -> int:
    """Remove bit ``v`` from ``mask`` and shift all higher bits down by one."""
    low = mask & ((1 << v) - 1)
    return low | ((mask >> (v + 1)) << v)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Equality is
    label-wise; use :func:`linkless.iso.are_isomorphic` for isomorphism.
    """

    n: int
    adj: tuple[int, ...]
    _m: int = field(default=-1, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if a >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(a):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "_m", sum(a.bit_count() for a in self.adj) // 2)

    @classmethod
    def _trusted(cls, n: int, adj) -> Graph:
        # Skips validation; callers guarantee a symmetric, loop-free adjacency.
        g = object.__new__(cls)
        adj = tuple(adj)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "_m", sum(a.bit_count() for a in adj) // 2)
        return g

    # -- basic queries -------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted pairs ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def neighborhood_of_set(self, s: Iterable[int]) -> frozenset[int]:
        """N(S): vertices outside ``s`` adjacent to something in ``s``."""
        sm = mask_of(s)
        out = 0
        for v in bits(sm):
            out |= self.adj[v]
        return frozenset(bits(out & ~sm))

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """G[S], relabelled compactly in increasing label order."""
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} not in graph")
        pos = {v: i for i, v in enumerate(keep)}
        adj = [mask_of(pos[u] for u in bits(self.adj[v]) if u in pos) for v in keep]
        return Graph._trusted(len(keep), adj)

    def relabel(self, order: list[int]) -> Graph:
        """Graph where new vertex ``i`` is old vertex ``order[i]``."""
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = [0] * self.n
        for i, v in enumerate(order):
            a = 0
            for u in bits(self.adj[v]):
                a |= 1 << pos[u]
            adj[i] = a
        return Graph._trusted(self.n, adj)

    def components(self) -> list[int]:
        """Connected components as bitmasks, ordered by least vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = component_mask(self.adj, 1 << v, (1 << self.n) - 1)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def component_mask(adj, start: int, allowed: int) -> int:
    """Vertices reachable from the ``start`` mask inside ``allowed``."""
    comp = start & allowed
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def build_graph(n: int, edges: Iterable[Iterable[int]] = ()) -> Graph:
    """Build a graph on ``n`` vertices from unordered pairs; duplicates collapse."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {(u, v)} is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(n, adj)


# -- named graphs --------------------------------------------------------

def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full ^ (1 << v) for v in range(n)])


def complete_multipartite(*sizes: int) -> Graph:
    """K_{n1,...,nk}; part i occupies a consecutive block of labels."""
    if not sizes or any(s < 1 for s in sizes):
        raise GraphError(f"part sizes must be positive, got {sizes}")
    n = sum(sizes)
    adj = [0] * n
    start = 0
    full = (1 << n) - 1
    for s in sizes:
        part = ((1 << s) - 1) << start
        for v in range(start, start + s):
            adj[v] = full & ~part
        start += s
    return Graph._trusted(n, adj)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    """Outer 5-cycle 0..4, spokes i--i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, edges)


def k44_minus() -> Graph:
    """K_{4,4} on parts {0..3}, {4..7} with the edge 3--7 removed."""
    return delete_edge(complete_multipartite(4, 4), 3, 7)


def k6_delta_y() -> Graph:
    """K6 after a delta-wye step on the triangle {0,1,2}; the new vertex is 6."""
    from .transforms import delta_y

    return delta_y(complete_graph(6), (0, 1, 2))


_K_RE = re.compile(r"^K_?\{?(\d+(?:,\d+)*)\}?$")
_C_RE = re.compile(r"^C_?\{?(\d+)\}?$")

_ALIASES = {
    "k44_minus": k44_minus,
    "k44-": k44_minus,
    "k_{4,4}^-": k44_minus,
    "k6_deltay": k6_delta_y,
    "k6_dy": k6_delta_y,
    "k_6^{deltay}": k6_delta_y,
    "petersen": petersen_graph,
    "petersen_graph": petersen_graph,
}


def named_graph(name: str) -> Graph:
    """Parse a graph name.

    Accepted forms: ``K6``/``K_6``/``K_{6}``, ``K_{1,3,3}``/``K1,3,3``,
    ``C5``, ``K44_minus``, ``K6_deltaY``, ``petersen_graph``.
    """
    key = name.strip()
    if key.lower() in _ALIASES:
        return _ALIASES[key.lower()]()
    m = _K_RE.match(key)
    if m:
        sizes = [int(x) for x in m.group(1).split(",")]
        if len(sizes) == 1:
            return complete_graph(sizes[0])
        return complete_multipartite(*sizes)
    m = _C_RE.match(key)
    if m:
        return cycle_graph(int(m.group(1)))
    raise GraphError(f"unknown graph name {name!r}")


# -- minor operations ------------------------------------------------------

def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph")
    adj = [drop_bit(a, v) for i, a in enumerate(g.adj) if i != v]
    return Graph._trusted(g.n - 1, adj)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"{(u, v)} is not an edge")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph._trusted(g.n, adj)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge adjacent ``u`` and ``v`` into ``min(u, v)``; higher labels shift down."""
    if not g.has_edge(u, v):
        raise GraphError(f"{(u, v)} is not an edge")
    keep, gone = min(u, v), max(u, v)
    adj = list(g.adj)
    merged = (adj[keep] | adj[gone]) & ~((1 << keep) | (1 << gone))
    adj[keep] = merged
    for w in bits(merged):
        adj[w] = (adj[w] & ~(1 << gone)) | (1 << keep)
    adj = [drop_bit(a, gone) for i, a in enumerate(adj) if i != gone]
    return Graph._trusted(g.n - 1, adj)


# -- bipartitions, complements, separations ---------------------------------

@dataclass(frozen=True)
class Bipartition:
    class0: frozenset[int]
    class1: frozenset[int]

    def is_valid_for(self, g: Graph) -> bool:
        if self.class0 & self.class1 or (self.class0 | self.class1) != frozenset(range(g.n)):
            return False
        return all(g.adj[v] & mask_of(cls) == 0 for cls in (self.class0, self.class1) for v in cls)


def bipartition_of(g: Graph) -> Bipartition | None:
    """2-colouring with each component's least vertex in ``class0``; None if an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return Bipartition(
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


def is_bipartite(g: Graph) -> bool:
    return bipartition_of(g) is not None


def bipartite_complement(g: Graph, s: Iterable[int], b: Bipartition) -> Graph:
    """Cross-class non-edges of G[S], relabelled compactly in label order."""
    if not b.is_valid_for(g):
        raise GraphError("bipartition is not valid for this graph")
    keep = sorted(set(s))
    if any(not 0 <= v < g.n for v in keep):
        raise GraphError("vertex set is not a subset of V(G)")
    edges = [
        (i, j)
        for (i, u), (j, v) in combinations(enumerate(keep), 2)
        if (u in b.class0) != (v in b.class0) and not g.has_edge(u, v)
    ]
    return build_graph(len(keep), edges)


@dataclass(frozen=True)
class Separation:
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.side_a & self.side_b)

    @property
    def separator(self) -> frozenset[int]:
        return self.side_a & self.side_b

    @property
    def nontrivial(self) -> bool:
        return bool(self.side_a - self.side_b) and bool(self.side_b - self.side_a)


def check_separation(g: Graph, a: Iterable[int], b: Iterable[int]) -> Separation | None:
    a, b = frozenset(a), frozenset(b)
    if a | b != frozenset(range(g.n)):
        return None
    only_a, only_b = mask_of(a - b), mask_of(b - a)
    if any(g.adj[v] & only_b for v in bits(only_a)):
        return None
    return Separation(a, b)


def is_minimal_separation(g: Graph, sep: Separation) -> bool:
    """True when no non-trivial separation has a separator strictly inside ``sep``'s.

    A non-trivial separation with separator X exists iff G - X is disconnected.
    """
    sep_vs = sorted(sep.separator)
    full = (1 << g.n) - 1
    for k in range(len(sep_vs)):
        for xs in combinations(sep_vs, k):
            rest = full & ~mask_of(xs)
            if rest and component_mask(g.adj, rest & -rest, rest) != rest:
                return False
    return True


def super_separation_order(g0: Graph, g1: Graph, g: Graph) -> int:
    return g0.n + g1.n - g.n


def triangle_count(g: Graph) -> int:
    t = 0
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            t += (g.adj[v] & higher & ~((2 << v) - 1)).bit_count()
    return t
