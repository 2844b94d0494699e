"""Canonical labelling, isomorphism tests and isomorph-free enumeration.

Canonical labelling uses equitable partition refinement followed by
individualisation over the first non-singleton cell; among all leaves of the
search tree the labelling whose graph6 adjacency bit string is
lexicographically least wins.  Twin vertices (equal open or closed
neighbourhoods) are interchangeable by a transposition automorphism, so only
one representative of each twin class is individualised and the subtree is
weighted by the class size.  That keeps complete and complete multipartite
graphs cheap, and the weights give the automorphism group order exactly.

Enumeration is canonical augmentation by one vertex: a child is kept only if
the added vertex lies in the automorphism orbit of the vertex labelled last by
the canonical labelling.  Duplicates can then only arise among the children of
one parent, which are deduplicated locally.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from math import comb
from typing import Callable, Iterator, TypeVar

from .graph import Graph, GraphError, bipartition_of, bits
from .graph6 import encode_bytes

MAX_CANON_N = 32
CLASS_FILTERS = ("all", "bipartite", "triangle_free")
# Practical limit for full-range bipartite/triangle-free enumeration; not enforced.
PRACTICAL_ENUMERATION_N = 11

T = TypeVar("T")


class SizeCapError(GraphError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    canonical_bytes: bytes
    automorphism_count: int

    @property
    def graph6(self) -> str:
        return self.canonical_bytes.decode("ascii")


# -- partition refinement ----------------------------------------------------

def _refine(adj, cells: list[int], splitters: list[int]) -> list[int]:
    """Refine ``cells`` (ordered bitmasks) to the coarsest equitable partition.

    Split parts are ordered by ascending neighbour count into the splitter,
    which makes the whole procedure commute with relabelling.
    """
    stack = list(splitters)
    while stack:
        w = stack.pop()
        out = []
        for c in cells:
            if not c & (c - 1):
                out.append(c)
                continue
            groups: dict[int, int] = {}
            m = c
            while m:
                low = m & -m
                k = (adj[low.bit_length() - 1] & w).bit_count()
                groups[k] = groups.get(k, 0) | low
                m ^= low
            if len(groups) == 1:
                out.append(c)
                continue
            parts = [groups[k] for k in sorted(groups)]
            out.extend(parts)
            stack.extend(parts)
        cells = out
    return cells


def _twin_masks(adj, n: int) -> list[int]:
    """For each vertex, the mask of its twin class (itself included)."""
    by_open: dict[int, int] = {}
    by_closed: dict[int, int] = {}
    for v in range(n):
        by_open[adj[v]] = by_open.get(adj[v], 0) | (1 << v)
        closed = adj[v] | (1 << v)
        by_closed[closed] = by_closed.get(closed, 0) | (1 << v)
    out = []
    for v in range(n):
        t = by_open[adj[v]]
        out.append(t if t & (t - 1) else by_closed[adj[v] | (1 << v)])
    return out


class _Search:
    __slots__ = ("adj", "n", "twins", "best", "leaves")

    def __init__(self, adj, n: int):
        self.adj = adj
        self.n = n
        self.twins = _twin_masks(adj, n)
        self.best: int | None = None
        self.leaves: list[tuple[list[int], int]] = []

    def certificate(self, order: list[int]) -> int:
        adj = self.adj
        cert = 0
        for j in range(1, len(order)):
            a = adj[order[j]]
            for i in range(j):
                cert = (cert << 1) | (a >> order[i] & 1)
        return cert

    def run(self, cells: list[int], weight: int = 1) -> None:
        for idx, c in enumerate(cells):
            if c & (c - 1):
                break
        else:
            order = [x.bit_length() - 1 for x in cells]
            cert = self.certificate(order)
            if self.best is None or cert < self.best:
                self.best = cert
                self.leaves = [(order, weight)]
            elif cert == self.best:
                self.leaves.append((order, weight))
            return
        done = 0
        for v in bits(c):
            if done >> v & 1:
                continue
            cls = self.twins[v] & c
            done |= cls
            vb = 1 << v
            child = cells[:idx] + [vb, c ^ vb] + cells[idx + 1:]
            self.run(_refine(self.adj, child, [vb]), weight * cls.bit_count())

    def orbits(self) -> list[int]:
        """Union-find representative of each vertex's Aut(G)-orbit."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        base = self.leaves[0][0]
        for order, _ in self.leaves[1:]:
            for x, y in zip(base, order):
                union(x, y)
        for v in range(self.n):
            for u in bits(self.twins[v]):
                union(v, u)
        return [find(v) for v in range(self.n)]


@dataclass(frozen=True)
class _Canon:
    order: list[int]
    automorphism_count: int
    search: _Search


def _canonize(adj, n: int) -> _Canon:
    s = _Search(adj, n)
    full = (1 << n) - 1
    cells = _refine(adj, [full], [full]) if n else []
    s.run(cells)
    return _Canon(s.leaves[0][0], sum(w for _, w in s.leaves), s)


def _check_size(g: Graph) -> None:
    if g.n > MAX_CANON_N:
        raise SizeCapError(f"canonical form supports n <= {MAX_CANON_N}, got {g.n}")


def canonical_labeling(g: Graph) -> list[int]:
    """``order`` such that ``g.relabel(order)`` is the canonical graph."""
    _check_size(g)
    return _canonize(g.adj, g.n).order


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> CanonicalForm:
    _check_size(g)
    c = _canonize(g.adj, g.n)
    return CanonicalForm(encode_bytes(g.relabel(c.order)), c.automorphism_count)


def automorphism_orbits(g: Graph) -> list[frozenset[int]]:
    _check_size(g)
    if g.n == 0:
        return []
    reps = _canonize(g.adj, g.n).search.orbits()
    groups: dict[int, set[int]] = {}
    for v, r in enumerate(reps):
        groups.setdefault(r, set()).add(v)
    return [frozenset(groups[r]) for r in sorted(groups)]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g).canonical_bytes == canonical_form(h).canonical_bytes


# -- enumeration ---------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    class_filter: str = "all"
    min_edges: int = 0
    max_edges: int | None = None
    connected_only: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"class_filter must be one of {CLASS_FILTERS}")
        if self.max_edges is None:
            object.__setattr__(self, "max_edges", comb(self.n, 2))
        if not 0 <= self.min_edges <= self.max_edges <= comb(self.n, 2):
            raise ValueError(
                f"need 0 <= min_edges <= max_edges <= {comb(self.n, 2)}, "
                f"got {self.min_edges}, {self.max_edges}"
            )

    def accepts(self, g: Graph) -> bool:
        """Independent re-check of every filter on a finished graph."""
        if g.n != self.n or not self.min_edges <= g.edge_count <= self.max_edges:
            return False
        if self.connected_only and not g.is_connected():
            return False
        if self.class_filter == "bipartite":
            return bipartition_of(g) is not None
        if self.class_filter == "triangle_free":
            return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges())
        return True


def _augment(adj: list[int], n: int, new: int) -> Graph | None:
    """Canonical graph of the child if ``new`` is in the canonical-last orbit."""
    full = (1 << n) - 1
    cells = _refine(adj, [full], [full])
    if not cells[-1] >> new & 1:
        return None
    s = _Search(adj, n)
    s.run(cells)
    order = s.leaves[0][0]
    last = order[-1]
    if last != new:
        orb = s.orbits()
        if orb[last] != orb[new]:
            return None
    return Graph._trusted(n, adj).relabel(order)


def _independence_number(adj, mask: int) -> int:
    if not mask:
        return 0
    v = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << v)
    if not adj[v] & rest:
        return 1 + _independence_number(adj, rest)
    return max(1 + _independence_number(adj, rest & ~adj[v]), _independence_number(adj, rest))


def _edge_ceiling(g: Graph, spec: EnumerationSpec) -> int:
    """Upper bound on |E| of any n-vertex graph in the class containing g as an induced subgraph."""
    r = spec.n - g.n
    m = g.edge_count
    if spec.class_filter == "all":
        return m + r * g.n + comb(r, 2)
    if spec.class_filter == "bipartite":
        reach = 0
        b = bipartition_of(g)
        for comp in g.components():
            a = sum(1 for v in bits(comp) if v in b.class0)
            reach += max(a, comp.bit_count() - a)
    else:
        reach = _independence_number(g.adj, (1 << g.n) - 1)
    return min(m + r * reach + r * r // 4, spec.n * spec.n // 4)


def _children(parent: Graph, spec: EnumerationSpec) -> list[Graph]:
    k = parent.n
    m = parent.edge_count
    room = spec.max_edges - m
    padj = parent.adj
    if spec.class_filter == "bipartite":
        b = bipartition_of(parent)
        side0 = sum(1 << v for v in b.class0)
        comps = parent.components()
    seen = set()
    out = []
    for s in range(1 << k):
        if s.bit_count() > room:
            continue
        if spec.class_filter == "triangle_free":
            if any(padj[v] & s for v in bits(s)):
                continue
        elif spec.class_filter == "bipartite":
            if any((s & c & side0) and (s & c & ~side0) for c in comps):
                continue
        adj = list(padj)
        for v in bits(s):
            adj[v] |= 1 << k
        adj.append(s)
        child = _augment(adj, k + 1, k)
        if child is None or child.adj in seen:
            continue
        seen.add(child.adj)
        out.append(child)
    return out


def _live_children(node: Graph, spec: EnumerationSpec) -> list[Graph]:
    kids = _children(node, spec)
    if node.n + 1 < spec.n:
        kids = [c for c in kids if _edge_ceiling(c, spec) >= spec.min_edges]
    return kids


def parse_token(token: str | None) -> list[int]:
    if not token:
        return []
    try:
        path = [int(p) for p in token.split(".")]
    except ValueError:
        raise ValueError(f"bad resume token {token!r}") from None
    if any(p < 0 for p in path):
        raise ValueError(f"bad resume token {token!r}")
    return path


def _root(spec: EnumerationSpec) -> Graph:
    return Graph._trusted(min(spec.n, 1), [0] * min(spec.n, 1))


def _walk(node: Graph, path: list[int], spec: EnumerationSpec) -> Iterator[Graph]:
    if node.n == spec.n:
        if not path and spec.accepts(node):
            yield node
        return
    kids = _live_children(node, spec)
    if path:
        if path[0] < len(kids):
            yield from _walk(kids[path[0]], path[1:], spec)
        return
    for kid in kids:
        yield from _walk(kid, [], spec)


def enumerate_graphs(spec: EnumerationSpec, resume: str | None = None) -> Iterator[Graph]:
    """Yield one canonically labelled representative per isomorphism class.

    ``resume`` is a dotted path of child indices ("0.3.1") from the
    one-vertex root; only the graphs in that subtree are produced.  Tokens are
    relative to ``spec`` because pruning depends on the edge window.
    """
    root = _root(spec)
    if root.n < spec.n and _edge_ceiling(root, spec) < spec.min_edges:
        return
    yield from _walk(root, parse_token(resume), spec)


def subtree_tokens(spec: EnumerationSpec, depth: int) -> list[str]:
    """Resume tokens of all live tree nodes ``depth`` levels below the root.

    Leaves reached earlier (n smaller than the requested level) are returned
    at their own depth so the tokens always partition the output.
    """
    out: list[str] = []

    def rec(node: Graph, path: list[int]):
        if len(path) == depth or node.n == spec.n:
            out.append(".".join(map(str, path)))
            return
        for i, kid in enumerate(_live_children(node, spec)):
            rec(kid, path + [i])

    if spec.n == 0:
        return [""]
    rec(_root(spec), [])
    return out


def default_split_depth(spec: EnumerationSpec) -> int:
    return max(0, spec.n - 4)


def default_jobs() -> int:
    env = os.environ.get("LINKLESS_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_token(func, spec, token):
    return func(spec, token)


def map_subtrees(
    spec: EnumerationSpec,
    func: Callable[[EnumerationSpec, str], list[T]],
    jobs: int = 1,
    depth: int | None = None,
) -> list[T]:
    """Apply ``func(spec, token)`` to every subtree and concatenate the results.

    ``func`` must be a picklable module-level function when ``jobs > 1``.
    Result order follows token order, independent of scheduling.
    """
    tokens = subtree_tokens(spec, default_split_depth(spec) if depth is None else depth)
    out: list[T] = []
    if jobs <= 1 or len(tokens) <= 1:
        for t in tokens:
            out.extend(func(spec, t))
        return out
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(partial(_run_token, func, spec), tokens):
            out.extend(part)
    return out


def _graph6_of_subtree(spec: EnumerationSpec, token: str) -> list[bytes]:
    return [encode_bytes(g) for g in enumerate_graphs(spec, token)]


def enumerate_graph6(spec: EnumerationSpec, jobs: int = 1) -> list[bytes]:
    """Canonical graph6 lines of the whole class, gathered over subtrees."""
    return map_subtrees(spec, _graph6_of_subtree, jobs)
