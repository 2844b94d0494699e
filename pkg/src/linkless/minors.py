"""Minor containment with branch-set certificates, and linkless embeddability.

A model of H in G assigns each H-vertex a non-empty connected set of
G-vertices (a branch set); branch sets are pairwise disjoint and every H-edge
is realised by at least one G-edge between the corresponding sets.

The search places H-vertices one at a time, choosing a whole connected branch
set for each.  Pruning:

* vertex budget: enough free vertices remain for the unplaced H-vertices;
* edge budget: inside a connected host every vertex beyond one per branch
  set costs at least one edge that cannot realise an H-edge (a spanning-tree
  edge of its branch set, or an edge at an unused vertex); chords and
  duplicate or non-H edges between placed sets are lost on top of that;
* contacts: each placed set has enough free neighbours for its unplaced
  H-neighbours, and every unplaced H-vertex has one free component touching
  all of its placed neighbours' sets;
* twin symmetry of H: interchangeable H-vertices get branch sets with
  increasing least vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

from .graph import (
    Graph,
    bits,
    complete_graph,
    complete_multipartite,
    component_mask,
    k6_delta_y,
    k44_minus,
    mask_of,
)
from .iso import _twin_masks
from .transforms import petersen_family


@dataclass(frozen=True)
class MinorModel:
    branch_sets: dict[int, frozenset[int]] = field(default_factory=dict)

    def to_json(self) -> dict[str, list[int]]:
        return {str(x): sorted(b) for x, b in sorted(self.branch_sets.items())}

    @classmethod
    def from_json(cls, data: dict) -> MinorModel:
        return cls({int(k): frozenset(v) for k, v in data.items()})


def model_problem(g: Graph, h: Graph, m: MinorModel) -> str | None:
    """Reason why ``m`` is not a model of ``h`` in ``g``, or None if it is."""
    sets = m.branch_sets
    if set(sets) != set(range(h.n)):
        return f"branch sets are keyed by {sorted(sets)}, expected 0..{h.n - 1}"
    used = 0
    masks = {}
    for x, b in sets.items():
        if not b:
            return f"branch set of {x} is empty"
        if any(not isinstance(v, int) or not 0 <= v < g.n for v in b):
            return f"branch set of {x} has vertices outside G"
        bm = mask_of(b)
        if used & bm:
            return f"branch set of {x} overlaps another branch set"
        used |= bm
        if component_mask(g.adj, bm & -bm, bm) != bm:
            return f"branch set of {x} is not connected in G"
        masks[x] = bm
    for x, y in h.edges():
        if not any(g.adj[v] & masks[y] for v in bits(masks[x])):
            return f"no G-edge between branch sets of H-edge {(x, y)}"
    return None


def verify_model(g: Graph, h: Graph, m: MinorModel) -> bool:
    return model_problem(g, h, m) is None


def _connected_sets(adj, allowed: int, root: int, cap: int) -> Iterator[int]:
    """Connected subsets of ``allowed | root`` containing ``root``, each exactly once."""
    def ext(s: int, frontier: int, excluded: int, size: int):
        yield s
        if size == cap:
            return
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            excluded |= low
            grow = adj[low.bit_length() - 1] & allowed & ~excluded & ~s
            yield from ext(s | low, frontier | grow, excluded, size + 1)

    rb = 1 << root
    yield from ext(rb, adj[root] & allowed & ~rb, rb, 1)


def _placement_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    degs = h.degrees()
    rest = set(range(h.n))
    while rest:
        x = max(rest, key=lambda v: ((h.adj[v] & placed).bit_count(), degs[v], -v))
        order.append(x)
        placed |= 1 << x
        rest.remove(x)
    return order


class _MinorSearch:
    def __init__(self, g: Graph, h: Graph, pool: int):
        self.adj = g.adj
        self.h = h
        self.pool = pool
        self.k = h.n
        self.eh = h.edge_count
        self.pool_edges = sum((g.adj[v] & pool).bit_count() for v in bits(pool)) // 2
        self.connected = component_mask(g.adj, pool & -pool, pool) == pool
        self.order = order = _placement_order(h)
        pos = {x: i for i, x in enumerate(order)}
        # earlier H-neighbours / later H-neighbours by position
        self.back = [[pos[y] for y in bits(h.adj[x]) if pos[y] < i] for i, x in enumerate(order)]
        self.fwd = [[pos[y] for y in bits(h.adj[x]) if pos[y] > i] for i, x in enumerate(order)]
        self.isolated = [h.adj[x] == 0 for x in order]
        twins = _twin_masks(h.adj, h.n)
        self.prev_twin = []
        for i, x in enumerate(order):
            earlier = [j for j in range(i) if twins[x] >> order[j] & 1]
            self.prev_twin.append(earlier[-1] if earlier else None)
        self.sets = [0] * self.k
        self.nbs = [0] * self.k

    def run(self) -> list[int] | None:
        if self._place(0, self.pool, 0):
            return [self.sets[self.order.index(x)] for x in range(self.k)]
        return None

    def _feasible(self, i: int, free: int, lost: int) -> bool:
        """Checks after positions 0..i have been placed."""
        remaining = self.k - i - 1
        nfree = free.bit_count()
        if nfree < remaining:
            return False
        if self.connected:
            trees = self.pool.bit_count() - self.k
        else:
            trees = self.pool.bit_count() - nfree - (i + 1)
        if self.pool_edges - lost - trees < self.eh:
            return False
        if not remaining:
            return True
        for j in range(i + 1):
            need = sum(1 for l in self.fwd[j] if l > i)
            if need and (self.nbs[j] & free).bit_count() < need:
                return False
        comps = None
        for l in range(i + 1, self.k):
            back = [j for j in self.back[l] if j <= i]
            if len(back) < 2:
                continue
            if comps is None:
                comps = []
                rest = free
                while rest:
                    c = component_mask(self.adj, rest & -rest, rest)
                    comps.append(c)
                    rest &= ~c
            if not any(all(self.nbs[j] & c for j in back) for c in comps):
                return False
        return True

    def _place(self, i: int, free: int, lost: int) -> bool:
        if i == self.k:
            return True
        adj = self.adj
        back = self.back[i]
        cap = free.bit_count() - (self.k - i - 1)
        if self.isolated[i]:
            cap = 1
        lo = self.prev_twin[i]
        floor = (self.sets[lo] & -self.sets[lo]).bit_length() if lo is not None else 0
        cands = []
        for r in bits(free >> floor << floor):
            above = free & ~((2 << r) - 1)
            for s in _connected_sets(adj, above, r, cap):
                if all(self.nbs[j] & s for j in back):
                    cands.append(s)
        cands.sort(key=lambda s: (s.bit_count(), s))
        for s in cands:
            extra = 0
            nb = 0
            for v in bits(s):
                a = adj[v]
                nb |= a
                extra += (a & s).bit_count()
            extra //= 2
            for j in range(i):
                e = sum((adj[v] & self.sets[j]).bit_count() for v in bits(s))
                extra += e - 1 if j in back else e
            self.sets[i] = s
            self.nbs[i] = nb & self.pool & ~s
            nfree = free & ~s
            # lost tracks only the excess over spanning trees; trees are charged in _feasible
            nlost = lost + extra - (s.bit_count() - 1)
            if self._feasible(i, nfree, nlost) and self._place(i + 1, nfree, nlost):
                return True
        self.sets[i] = 0
        self.nbs[i] = 0
        return False


def find_minor(g: Graph, h: Graph) -> MinorModel | None:
    """A branch-set model of ``h`` in ``g``, or None if ``h`` is not a minor of ``g``."""
    if h.n == 0:
        return MinorModel({})
    if h.n > g.n or h.edge_count > g.edge_count:
        return None
    if h.edge_count == 0:
        return MinorModel({x: frozenset([x]) for x in range(h.n)})
    if h.is_connected():
        pools = [c for c in g.components() if c.bit_count() >= h.n]
    else:
        pools = [(1 << g.n) - 1]
    for pool in pools:
        sets = _MinorSearch(g, h, pool).run()
        if sets is not None:
            return MinorModel({x: frozenset(bits(s)) for x, s in enumerate(sets)})
    return None


def has_minor(g: Graph, h: Graph) -> bool:
    return find_minor(g, h) is not None


def naive_find_minor(g: Graph, h: Graph) -> MinorModel | None:
    """Unpruned reference search over all set partitions of V(G) plus an unused block.

    Exponential; intended for spot checks of small hosts.
    """
    if h.n == 0:
        return MinorModel({})
    if h.n > g.n:
        return None
    h_edges = h.edges()
    labels = [0] * g.n  # 0 = unused, 1..k = block

    def rec(v: int, nblocks: int):
        if g.n - v < h.n - nblocks:
            return None
        if v == g.n:
            blocks = [0] * h.n
            for u, lab in enumerate(labels):
                if lab:
                    blocks[lab - 1] |= 1 << u
            if any(component_mask(g.adj, b & -b, b) != b for b in blocks):
                return None
            touch = [[any(g.adj[u] & blocks[b] for u in bits(blocks[a])) for b in range(h.n)]
                     for a in range(h.n)]
            for perm in permutations(range(h.n)):
                if all(touch[perm[x]][perm[y]] for x, y in h_edges):
                    return MinorModel({x: frozenset(bits(blocks[perm[x]])) for x in range(h.n)})
            return None
        for lab in range(0, min(nblocks + 1, h.n) + 1):
            labels[v] = lab
            found = rec(v + 1, max(nblocks, lab))
            if found:
                return found
        labels[v] = 0
        return None

    return rec(0, 0)


# -- linkless embeddability -------------------------------------------------------

def find_obstruction(g: Graph) -> tuple[int, MinorModel] | None:
    """First Petersen-family member (by family index) that is a minor of ``g``."""
    for i, member in enumerate(petersen_family()):
        m = find_minor(g, member)
        if m is not None:
            return i, m
    return None


def is_linkless(g: Graph) -> bool:
    """No minor in the Petersen family, the forbidden-minor characterisation."""
    return find_obstruction(g) is None


def bipartite_obstructions() -> list[tuple[str, Graph]]:
    """The four excluded minors for the bipartite case, in ascending vertex count."""
    return [
        ("K6", complete_graph(6)),
        ("K_{1,3,3}", complete_multipartite(1, 3, 3)),
        ("K6_deltaY", k6_delta_y()),
        ("K44_minus", k44_minus()),
    ]


def find_bipartite_obstruction(g: Graph) -> tuple[str, MinorModel] | None:
    for name, h in bipartite_obstructions():
        m = find_minor(g, h)
        if m is not None:
            return name, m
    return None


def is_bipartite_obstruction_free(g: Graph) -> bool:
    return find_bipartite_obstruction(g) is None
