import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_graph
from linkless.graph import (
    Bipartition,
    Graph,
    GraphError,
    bipartite_complement,
    bipartition_of,
    build_graph,
    check_separation,
    complete_graph,
    complete_multipartite,
    contract_edge,
    cycle_graph,
    delete_edge,
    delete_vertex,
    is_minimal_separation,
    k6_delta_y,
    k44_minus,
    named_graph,
    petersen_graph,
    super_separation_order,
    triangle_count,
)
from linkless.iso import are_isomorphic


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


class TestBuild:
    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert g.edge_count == 3

    def test_edgeless(self):
        g = build_graph(5, [])
        assert g.edge_count == 0 and g.min_degree == 0 and g.max_degree == 0

    def test_k6(self):
        g = build_graph(6, list(combinations(range(6), 2)))
        assert g == complete_graph(6)
        assert g.degrees() == [5] * 6

    def test_duplicates_collapse(self):
        assert build_graph(2, [(0, 1), (1, 0), (0, 1)]).edge_count == 1

    @pytest.mark.parametrize("edge", [(0, 3), (-1, 0), (2, 2)])
    def test_rejects(self, edge):
        with pytest.raises(GraphError, match=str(edge[0])):
            build_graph(3, [edge])

    def test_raw_adjacency_validated(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0b00))
        with pytest.raises(GraphError):
            Graph(1, (0b1,))


class TestNamed:
    def test_k133(self):
        g = named_graph("K_{1,3,3}")
        assert (g.n, g.edge_count) == (7, 15)

    def test_k44_minus(self):
        g = named_graph("K44_minus")
        assert (g.n, g.edge_count) == (8, 15)
        assert are_isomorphic(g, delete_edge(complete_multipartite(4, 4), 0, 4))

    def test_k6_delta_y(self):
        g = named_graph("K6_deltaY")
        assert (g.n, g.edge_count) == (7, 15)
        assert g == k6_delta_y()

    def test_petersen(self):
        g = named_graph("petersen_graph")
        assert (g.n, g.edge_count) == (10, 15)
        assert set(g.degrees()) == {3}
        assert triangle_count(g) == 0

    @pytest.mark.parametrize("name,n,m", [("K5", 5, 10), ("K_6", 6, 15), ("K3,3", 6, 9), ("C5", 5, 5)])
    def test_forms(self, name, n, m):
        g = named_graph(name)
        assert (g.n, g.edge_count) == (n, m)

    def test_unknown(self):
        with pytest.raises(GraphError):
            named_graph("Q7")


class TestMinorOperations:
    def test_contract_k6(self):
        assert contract_edge(complete_graph(6), 2, 4) == complete_graph(5)

    def test_contract_triangle(self):
        assert contract_edge(complete_graph(3), 0, 1) == build_graph(2, [(0, 1)])

    def test_contract_cycle(self):
        assert are_isomorphic(contract_edge(cycle_graph(5), 0, 1), cycle_graph(4))

    def test_contract_relabels(self):
        # path 0-1-2-3, contract 1-2: vertex 1 survives, 3 becomes 2
        g = contract_edge(build_graph(4, [(0, 1), (1, 2), (2, 3)]), 2, 1)
        assert g.edges() == [(0, 1), (1, 2)]

    def test_contract_non_edge(self):
        with pytest.raises(GraphError):
            contract_edge(cycle_graph(5), 0, 2)

    def test_delete_vertex(self):
        g = delete_vertex(complete_multipartite(3, 4), 3)  # degree 3: in the 4-class
        assert are_isomorphic(g, complete_multipartite(3, 3))

    def test_delete_edge(self):
        assert delete_edge(complete_graph(6), 1, 3).edge_count == 14

    def test_delete_isolated(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        g = build_graph(5, g.edges())
        assert delete_vertex(g, 4).edges() == g.edges()

    def test_delete_missing(self):
        with pytest.raises(GraphError):
            delete_vertex(complete_graph(3), 3)
        with pytest.raises(GraphError):
            delete_edge(cycle_graph(4), 0, 2)

    @given(graphs())
    def test_vertex_count_changes_by_one(self, g):
        for v in range(g.n):
            h = delete_vertex(g, v)
            assert h.n == g.n - 1
            assert h.edge_count == g.edge_count - g.degree(v)
        for u, v in g.edges():
            h = contract_edge(g, u, v)
            assert h.n == g.n - 1
            assert h.edge_count == g.edge_count - 1 - (g.adj[u] & g.adj[v]).bit_count()
            Graph(h.n, h.adj)  # full validation: symmetric, loop-free


class TestBipartition:
    def test_k33(self):
        b = bipartition_of(complete_multipartite(3, 3))
        assert sorted([len(b.class0), len(b.class1)]) == [3, 3]

    def test_triangle(self):
        assert bipartition_of(complete_graph(3)) is None

    def test_edgeless(self):
        b = bipartition_of(build_graph(4))
        assert b.class0 == frozenset(range(4)) and not b.class1

    @settings(max_examples=200)
    @given(graphs(max_n=8))
    def test_bipartition_or_odd_cycle(self, g):
        b = bipartition_of(g)
        if b is not None:
            assert b.is_valid_for(g)
            return
        # exhibit an odd closed walk: some vertex reaches itself in an odd number of steps
        reach = []
        for v in range(g.n):
            frontier, odd_hit = {v}, False
            for step in range(1, 2 * g.n + 2):
                frontier = {u for w in frontier for u in g.neighbors(w)}
                if step % 2 and v in frontier:
                    odd_hit = True
                    break
            reach.append(odd_hit)
        assert any(reach)


class TestBipartiteComplement:
    def test_k33(self):
        g = complete_multipartite(3, 3)
        c = bipartite_complement(g, range(6), bipartition_of(g))
        assert c.edge_count == 0 and c.n == 6

    def test_edgeless(self):
        b = Bipartition(frozenset({0, 1}), frozenset({2, 3}))
        c = bipartite_complement(build_graph(4), range(4), b)
        assert are_isomorphic(c, complete_multipartite(2, 2))

    def test_k44_minus(self):
        g = k44_minus()
        c = bipartite_complement(g, range(8), bipartition_of(g))
        assert c.edges() == [(3, 7)]

    def test_subset_relabels(self):
        g = build_graph(6, [(0, 3)])
        b = Bipartition(frozenset({0, 1, 2}), frozenset({3, 4, 5}))
        c = bipartite_complement(g, [0, 3, 4], b)
        assert c.edges() == [(0, 2)]

    def test_invalid_bipartition(self):
        with pytest.raises(GraphError):
            bipartite_complement(build_graph(2, [(0, 1)]), [0, 1], Bipartition(frozenset({0, 1}), frozenset()))

    def test_involution(self, rng):
        for _ in range(100):
            n = rng.randint(1, 9)
            g = random_graph(rng, n, rng.random())
            b = Bipartition(frozenset(v for v in range(n) if rng.random() < 0.5), frozenset())
            b = Bipartition(b.class0, frozenset(range(n)) - b.class0)
            cross = build_graph(n, [(u, v) for u, v in g.edges() if (u in b.class0) != (v in b.class0)])
            twice = bipartite_complement(bipartite_complement(cross, range(n), b), range(n), b)
            assert twice == cross


class TestSeparations:
    def test_path(self):
        sep = check_separation(build_graph(3, [(0, 1), (1, 2)]), {0, 1}, {1, 2})
        assert sep.order == 1 and sep.nontrivial

    def test_whole(self):
        g = cycle_graph(5)
        sep = check_separation(g, range(5), range(5))
        assert sep.order == 5 and not sep.nontrivial

    def test_not_covering(self):
        assert check_separation(build_graph(3, [(0, 1), (1, 2)]), {0}, {1}) is None

    def test_crossing_edge(self):
        assert check_separation(build_graph(3, [(0, 1), (1, 2)]), {0, 1}, {2}) is None

    def test_minimal(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert is_minimal_separation(g, check_separation(g, {0, 1, 2}, {2, 3, 4}))
        assert not is_minimal_separation(g, check_separation(g, {0, 1, 2, 3}, {1, 2, 3, 4}))

    def test_random(self, rng):
        for _ in range(300):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, 0.3)
            a = {v for v in range(n) if rng.random() < 0.6}
            b = {v for v in range(n) if rng.random() < 0.6 or v not in a}
            sep = check_separation(g, a, b)
            if sep is not None:
                assert sep.order == len(a & b)
                assert all({u, v} <= a or {u, v} <= b for u, v in g.edges())

    def test_super_separation_order(self):
        assert super_separation_order(build_graph(6), build_graph(7), build_graph(10)) == 3
        g = cycle_graph(5)
        assert super_separation_order(g, g, g) == 5
        assert super_separation_order(build_graph(2), build_graph(3), g) == 0


class TestCounts:
    @pytest.mark.parametrize("g,t", [(complete_graph(6), 20), (complete_graph(5), 10),
                                     (complete_multipartite(3, 4), 0), (petersen_graph(), 0)])
    def test_triangles(self, g, t):
        assert triangle_count(g) == t

    def test_triangles_brute_force(self, rng):
        for _ in range(100):
            g = random_graph(rng, rng.randint(0, 9), rng.random())
            brute = sum(1 for a, b, c in combinations(range(g.n), 3)
                        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c))
            assert triangle_count(g) == brute

    def test_handshake(self):
        rng = random.Random(5)
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 12), rng.random())
            assert sum(g.degrees()) == 2 * g.edge_count
