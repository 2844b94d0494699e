import random

import networkx as nx
import pytest

from conftest import random_graph
from linkless.graph import (
    build_graph,
    complete_graph,
    complete_multipartite,
    contract_edge,
    cycle_graph,
    delete_edge,
    delete_vertex,
    k44_minus,
    named_graph,
    petersen_graph,
)
from linkless.minors import (
    MinorModel,
    find_bipartite_obstruction,
    find_minor,
    find_obstruction,
    is_bipartite_obstruction_free,
    is_linkless,
    model_problem,
    naive_find_minor,
    verify_model,
)
from linkless.transforms import petersen_family
from oracles import branch_set_oracle, contraction_oracle

PATTERNS = [named_graph(x) for x in ("K4", "K5", "K2,3", "K3,3", "C5")]


def _m(**sets):
    return MinorModel({int(k[1:]): frozenset(v) for k, v in sets.items()})


class TestVerifyModel:
    def test_identity(self):
        g = complete_graph(6)
        assert verify_model(g, g, MinorModel({i: frozenset([i]) for i in range(6)}))

    def test_petersen_matching_gives_k5(self):
        # spokes i -- i+5 form a perfect matching; contracting them leaves K5
        m = MinorModel({i: frozenset({i, i + 5}) for i in range(5)})
        assert verify_model(petersen_graph(), complete_graph(5), m)

    def test_overlap(self):
        m = _m(x0={0, 1}, x1={1, 2}, x2={3})
        assert "overlaps" in model_problem(complete_graph(4), complete_graph(3), m)

    def test_disconnected_set(self):
        m = _m(x0={0, 2}, x1={1}, x2={3})
        assert "not connected" in model_problem(cycle_graph(4), complete_graph(3), m)

    def test_missing_edge(self):
        m = _m(x0={0}, x1={2}, x2={3})
        assert "no G-edge" in model_problem(cycle_graph(4), complete_graph(3), m)

    def test_bad_keys_and_vertices(self):
        g = complete_graph(4)
        assert not verify_model(g, complete_graph(3), _m(x0={0}, x1={1}))
        assert not verify_model(g, complete_graph(3), _m(x0={0}, x1={1}, x2={7}))
        assert not verify_model(g, complete_graph(3), _m(x0={0}, x1={1}, x2=set()))

    def test_json_roundtrip(self):
        m = MinorModel({0: frozenset({3, 1}), 1: frozenset({2})})
        assert m.to_json() == {"0": [1, 3], "1": [2]}
        assert MinorModel.from_json(m.to_json()) == m


class TestFindMinor:
    def test_k33_in_k6(self):
        m = find_minor(complete_graph(6), complete_multipartite(3, 3))
        assert m is not None and verify_model(complete_graph(6), complete_multipartite(3, 3), m)

    def test_petersen(self):
        assert find_minor(petersen_graph(), complete_graph(6)) is None
        m = find_minor(petersen_graph(), complete_graph(5))
        assert verify_model(petersen_graph(), complete_graph(5), m)

    def test_k35_has_no_k44_minus(self):
        assert find_minor(complete_multipartite(3, 5), k44_minus()) is None

    def test_too_large(self):
        assert find_minor(complete_graph(4), complete_graph(5)) is None
        assert find_minor(cycle_graph(6), complete_graph(4)) is None

    def test_edgeless_pattern(self):
        assert find_minor(build_graph(3), build_graph(3)) is not None
        assert find_minor(build_graph(3), build_graph(4)) is None
        assert find_minor(build_graph(5), build_graph(0)) == MinorModel({})

    def test_isolated_vertices_in_pattern(self):
        h = build_graph(5, [(0, 1), (1, 2), (0, 2)])  # triangle plus two isolated vertices
        # a triangle minor of a cycle needs the whole cycle, leaving nothing for the isolated vertices
        assert find_minor(cycle_graph(5), h) is None
        assert find_minor(build_graph(5, [(0, 1), (1, 2), (0, 2)]), h) is not None
        m = find_minor(build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0)]), h)
        assert verify_model(build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0)]), h, m)

    def test_disconnected_host(self):
        g = build_graph(9, [(0, 1), (1, 2), (0, 2)] + [(a, b) for a in range(3, 9) for b in range(a + 1, 7)])
        assert find_minor(g, complete_graph(4)) is not None
        two_triangles = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert find_minor(g, two_triangles) is not None
        assert find_minor(complete_graph(5), two_triangles) is None

    def test_deterministic(self):
        g = petersen_graph()
        assert find_minor(g, complete_graph(5)) == find_minor(g, complete_graph(5))

    @pytest.mark.parametrize("h", PATTERNS, ids=["K4", "K5", "K23", "K33", "C5"])
    def test_oracles_small_hosts(self, h):
        graphs = [G for G in nx.graph_atlas_g() if G.number_of_nodes() <= 6]
        for G in graphs:
            g = build_graph(G.number_of_nodes(), G.edges())
            m = find_minor(g, h)
            expected = branch_set_oracle(g, h)
            assert (m is not None) == expected == contraction_oracle(g, h)
            if m is not None:
                assert verify_model(g, h, m)

    def test_oracle_seven_vertex_sample(self):
        rng = random.Random(7)
        graphs = [G for G in nx.graph_atlas_g() if G.number_of_nodes() == 7]
        for G in rng.sample(graphs, 60):
            g = build_graph(7, G.edges())
            h = rng.choice(PATTERNS)
            assert (find_minor(g, h) is not None) == branch_set_oracle(g, h)

    def test_random_soundness_and_naive_agreement(self, rng):
        for _ in range(150):
            g = random_graph(rng, rng.randint(1, 7), rng.random())
            h = random_graph(rng, rng.randint(1, 4), rng.random())
            m = find_minor(g, h)
            if m is not None:
                assert verify_model(g, h, m)
            assert (m is None) == (naive_find_minor(g, h) is None)

    def test_pruned_cases_agree_with_unpruned(self, rng):
        # whenever the cheap counts rule a minor out, the exhaustive search must agree
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 6), rng.random())
            h = random_graph(rng, rng.randint(1, 7), rng.random())
            if h.n > g.n or h.edge_count > g.edge_count:
                assert find_minor(g, h) is None
                assert naive_find_minor(g, h) is None
                assert not branch_set_oracle(g, h)


class TestLinkless:
    def test_k6(self):
        idx, m = find_obstruction(complete_graph(6))
        assert idx == 0 and verify_model(complete_graph(6), petersen_family()[0], m)

    def test_petersen(self):
        assert find_obstruction(petersen_graph())[0] == petersen_family().index_of(petersen_graph())

    def test_k33(self):
        assert is_linkless(complete_multipartite(3, 3))

    def test_k44(self):
        assert not is_linkless(complete_multipartite(4, 4))

    def test_every_member_is_obstructed(self):
        for i, member in enumerate(petersen_family()):
            idx, m = find_obstruction(member)
            assert idx == i  # equal edge counts: no member is a minor of another
            assert verify_model(member, petersen_family()[idx], m)

    def test_members_minor_minimal(self):
        # deleting any edge of a family member leaves a linkless graph
        for member in petersen_family():
            for u, v in member.edges():
                assert is_linkless(delete_edge(member, u, v))

    @pytest.mark.parametrize("n", range(6, 10))
    def test_k3_family_linkless(self, n):
        assert is_linkless(complete_multipartite(3, n - 3))

    def test_monotone_under_minors(self):
        rng = random.Random(11)
        checked = 0
        while checked < 500:
            g = random_graph(rng, rng.randint(2, 9), rng.uniform(0.2, 0.6))
            if not is_linkless(g):
                continue
            op = rng.choice(["vertex", "edge", "contract"])
            if op == "vertex":
                h = delete_vertex(g, rng.randrange(g.n))
            elif not g.edge_count:
                continue
            else:
                u, v = rng.choice(g.edges())
                h = delete_edge(g, u, v) if op == "edge" else contract_edge(g, u, v)
            assert is_linkless(h)
            checked += 1


class TestBipartiteObstructions:
    def test_k35(self):
        assert is_bipartite_obstruction_free(complete_multipartite(3, 5))

    def test_k6(self):
        assert find_bipartite_obstruction(complete_graph(6))[0] == "K6"

    def test_k44(self):
        assert not is_bipartite_obstruction_free(complete_multipartite(4, 4))

    def test_agrees_with_linkless_on_random_bipartite(self, rng):
        for _ in range(150):
            a = rng.randint(1, 5)
            b = rng.randint(1, 9 - a)
            p = rng.uniform(0.4, 1.0)
            g = build_graph(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p])
            assert is_bipartite_obstruction_free(g) == is_linkless(g)
