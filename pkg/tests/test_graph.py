import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaygraph.errors import GraphError
from relaygraph.generators import random_pair, random_rgraph
from relaygraph.graph import (
    RGraph,
    SimpleGraph,
    check_condition_r,
    check_condition_r_doubleprime,
    check_condition_r_prime,
    components,
    is_proper,
    isolated_set,
    r_neighbour_set,
    r_subgraph,
    shortest_path,
)

from .oracles import e_w_by_paths, union_find_components


def test_simple_graph_rejects_loops_and_unknown_endpoints():
    with pytest.raises(GraphError):
        SimpleGraph([0, 1], [(0, 0)])
    with pytest.raises(GraphError):
        SimpleGraph([0, 1], [(0, 2)])


def test_simple_graph_normalizes_and_rejects_duplicates():
    g = SimpleGraph([0, 1, 2], [(1, 0), (2, 1)])
    assert g.edges == {(0, 1), (1, 2)}
    with pytest.raises(GraphError):
        SimpleGraph([0, 1], [(0, 1), (1, 0)])


def test_components_ex1(load):
    g = load("ex1")
    comps = [sorted(g.name(v) for v in c) for c in components(g.base)]
    assert comps == [["v1", "v3"], ["v2", "v5"], ["v4", "v7"], ["v6", "v9"], ["v10", "v8"]]


def test_components_edgeless():
    assert components(SimpleGraph(range(3))) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert components(SimpleGraph([])) == []


@pytest.mark.parametrize("seed", range(20))
def test_components_match_union_find(seed):
    rng = random.Random(seed)
    edges = [e for e in combinations(range(50), 2) if rng.random() < 0.03]
    g = SimpleGraph(range(50), edges)
    assert set(components(g)) == union_find_components(range(50), edges)


def test_r_neighbour_sets_ex1(load):
    g = load("ex1")
    U = {g.name(v): sorted(g.name(x) for x in r_neighbour_set(g, v)) for v in g.vertices}
    assert U["v4"] == ["v3", "v4", "v5"]
    assert U["v9"] == U["v10"] == ["v10", "v9"]
    with pytest.raises(GraphError):
        r_neighbour_set(g, 99)


def test_rgraph_rejects_condition_r_violation():
    # v0 sees both ends of base edge 1-2 through the star graph
    with pytest.raises(GraphError):
        RGraph.from_edges(3, [(1, 2)], [(0, 1), (0, 2)])


def test_condition_r_witness():
    base = SimpleGraph(range(3), [(1, 2)])
    star = SimpleGraph(range(3), [(0, 1), (0, 2)])
    v = check_condition_r(base, star)
    assert not v and v.clause == "R"
    assert v.witness[0] == 0 and set(v.witness[2]) == {1, 2}


def test_condition_r_forces_disjoint_edge_sets():
    with pytest.raises(GraphError):
        RGraph.from_edges(2, [(0, 1)], [(0, 1)])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.floats(0.05, 0.6), st.floats(0.05, 0.6), st.integers(0, 10**6))
def test_three_conditions_agree(n, pb, ps, seed):
    g = random_pair(random.Random(seed), n, pb, ps)
    a = bool(check_condition_r(g.base, g.star))
    assert a == bool(check_condition_r_prime(g.base, g.star))
    assert a == bool(check_condition_r_doubleprime(g.base, g.star))


def test_three_conditions_agree_exhaustively_small():
    from relaygraph.generators import enumerate_pairs

    count = 0
    for g in enumerate_pairs(4):
        a = bool(check_condition_r(g.base, g.star))
        assert a == bool(check_condition_r_prime(g.base, g.star)) == bool(check_condition_r_doubleprime(g.base, g.star))
        count += 1
    # unlabelled bases on 1..4 vertices times every labelled star graph
    assert count == 1 * 1 + 2 * 2 + 4 * 8 + 11 * 64


def test_shortest_path_respects_allowed():
    g = SimpleGraph(range(4), [(0, 1), (1, 3), (0, 2), (2, 3)])
    assert shortest_path(g, 0, 3) == [0, 1, 3]
    assert shortest_path(g, 0, 3, allowed={2}) == [0, 2, 3]
    assert shortest_path(g, 0, 3, allowed=set()) is None


def test_proper_and_isolated(load):
    g = load("sigma-prime")
    assert not is_proper(g)
    assert sorted(g.name(v) for v in isolated_set(g, g.vertices)) == ["w1", "w2", "w3", "w4"]
    assert is_proper(load("ex1"))


def test_r_subgraph_path4(load):
    g = load("path4")
    a, b, c, d = g.ids("a", "b", "c", "d")
    sub = r_subgraph(g, {a, d})
    assert sub.e_w == frozenset()
    sub = r_subgraph(g, {a, b, c})
    assert sub.e_w == {(a, b)}
    assert sub.e_w_star == {(b, c)}
    assert sub.U_W(b) == {b, c}


def test_r_subgraph_contracts_through_complement():
    g = RGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    sub = r_subgraph(g, {0, 3})
    assert sub.e_w == {(0, 3)}
    assert sub.lift_path([0, 3]) == [0, 1, 2, 3]


def test_r_subgraph_rejects_foreign_vertices(load):
    with pytest.raises(GraphError):
        r_subgraph(load("path4"), {42})


@pytest.mark.parametrize("seed", range(40))
def test_r_subgraph_matches_path_oracle(seed):
    rng = random.Random(seed)
    g = random_rgraph(rng, rng.randint(2, 9), attempts=rng.randint(0, 20))
    W = {v for v in g.vertices if rng.random() < 0.5}
    sub = r_subgraph(g, W)
    assert set(sub.e_w) == e_w_by_paths(g.vertices, g.base.edges, W)
    # the R-subgraph is itself an R-graph and its witnesses are genuine paths
    assert check_condition_r(sub.graph.base, sub.graph.star)
    for (a, b), path in sub.witness.items():
        assert {path[0], path[-1]} == {a, b}
        assert all(g.base.has_edge(x, y) for x, y in zip(path, path[1:]))
        assert not set(path[1:-1]) & W


def test_names_roundtrip():
    g = RGraph.from_names(["p", "q", "r"], [("p", "q")], [("q", "r")])
    assert g.name(g.id_of("r")) == "r"
    with pytest.raises(GraphError):
        g.id_of("zz")
