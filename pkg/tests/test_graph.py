import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, isomorphic
from qlap.errors import ConstructionError, ParameterError, SizeError
from qlap.graph import (
    Graph, GraphLabel, add_isolated, blowup, clique_number, complement, complete_graph, components,
    count_triangles, creates_clique, cycle_graph, disjoint_union, empty_graph, has_bipartite_component,
    induced_subgraph, is_bipartite, is_colorable, is_connected, is_k_free, is_turan_graph, make_graph,
    max_order, path_graph, petersen_graph, srg_parameters, turan_graph, turan_part_sizes,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_basic_invariants():
    g = make_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert g.m == 4
    assert g.degrees == (2, 2, 3, 1)
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert (g.adjacency_matrix() == g.adjacency_matrix().T).all()
    assert g.adjacency_matrix().trace() == 0


def test_rejects_loops_and_bad_rows():
    with pytest.raises(ConstructionError):
        make_graph(3, [(1, 1)])
    with pytest.raises(ConstructionError):
        make_graph(3, [(0, 3)])
    with pytest.raises(ConstructionError):
        Graph(2, (0b10, 0))  # asymmetric


def test_duplicate_edges_collapse():
    assert make_graph(3, [(0, 1), (1, 0), (0, 1)]).m == 1


def test_toggle_roundtrip():
    g = cycle_graph(5)
    assert g.toggle(0, 2).toggle(0, 2) == g
    assert g.toggle(0, 1).m == 4


def test_turan_graph_shapes():
    assert turan_part_sizes(7, 3) == [3, 2, 2]
    t = turan_graph(7, 3)
    assert t.m == 16
    assert clique_number(t) == 3
    assert is_turan_graph(t, 3)
    assert turan_graph(4, 4) == complete_graph(4)
    with pytest.raises(ParameterError):
        turan_graph(3, 4)
    with pytest.raises(ParameterError):
        turan_graph(3, 0)


def test_turan_detection_is_label_free():
    t = turan_graph(6, 3)
    relabel = [3, 0, 4, 1, 5, 2]
    h = make_graph(6, [(relabel[u], relabel[v]) for u, v in t.edges()])
    assert is_turan_graph(h, 3)
    assert not is_turan_graph(h.toggle(*h.edges()[0]), 3)
    assert not is_turan_graph(turan_graph(6, 2), 3)


def test_blowup_labels():
    g = path_graph(3)
    b = blowup(g, 2)
    assert b.n == 6
    # (u, i) -> u + i n; copies of the same vertex are independent
    assert not b.has_edge(0, 3)
    assert b.has_edge(0, 1) and b.has_edge(0, 4) and b.has_edge(3, 1)
    assert b.m == g.m * 4
    assert blowup(g, 1) == g


def test_blowup_cap(monkeypatch):
    monkeypatch.setenv("QLAP_MAX_N", "20")
    assert max_order() == 20
    with pytest.raises(SizeError):
        blowup(complete_graph(7), 3)
    monkeypatch.setenv("QLAP_MAX_N", "5000")
    assert max_order() == 1000


def test_blowup_preserves_clique_number():
    for g in (cycle_graph(5), turan_graph(7, 3), petersen_graph()):
        assert clique_number(blowup(g, 3)) == clique_number(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_clique_number_matches_networkx(g):
    expected = max((len(c) for c in nx.find_cliques(to_nx(g))), default=1)
    assert clique_number(g) == expected
    k = clique_number(g)
    assert not is_k_free(g, k) and is_k_free(g, k + 1)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_structure_matches_networkx(g):
    h = to_nx(g)
    assert is_connected(g) == nx.is_connected(h)
    assert sorted(map(sorted, components(g))) == sorted(sorted(c) for c in nx.connected_components(h))
    assert is_bipartite(g) == nx.is_bipartite(h)
    assert count_triangles(g) == sum(nx.triangles(h).values()) // 3
    assert complement(complement(g)) == g
    assert complement(g).m + g.m == g.n * (g.n - 1) // 2


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_creates_clique_sees_cliques_through_new_edge(g):
    u, v = 0, g.n - 1
    if g.has_edge(u, v):
        return
    h = to_nx(g.toggle(u, v))
    through = max((len(c) for c in nx.find_cliques(h) if u in c and v in c), default=0)
    for k in (3, 4):
        assert creates_clique(g, u, v, k) == (through >= k)


def test_colourability():
    assert is_colorable(cycle_graph(5), 3) and not is_colorable(cycle_graph(5), 2)
    assert not is_colorable(complete_graph(4), 3)
    assert is_colorable(petersen_graph(), 3)


def test_bipartite_component():
    g = disjoint_union(complete_graph(3), path_graph(2))
    assert has_bipartite_component(g)
    assert not has_bipartite_component(complete_graph(3))
    assert has_bipartite_component(add_isolated(complete_graph(3), 1))


def test_induced_subgraph():
    g = induced_subgraph(petersen_graph(), [0, 1, 2, 3, 4])
    assert g == cycle_graph(5)


def test_petersen_is_srg():
    assert srg_parameters(petersen_graph()) == (10, 3, 0, 1)
    assert srg_parameters(path_graph(3)) is None
    assert isomorphic(petersen_graph(), make_graph(10, to_nx(petersen_graph()).edges()))
    assert nx.is_isomorphic(to_nx(petersen_graph()), nx.petersen_graph())


def test_graph_labels():
    assert GraphLabel("cycle", 6).build() == cycle_graph(6)
    assert GraphLabel("turan", 7, 3).build() == turan_graph(7, 3)
    assert GraphLabel("empty", 3).build() == empty_graph(3)
    with pytest.raises(ParameterError):
        GraphLabel("wheel", 5).build()
