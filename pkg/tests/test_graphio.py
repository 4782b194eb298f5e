import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, random_graph
from qlap.errors import GraphParseError
from qlap.graph import complete_graph, cycle_graph, empty_graph, petersen_graph
from qlap.graphio import from_edge_list, from_graph6, read_graph6_file, read_graph_arg, to_edge_list, to_graph6


def nx_graph6(g) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def test_known_strings():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(cycle_graph(5)) == "Dhc"
    assert to_graph6(petersen_graph()) == nx_graph6(petersen_graph())
    assert from_graph6(">>graph6<<Bw") == complete_graph(3)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=12))
def test_graph6_matches_networkx_and_roundtrips(g):
    s = to_graph6(g)
    assert s == nx_graph6(g)
    assert from_graph6(s) == g


def test_long_order_prefix(rng):
    g = random_graph(rng, 70, 0.1)
    s = to_graph6(g)
    assert s[0] == "~"
    assert s == nx_graph6(g)
    assert from_graph6(s) == g


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10))
def test_edge_list_roundtrip(g):
    assert from_edge_list(to_edge_list(g)) == g


def test_edge_list_comments_and_blank_lines():
    text = "# triangle\n3 3\n0 1\n\n1 2\n2 0\n"
    assert from_edge_list(text) == complete_graph(3)


@pytest.mark.parametrize("text, where", [
    ("D!c", "character 1"),
    ("", "character 0"),
    ("Dh", "character"),
])
def test_graph6_errors_carry_position(text, where):
    with pytest.raises(GraphParseError) as info:
        from_graph6(text)
    assert where in str(info.value)


@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n", "line 1"),
    ("3 1\n0 x\n", "line 2"),
    ("3 1\n0 0\n", "line 2"),
    ("3 1\n0 5\n", "line 2"),
])
def test_edge_list_errors_carry_line(text, line):
    with pytest.raises(GraphParseError) as info:
        from_edge_list(text)
    assert line in str(info.value)


def test_read_graph_arg(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(to_edge_list(petersen_graph()))
    assert read_graph_arg(str(p)) == petersen_graph()
    q = tmp_path / "g.g6"
    q.write_text("Dhc\nBw\n")
    assert read_graph_arg(str(q)) == cycle_graph(5)
    assert read_graph6_file(q) == [cycle_graph(5), complete_graph(3)]
    assert read_graph_arg("@") == empty_graph(1)
