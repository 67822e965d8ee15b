import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twl.errors import InputError
from twl.generate import CertifiedInstance, gen_certified
from twl.graph import (Graph, VertexOrder, adjacency_matrix, complete_graph, format_graph, format_order,
                       gen_matching, parse_graph, parse_order, parse_vertex_set, path_graph)
from twl.trigraph import exact_twinwidth, order_from_sequence, verify_sequence


def test_parse_examples():
    assert parse_graph("2 1\n0 1") == Graph(2, frozenset({(0, 1)}))
    g = parse_graph("3 0")
    assert g.n == 3 and g.m == 0


@pytest.mark.parametrize("text, fragment", [
    ("2 1\n0 0", "line 2: self-loop"),
    ("2 1\n0 2", "line 2: vertex id out of range"),
    ("3 2\n0 1\n1 0", "line 3: duplicate edge"),
    ("3 1\n0 x", "line 2: expected 'u v'"),
    ("3 2\n0 1", "announces 2 edges"),
    ("", "empty"),
    ("a b", "line 1"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(InputError, match=fragment):
        parse_graph(text)


def test_parse_skips_comments():
    g = parse_graph("# header comment\n3 1\n\n# edge\n2 0\n")
    assert g.edges == {(0, 2)}


edge_lists = st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                        .filter(lambda e: e[0] != e[1]).map(lambda e: (min(e), max(e))))))


@given(edge_lists)
def test_round_trip(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


@given(edge_lists, st.randoms(use_true_random=False))
def test_adjacency_symmetric_zero_diagonal(data, r):
    n, edges = data
    g = Graph.from_edges(n, edges)
    perm = list(range(n))
    r.shuffle(perm)
    order = VertexOrder(tuple(perm))
    M = adjacency_matrix(g, order).bits
    assert (M == M.T).all() and not M.diagonal().any()
    for i in range(n):
        for j in range(n):
            assert M[i, j] == ((min(perm[i], perm[j]), max(perm[i], perm[j])) in g.edges)


def test_adjacency_examples():
    assert not adjacency_matrix(Graph(4, frozenset()), VertexOrder((2, 0, 3, 1))).bits.any()
    assert adjacency_matrix(complete_graph(3), VertexOrder.identity(3)).tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    expected = [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]]
    assert adjacency_matrix(path_graph(4), VertexOrder.identity(4)).tolist() == expected
    with pytest.raises(InputError):
        adjacency_matrix(path_graph(4), VertexOrder.identity(3))


def test_order_window_and_successor():
    o = VertexOrder((3, 1, 0, 2))
    assert o.successor(3) == 1 and o.successor(2) is None
    assert o.window(1, 1) == [1, 0]
    assert o.window(0, 5) == [0, 2]
    for v in range(4):
        for k in range(5):
            assert len(o.window(v, k)) == min(k + 1, 4 - o.position[v])
    with pytest.raises(InputError):
        VertexOrder((0, 0, 1))


def test_order_and_set_files():
    o = VertexOrder((2, 0, 1))
    assert parse_order(format_order(o), 3) == o
    with pytest.raises(InputError):
        parse_order("0 1", 3)
    assert parse_vertex_set("3, 1,3") == [1, 3]
    with pytest.raises(InputError):
        parse_vertex_set("1,9", 4)


def test_from_edges_rejects_bad_input():
    with pytest.raises(InputError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 5)])


def test_matching():
    g, A = gen_matching(2)
    assert g.n == 4 and g.edges == {(0, 1), (2, 3)} and A == [1, 3]
    g1, A1 = gen_matching(1)
    assert g1.m == 1 and len(A1) == 1
    with pytest.raises(InputError):
        gen_matching(0)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_generator_certificate(t, seed):
    inst = gen_certified(t, 40, seed)
    assert inst.graph.n == 40
    assert verify_sequence(inst.graph, inst.sequence, t).ok
    assert inst.order == order_from_sequence(inst.graph, inst.sequence)
    again = CertifiedInstance.from_json(inst.to_json())
    assert again == inst
    assert inst == gen_certified(t, 40, seed)


@pytest.mark.parametrize("t", [0, 1, 2])
@pytest.mark.parametrize("seed", range(6))
def test_generator_small_exact(t, seed):
    inst = gen_certified(t, 8, seed)
    assert exact_twinwidth(inst.graph).tww <= t


def test_generator_single_vertex():
    inst = gen_certified(3, 1, 0)
    assert inst.graph.n == 1 and len(inst.sequence) == 0


def test_generator_bad_args():
    with pytest.raises(InputError):
        gen_certified(-1, 5, 0)
    with pytest.raises(InputError):
        gen_certified(1, 0, 0)


def test_instance_json_rejects_bad_sequence():
    inst = gen_certified(1, 10, 0)
    data = inst.to_json()
    data["t"] = 0
    g = inst.graph
    if verify_sequence(g, inst.sequence, 0).ok:
        pytest.skip("instance happens to be 0-collapsible along its sequence")
    with pytest.raises(InputError):
        CertifiedInstance.from_json(data)
    with pytest.raises(InputError):
        CertifiedInstance.from_json({"n": 2})


def test_graph_arrays_are_readonly():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = 0
    assert g.masks == (0b110, 0b101, 0b011)
    assert isinstance(g.adj, np.ndarray)
