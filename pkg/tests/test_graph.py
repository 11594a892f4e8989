import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import valid_graphs
from qwalk.graph import (
    Graph,
    GraphError,
    ParseError,
    adjacency_matrix,
    cycle_graph,
    degree_histogram,
    degrees,
    format_edge_list,
    parse_edge_list,
    path_graph,
    single_edge,
    star_graph,
    transition_matrix,
    validate,
)


class TestParse:
    def test_two_lines(self):
        g = parse_edge_list("0 1\n1 2")
        assert g == Graph(3, frozenset({(0, 1), (1, 2)}))

    def test_reverse_duplicate_collapses(self):
        g = parse_edge_list("0 1\n1 0")
        assert g.node_count == 2
        assert g.edges == frozenset({(0, 1)})

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_edge_list("0 0")

    def test_comments_blank_lines_and_trailing_newline(self):
        g = parse_edge_list("# header\n\n0 1\n   \n# x\n1 2\n")
        assert g == path_graph(3)

    @pytest.mark.parametrize("text, lineno", [
        ("0 1\n1\n", 2),
        ("0 1\n1 2 0.5\n", 2),
        ("a b\n", 1),
        ("0 1\n2 -3\n", 2),
        ("0 1.5\n", 1),
    ])
    def test_malformed_reports_line(self, text, lineno):
        with pytest.raises(ParseError) as exc:
            parse_edge_list(text)
        assert exc.value.lineno == lineno
        assert f"line {lineno}" in str(exc.value)

    @pytest.mark.parametrize("text", ["", "\n\n", "# only a comment\n"])
    def test_empty(self, text):
        with pytest.raises(ParseError, match="empty"):
            parse_edge_list(text)

    def test_node_count_from_max_id(self):
        g = parse_edge_list("0 5\n")
        assert g.node_count == 6

    @settings(max_examples=50, deadline=None)
    @given(valid_graphs(), st.randoms())
    def test_reorder_and_swap_invariant(self, g, rnd):
        lines = [f"{u} {v}" if rnd.random() < 0.5 else f"{v} {u}" for u, v in g.sorted_edges()]
        rnd.shuffle(lines)
        assert parse_edge_list("\n".join(lines)) == parse_edge_list(format_edge_list(g))


class TestValidate:
    def test_isolated_node(self):
        report = validate(Graph(3, frozenset({(0, 1)})))
        assert report.isolated_nodes == (2,)
        assert not report.ok

    def test_single_edge_clean(self):
        assert validate(Graph(2, frozenset({(0, 1)}))).ok

    def test_disconnected_is_valid(self):
        assert validate(Graph(4, frozenset({(0, 1), (2, 3)}))).ok

    def test_out_of_range(self):
        report = validate(Graph(2, frozenset({(0, 1), (1, 4)})))
        assert report.out_of_range == ((1, 4),)

    def test_matrices_refuse_invalid(self):
        with pytest.raises(GraphError, match="node 2 is isolated"):
            adjacency_matrix(Graph(3, frozenset({(0, 1)})))

    def test_constructor_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(2, frozenset({(1, 1)}))


class TestMatrices:
    def test_path_adjacency(self):
        np.testing.assert_array_equal(adjacency_matrix(path_graph(3)), [[0, 1, 0], [1, 0, 1], [0, 1, 0]])

    def test_single_edge_adjacency(self):
        np.testing.assert_array_equal(adjacency_matrix(single_edge()), [[0, 1], [1, 0]])

    def test_c4_adjacency(self):
        # edges 0-1, 1-2, 2-3, 3-0 by hand
        expected = [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]
        np.testing.assert_array_equal(adjacency_matrix(cycle_graph(4)), expected)

    @pytest.mark.parametrize("g, expected", [
        (path_graph(3), [1, 2, 1]),
        (star_graph(3), [3, 1, 1, 1]),
        (cycle_graph(4), [2, 2, 2, 2]),
    ])
    def test_degrees(self, g, expected):
        np.testing.assert_array_equal(degrees(adjacency_matrix(g)), expected)

    def test_path_transition(self):
        a = adjacency_matrix(path_graph(3))
        np.testing.assert_array_equal(transition_matrix(a, degrees(a)), [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]])

    def test_single_edge_transition(self):
        a = adjacency_matrix(single_edge())
        np.testing.assert_array_equal(transition_matrix(a, degrees(a)), [[0, 1], [1, 0]])

    def test_star_transition(self):
        a = adjacency_matrix(star_graph(3))
        p = transition_matrix(a, degrees(a))
        np.testing.assert_allclose(p[0], [0, 1 / 3, 1 / 3, 1 / 3], rtol=0, atol=1e-15)
        for leaf in (1, 2, 3):
            np.testing.assert_array_equal(p[leaf], [1, 0, 0, 0])

    def test_zero_degree_is_rejected(self):
        a = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
        with pytest.raises(GraphError, match="node 2"):
            transition_matrix(a, degrees(a))

    def test_degree_histogram(self):
        assert degree_histogram(star_graph(3)) == {1: 3, 3: 1}


@settings(max_examples=60, deadline=None)
@given(valid_graphs(max_nodes=14))
def test_matrix_invariants(g):
    a = adjacency_matrix(g)
    assert np.array_equal(a, a.T)
    assert not a.diagonal().any()
    counted = [0] * g.node_count
    for u, v in g.edges:
        counted[u] += 1
        counted[v] += 1
    np.testing.assert_array_equal(degrees(a), counted)
    p = transition_matrix(a, degrees(a))
    assert np.abs(p.sum(axis=1) - 1).max() <= 1e-12
    np.testing.assert_array_equal(p > 0, a == 1)


def test_relabel_roundtrip():
    g = star_graph(4)
    perm = list(range(5))
    random.Random(3).shuffle(perm)
    inv = [perm.index(k) for k in range(5)]
    assert g.relabel(perm).relabel(inv) == g
