from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from graphinverse.errors import DuplicateEdge, HasLoops, IndexOutOfRange, NotSigned, ParseError, TooLarge, ZeroWeight
from graphinverse.families import corona, corona_swap
from graphinverse.graph import (
    WeightedGraph,
    adjacency_matrix,
    delete_vertex,
    is_balanced,
    is_isomorphic,
    is_isomorphism,
    parse_graph,
    parse_weight,
    serialize_graph,
    switch_cut,
)
from graphinverse.inverse import oracle_inverse

from helpers import C3, K2, P4, cycle, path, signed_graphs, star, weighted_graphs


class TestParse:
    def test_k2(self):
        g = parse_graph("2 1\n0 1 1")
        assert g == K2

    def test_loop(self):
        g = parse_graph("1 1\n0 0 5")
        assert g.edges == {(0, 0): 5}

    def test_triangle(self):
        assert parse_graph("3 3\n0 1 1\n1 2 1\n0 2 1") == C3

    def test_comments_and_rationals(self):
        g = parse_graph("# a comment\n3 2\n\n0 1 -2/3\n# inside\n2 1 0.25\n")
        assert g.edges == {(0, 1): Fraction(-2, 3), (1, 2): Fraction(1, 4)}

    @pytest.mark.parametrize(
        "text, exc",
        [
            ("2 2\n0 1 1\n1 0 2", DuplicateEdge),
            ("2 1\n0 1 0", ZeroWeight),
            ("2 1\n0 2 1", IndexOutOfRange),
            ("2 2\n0 1 1", ParseError),
            ("", ParseError),
            ("x y", ParseError),
            ("2 1\n0 1", ParseError),
            ("2 1\n0 1 1e3", ParseError),
        ],
    )
    def test_rejects(self, text, exc):
        with pytest.raises(exc):
            parse_graph(text)

    def test_weight_forms(self):
        assert parse_weight("-3/6") == Fraction(-1, 2)
        assert parse_weight("1.5") == Fraction(3, 2)

    @given(weighted_graphs(max_n=7))
    def test_round_trip(self, g):
        assert parse_graph(serialize_graph(g, comments=["x"])) == g

    def test_serializer_sorts_edges(self):
        g = WeightedGraph.from_edges(3, [(2, 1, 3), (1, 0, Fraction(1, 2))])
        assert serialize_graph(g) == "3 2\n0 1 1/2\n1 2 3\n"


class TestMatrices:
    def test_examples(self):
        assert adjacency_matrix(K2) == [[0, 1], [1, 0]]
        assert adjacency_matrix(parse_graph("1 1\n0 0 5")) == [[5]]
        a = adjacency_matrix(P4)
        assert all(a[i][j] == (1 if abs(i - j) == 1 else 0) for i in range(4) for j in range(4))


class TestDeleteVertex:
    def test_star_center(self):
        g = delete_vertex(star(4), 0)
        assert g.n == 4 and g.edge_count == 0

    def test_triangle(self):
        assert delete_vertex(C3, 1) == K2

    def test_path_end(self):
        assert delete_vertex(P4, 0) == path(3)

    @given(weighted_graphs(), st.data())
    def test_edge_count(self, g, data):
        v = data.draw(st.integers(0, g.n - 1))
        h = delete_vertex(g, v)
        assert h.n == g.n - 1
        assert h.edge_count == g.edge_count - g.degree(v)


class TestSwitching:
    def test_examples(self):
        assert switch_cut(C3, []) == C3
        assert switch_cut(C3, [0, 1, 2]) == C3
        assert switch_cut(K2, [0]).edges == {(0, 1): -1}

    def test_needs_signs(self):
        with pytest.raises(NotSigned):
            switch_cut(parse_graph("2 1\n0 1 2"), [0])

    @given(signed_graphs(), st.data())
    def test_involution_and_balance(self, g, data):
        side = data.draw(st.sets(st.integers(0, g.n - 1)))
        once = switch_cut(g, side)
        assert switch_cut(once, side) == g
        assert is_balanced(once) == is_balanced(g)

    def test_balance_examples(self):
        assert is_balanced(C3)
        assert not is_balanced(C3.with_weights({(0, 1): -1}))
        tree = WeightedGraph.from_edges(5, [(0, 1, -1), (1, 2, 1), (1, 3, -1), (3, 4, -1)])
        assert is_balanced(tree)

    def test_balance_rejects_loops(self):
        with pytest.raises(HasLoops):
            is_balanced(parse_graph("1 1\n0 0 1"))


class TestIsomorphism:
    def test_relabelled_path(self):
        q = WeightedGraph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
        phi = is_isomorphic(P4, q)
        assert phi is not None and is_isomorphism(P4, q, phi)

    def test_path_vs_star(self):
        assert is_isomorphic(P4, star(3)) is None

    def test_corona_inverse_swap(self):
        g = corona(C3)
        inv = oracle_inverse(g)
        phi = is_isomorphic(g, inv)
        assert phi is not None and is_isomorphism(g, inv, phi)
        assert is_isomorphism(g, inv, corona_swap(g))

    def test_cap(self):
        with pytest.raises(TooLarge):
            is_isomorphic(cycle(17), cycle(17))
