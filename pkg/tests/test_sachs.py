import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from graphinverse.errors import HasLoops, NotUnweightedSimple, TooLarge
from graphinverse.graph import WeightedGraph, adjacency_matrix, parse_graph
from graphinverse.inverse import determinant
from graphinverse.sachs import (
    SachsSubgraph,
    _residual_cycles,
    canonical_cycle,
    det_unweighted_check,
    det_via_sachs,
    enumerate_sachs,
    has_unique_sachs,
    pendant_reduce,
    perfect_matchings,
    unique_sachs_witness,
)

from helpers import C3, C4, K2, P4, PAW, cycle, path, simple_graphs, weighted_graphs

TWO_TRIANGLES_BRIDGED = WeightedGraph.from_edges(
    6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
)


def brute_force_sachs_count(g: WeightedGraph) -> int:
    """Count spanning edge subsets whose components are K2s, cycles or loops."""
    edges = list(g.edges)
    count = 0
    for k in range(len(edges) + 1):
        for subset in combinations(edges, k):
            deg = [0] * g.n
            looped = [False] * g.n
            for u, v in subset:
                if u == v:
                    looped[u] = True
                else:
                    deg[u] += 1
                    deg[v] += 1
            if any(looped[v] and deg[v] for v in range(g.n)):
                continue
            if not all(looped[v] or deg[v] in (1, 2) for v in range(g.n)):
                continue
            h = WeightedGraph(g.n, {e: 1 for e in subset if e[0] != e[1]})
            ok = True
            for comp in h.components():
                degs = {deg[v] for v in comp}
                if len(comp) == 1:
                    ok = ok and looped[comp[0]]
                elif len(comp) == 2:
                    ok = ok and degs == {1}
                else:
                    ok = ok and degs == {2}
            count += ok
    return count


class TestEnumeration:
    def test_counts(self):
        assert len(enumerate_sachs(K2)) == 1
        (s,) = enumerate_sachs(C3)
        assert s.cycles == ((0, 1, 2),) and not s.matching
        subs = enumerate_sachs(C4)
        assert len(subs) == 3
        assert sum(s.is_perfect_matching for s in subs) == 2

    def test_canonical_cycle(self):
        assert canonical_cycle((2, 0, 3, 1)) == (0, 2, 1, 3)
        assert canonical_cycle((3, 1, 0)) == (0, 1, 3)

    @settings(max_examples=60)
    @given(weighted_graphs(max_n=5))
    def test_against_brute_force(self, g):
        subs = enumerate_sachs(g)
        for s in subs:
            s.validate(g)
        assert len(set(subs)) == len(subs)
        assert len(subs) == brute_force_sachs_count(g)

    def test_cap(self):
        with pytest.raises(TooLarge):
            enumerate_sachs(path(25))


class TestDeterminant:
    def test_examples(self):
        assert det_via_sachs(K2) == -1
        assert det_via_sachs(parse_graph("1 1\n0 0 5")) == 5
        assert det_via_sachs(C3) == 2
        assert det_via_sachs(C4) == 0
        assert det_via_sachs(WeightedGraph(0)) == 1

    def test_unweighted_form(self):
        assert det_unweighted_check(P4) == 1
        assert det_unweighted_check(C4) == 0
        assert det_unweighted_check(C3) == 2
        with pytest.raises(NotUnweightedSimple):
            det_unweighted_check(parse_graph("2 1\n0 1 2"))
        with pytest.raises(NotUnweightedSimple):
            det_unweighted_check(parse_graph("1 1\n0 0 1"))

    @given(weighted_graphs(max_n=7))
    def test_matches_elimination(self, g):
        assert det_via_sachs(g) == determinant(adjacency_matrix(g))

    @settings(max_examples=50)
    @given(weighted_graphs(max_n=6))
    def test_matches_term_sum(self, g):
        assert det_via_sachs(g) == sum((s.term(g) for s in enumerate_sachs(g)), 0)


class TestPerfectMatchings:
    def test_examples(self):
        assert perfect_matchings(K2) == [((0, 1),)]
        assert perfect_matchings(C4) == [((0, 1), (2, 3)), ((0, 3), (1, 2))]
        assert perfect_matchings(C3) == []

    def test_limit(self):
        assert len(perfect_matchings(cycle(30), limit=1)) == 1
        with pytest.raises(TooLarge):
            perfect_matchings(cycle(30))

    @settings(max_examples=60)
    @given(simple_graphs(max_n=7))
    def test_count_matches_sachs(self, g):
        pms = perfect_matchings(g)
        assert len(pms) == sum(s.is_perfect_matching for s in enumerate_sachs(g))


class TestPendantReduction:
    def test_path(self):
        t = pendant_reduce(P4)
        assert t.removed == ((0, 1), (2, 3))
        assert t.residual.n == 0

    def test_paw(self):
        t = pendant_reduce(PAW)
        assert t.removed == ((3, 0), (1, 2))
        assert t.residual.n == 0
        assert len(enumerate_sachs(PAW)) == 1

    def test_five_cycle(self):
        t = pendant_reduce(cycle(5))
        assert t.removed == () and t.residual == cycle(5)

    def test_rejects_loops(self):
        with pytest.raises(HasLoops):
            pendant_reduce(parse_graph("2 2\n0 1 1\n0 0 1"))

    def test_witnesses(self):
        assert unique_sachs_witness(P4) == SachsSubgraph(matching=((0, 1), (2, 3)))
        assert unique_sachs_witness(C3) == SachsSubgraph(cycles=((0, 1, 2),))
        assert not has_unique_sachs(C4)
        assert not has_unique_sachs(TWO_TRIANGLES_BRIDGED)
        assert len(enumerate_sachs(TWO_TRIANGLES_BRIDGED)) != 1

    def test_odd_cycles_with_pendant_trees(self):
        # triangle 0-1-2, path 2-3-4 hanging off it, a separate 5-cycle
        g = WeightedGraph.from_edges(
            10, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9), (5, 9)]
        )
        w = unique_sachs_witness(g)
        assert w is not None
        assert w.cycles == ((0, 1, 2), (5, 6, 7, 8, 9))
        assert w.matching == ((3, 4),)
        assert enumerate_sachs(g) == [w]

    @settings(max_examples=150)
    @given(simple_graphs(max_n=8))
    def test_decision_matches_enumeration(self, g):
        subs = enumerate_sachs(g)
        w = unique_sachs_witness(g)
        assert (w is not None) == (len(subs) == 1)
        if w is not None:
            assert subs == [w]

    @given(simple_graphs(max_n=8), st.integers(0, 2**32))
    def test_order_independent(self, g, seed):
        fixed = pendant_reduce(g)
        shuffled = pendant_reduce(g, random.Random(seed))
        a, b = _residual_cycles(fixed), _residual_cycles(shuffled)
        assert (a is None) == (b is None)
        if a is not None:
            # the unique Sachs subgraph pins down which edges go
            assert a == b
            assert sorted(map(sorted, fixed.removed)) == sorted(map(sorted, shuffled.removed))

    def test_star_removal_depends_on_order(self):
        # two leaves share a partner; either one may go first, both end "not unique"
        g = path(3)
        seen = {pendant_reduce(g, random.Random(k)).removed for k in range(20)}
        assert len(seen) == 2
        assert not has_unique_sachs(g)
