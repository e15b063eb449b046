from __future__ import annotations

from math import comb

import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_supergraph

from seplearn.errors import BudgetExceeded, InstanceTooLarge
from seplearn.generators import clique, edgeless, path, permute_graph, wheel6
from seplearn.graph import Graph, kappa_max
from seplearn.naive import LearnerReport, learn_naive, supergraph_at_level, verify_size_lower_bound
from seplearn.oracle import Budget, make_adversary_oracle, make_exact_oracle

P3 = path(3)


def asked_through_level(n: int, k: int) -> int:
    """Distinct tests asked by levels 0..k: C(n, s) sets times C(n - s, 2) pairs."""
    return sum(comb(n, s) * comb(n - s, 2) for s in range(k + 1))


class TestSupergraph:
    def test_level_zero_of_path_is_triangle(self):
        assert supergraph_at_level(make_exact_oracle(P3), 3, 0) == clique(3)

    def test_level_one_of_path_is_path(self):
        assert supergraph_at_level(make_exact_oracle(P3), 3, 1) == P3

    def test_edgeless(self):
        assert supergraph_at_level(make_exact_oracle(edgeless(3)), 3, 0) == edgeless(3)

    @given(graphs(min_n=1, max_n=6), st.integers(0, 3))
    def test_matches_definition(self, g, k):
        learned = supergraph_at_level(make_exact_oracle(g), g.n, k)
        assert set(learned.edge_list()) == brute_supergraph(g.n, g.edge_list(), k)

    @given(graphs(min_n=1, max_n=7))
    def test_chain_of_supergraphs(self, g):
        levels = [supergraph_at_level(make_exact_oracle(g), g.n, k) for k in range(g.n)]
        assert all(g.is_subgraph_of(h) for h in levels)
        assert all(b.is_subgraph_of(a) for a, b in zip(levels, levels[1:]))


class TestLearnNaive:
    def test_path(self):
        rep = learn_naive(make_exact_oracle(P3), 3)
        assert rep.result_graph == P3 and rep.stopping_level == 1

    def test_wheel(self):
        rep = learn_naive(make_exact_oracle(wheel6()), 6)
        assert rep.result_graph == wheel6()
        assert rep.stopping_level == 3
        assert rep.stats.max_size_seen == 3
        assert rep.stats.total_tests == asked_through_level(6, 3) == 225

    def test_edgeless(self):
        rep = learn_naive(make_exact_oracle(edgeless(3)), 3)
        assert rep.result_graph == edgeless(3) and rep.stopping_level == 0

    def test_single_vertex(self):
        rep = learn_naive(make_exact_oracle(Graph(1)), 1)
        assert rep.result_graph == Graph(1) and rep.stats.total_tests == 0

    @given(graphs(min_n=2, max_n=7))
    def test_exact_recovery_with_kappa_sized_tests(self, g):
        rep = learn_naive(make_exact_oracle(g), g.n)
        kappa = kappa_max(g)
        assert rep.result_graph == g
        assert rep.stopping_level == kappa
        assert rep.stats.total_tests == asked_through_level(g.n, kappa)
        assert rep.stats.total_tests <= g.n ** (kappa + 2)
        if g.n >= kappa + 2:
            assert rep.stats.max_size_seen == kappa

    @given(graphs(min_n=2, max_n=7), st.integers(0, 10_000))
    def test_isomorphism_invariance(self, g, seed):
        h, perm = permute_graph(g, seed)
        rg = learn_naive(make_exact_oracle(g), g.n)
        rh = learn_naive(make_exact_oracle(h), h.n)
        assert rh.result_graph == Graph(g.n, [(perm[u], perm[v]) for u, v in rg.result_graph.edge_list()])
        assert rh.stats.per_size_counts == rg.stats.per_size_counts

    def test_budget_exhaustion_carries_partial_state(self):
        with pytest.raises(BudgetExceeded) as info:
            learn_naive(make_exact_oracle(wheel6(), Budget(max_test_count=100)), 6)
        partial = info.value.partial
        assert isinstance(partial, LearnerReport)
        assert partial.stats.total_tests == 100
        # Levels 0 (15 tests) and 1 (60 tests) completed; level 2 was cut short.
        assert partial.stopping_level == 1

    def test_adversary_stops_only_at_the_budget(self):
        with pytest.raises(BudgetExceeded) as info:
            learn_naive(make_adversary_oracle(6, Budget(max_test_size=2)), 6)
        assert info.value.kind == "size"
        assert info.value.partial.result_graph == clique(6)

    def test_adversary_without_budget_ends_at_complete_graph(self):
        rep = learn_naive(make_adversary_oracle(5), 5)
        assert rep.result_graph == clique(5) and rep.stopping_level == 3


class TestSizeLowerBound:
    @pytest.mark.parametrize("g", [path(3), wheel6(), clique(2), clique(4), Graph(5, [(0, 1), (2, 3)])])
    def test_examples(self, g):
        assert verify_size_lower_bound(g)

    def test_cap(self):
        with pytest.raises(InstanceTooLarge):
            verify_size_lower_bound(path(13))

    @given(graphs(min_n=2, max_n=7))
    def test_holds_on_random_graphs(self, g):
        assert verify_size_lower_bound(g)
