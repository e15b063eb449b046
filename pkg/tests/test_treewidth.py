from __future__ import annotations

import pytest
from conftest import A, B, C, graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_treewidth

from seplearn.errors import InstanceTooLarge, InvalidDecomposition, ParseError
from seplearn.generators import BandParams, band_graph, clique, cycle, path, permute_graph, star, wheel6
from seplearn.graph import Graph
from seplearn.treewidth import (
    TreeDecomposition,
    Violation,
    compact,
    contraction_lower_bound,
    decomposition_from_order,
    exact_treewidth,
    greedy_order,
    is_lca_closed,
    order_width,
    root_decomposition,
    validate_decomposition,
    width_at_most,
)

P3 = path(3)
P3_TD = TreeDecomposition(((A, B), (B, C)), ((0, 1),))


class TestExactTreewidth:
    def test_k4(self):
        assert exact_treewidth(clique(4))[0] == 3

    def test_five_cycle(self):
        assert exact_treewidth(cycle(5))[0] == 2

    @pytest.mark.parametrize("g", [path(2), path(6), star(7), Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])])
    def test_trees(self, g):
        assert exact_treewidth(g)[0] == 1

    def test_band(self):
        tw, td = exact_treewidth(band_graph(BandParams(3, 3, 3)), max_vertices=27)
        assert tw == 3 and td.width == 3

    def test_wheel(self):
        assert exact_treewidth(wheel6())[0] == 3

    def test_empty_and_edgeless(self):
        assert exact_treewidth(Graph(0))[0] == -1
        assert exact_treewidth(Graph(4))[0] == 0

    def test_cap(self):
        with pytest.raises(InstanceTooLarge):
            exact_treewidth(path(31))
        with pytest.raises(InstanceTooLarge):
            width_at_most(path(8), 1, max_vertices=7)

    @given(graphs(max_n=8))
    def test_matches_subset_dynamic_program(self, g):
        tw, td = exact_treewidth(g)
        assert tw == brute_treewidth(g.n, g.edge_list())
        assert td.width == tw
        assert validate_decomposition(g, td) == []

    @given(graphs(min_n=1, max_n=8), st.integers(0, 6))
    def test_decision_version(self, g, k):
        tw = brute_treewidth(g.n, g.edge_list())
        td = width_at_most(g, k)
        assert (td is not None) == (tw <= k)
        if td is not None:
            assert td.width <= k and validate_decomposition(g, td) == []

    @given(graphs(min_n=1, max_n=8), st.integers(0, 1000))
    def test_isomorphism_invariance(self, g, seed):
        assert exact_treewidth(permute_graph(g, seed)[0])[0] == exact_treewidth(g)[0]

    @given(graphs(min_n=1, max_n=8))
    def test_bounds_sandwich(self, g):
        tw = exact_treewidth(g)[0]
        assert contraction_lower_bound(g.adjacency, g.full_mask) <= tw <= order_width(g, greedy_order(g))

    @given(graphs(min_n=1, max_n=8))
    def test_any_order_gives_a_valid_decomposition(self, g):
        order = list(range(g.n))
        td = decomposition_from_order(g, order)
        assert validate_decomposition(g, td) == []
        assert td.width == order_width(g, order)

    @given(graphs(min_n=1, max_n=8))
    def test_compaction_keeps_validity_and_drops_redundant_bags(self, g):
        order = list(range(g.n))
        td = compact(decomposition_from_order(g, order))
        assert validate_decomposition(g, td) == []
        assert td.width == order_width(g, order)
        for a, b in td.tree_edges:
            assert not set(td.bags[a]) <= set(td.bags[b])
            assert not set(td.bags[b]) <= set(td.bags[a])


class TestValidation:
    def test_path_decomposition_is_valid(self):
        assert validate_decomposition(P3, P3_TD) == []

    def test_triangle_edge_uncovered(self):
        assert validate_decomposition(clique(3), P3_TD) == [Violation("uncovered-edge", (A, C))]

    def test_disconnected_occurrence(self):
        td = TreeDecomposition(((A, B), (C,), (A, C)), ((0, 1), (1, 2)))
        found = validate_decomposition(P3, td)
        assert Violation("disconnected-occurrence", (A,)) in found
        # Edge bc sits in no bag either.
        assert Violation("uncovered-edge", (B, C)) in found

    def test_missing_and_foreign_vertices(self):
        td = TreeDecomposition(((A, B), (B, 7)), ((0, 1),))
        kinds = {v.kind for v in validate_decomposition(P3, td)}
        assert {"missing-vertex", "foreign-vertex"} <= kinds

    def test_not_a_tree(self):
        td = TreeDecomposition(((A, B), (B, C), (A, B, C)), ((0, 1), (1, 2), (0, 2)))
        assert Violation("invalid-tree", ()) in validate_decomposition(P3, td)

    def test_text_round_trip(self):
        td = exact_treewidth(wheel6())[1]
        assert TreeDecomposition.from_text(td.to_text()) == td

    @pytest.mark.parametrize(
        "text,kind",
        [
            ("b 0 1 2\n", "syntax"),
            ("td 1 1\nb 0 x\n", "syntax"),
            ("td 2 1\nb 0 0 1\n", "count"),
            ("td 1 5\nb 0 0 1\n", "width"),
            ("", "header"),
        ],
    )
    def test_text_errors(self, text, kind):
        with pytest.raises(ParseError) as info:
            TreeDecomposition.from_text(text)
        assert info.value.kind == kind


class TestRooted:
    def test_root_component_is_everything(self):
        rd = root_decomposition(P3_TD)
        assert rd.cmp(rd.root) == (A, B, C)
        assert rd.bag(rd.root) == ()

    def test_lca_of_siblings(self):
        td = TreeDecomposition(((0, 1), (0, 2), (0, 3)), ((0, 1), (0, 2)))
        rd = root_decomposition(td)
        assert rd.lca(1, 2) == 0
        assert rd.lca(1, 1) == 1
        assert rd.is_ancestor(0, 2) and not rd.is_ancestor(2, 0)
        assert rd.cmp(0) == (2, 3) and rd.cmp(1) == ()

    def test_postorder_puts_children_first(self):
        rd = root_decomposition(exact_treewidth(band_graph(BandParams(3, 3, 3)), 27)[1])
        seen = set()
        for t in rd.postorder:
            assert set(rd.children[t]) <= seen
            seen.add(t)
        assert rd.postorder[-1] == rd.root

    def test_empty_decomposition(self):
        with pytest.raises(InvalidDecomposition):
            root_decomposition(TreeDecomposition((), ()))

    def test_disconnected_decomposition(self):
        with pytest.raises(InvalidDecomposition):
            root_decomposition(TreeDecomposition(((0,), (1,)), ()))

    def test_lca_closure(self):
        td = TreeDecomposition(((0, 1), (0, 2), (0, 3)), ((0, 1), (0, 2)))
        rd = root_decomposition(td)
        assert not is_lca_closed(rd, [1, 2])
        assert is_lca_closed(rd, [0, 1, 2])
        assert is_lca_closed(rd, [])

    @given(graphs(min_n=1, max_n=8))
    def test_cmp_matches_definition(self, g):
        rd = root_decomposition(exact_treewidth(g)[1])
        for t in range(len(rd.parent)):
            below = set()
            stack = [t]
            while stack:
                x = stack.pop()
                below |= set(rd.bag(x))
                stack.extend(rd.children[x])
            assert set(rd.cmp(t)) == below - set(rd.bag(t))
