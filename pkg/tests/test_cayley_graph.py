"""Unit tests for the even derangement graph and its tensor powers."""

from __future__ import annotations

import unittest

import networkx as nx
import numpy as np
import pytest

from even_derangement.cayley_graph import (
    CayleyGraphSpec,
    ExplicitGraph,
    GroupVertex,
    build_even_derangement_graph,
    common_neighbor_check,
    complete_graph,
    connected_components,
    connection_subgroup_order,
    cycle_graph,
    diameter_vertex_transitive,
    disjoint_union,
    edge_list_text,
    graph_summary,
    is_bipartite,
    is_cycle_in,
    materialize,
    product_decomposition_check,
    tensor_power_oracle,
    tensor_product,
    translation_orbits,
    triangle_witness,
)
from even_derangement.exceptions import (
    DisconnectedGraphError,
    GuardError,
    IndexRangeError,
    PreconditionError,
    ResourceCapError,
)
from even_derangement.perm_core import Permutation, alternating_group, compose, inverse


class TestBaseGraph(unittest.TestCase):
    """Test cases for AΓ_n."""

    def setUp(self) -> None:
        """Set up AΓ_5."""
        self.graph = build_even_derangement_graph(5)

    def test_regular_of_degree_e_n(self) -> None:
        """Test 60 vertices of degree 24."""
        assert self.graph.vertex_count == 60
        assert self.graph.degree == 24
        assert self.graph.edge_count == 60 * 24 // 2

    def test_edge_rule(self) -> None:
        """Test u ~ v exactly when v u^-1 is a derangement."""
        group = alternating_group(5)
        for u, v in ((0, 7), (3, 41), (12, 59), (20, 21)):
            quotient = compose(group.element(v), inverse(group.element(u)))
            fixed = any(i == image for i, image in enumerate(quotient.table))
            assert self.graph.adjacent(u, v) is (not fixed)

    def test_connected_with_diameter_two(self) -> None:
        """Test AΓ_5 is connected with diameter 2."""
        assert len(connected_components(self.graph)) == 1
        assert diameter_vertex_transitive(self.graph) == 2

    def test_odd_cycle_witness(self) -> None:
        """Test the bipartiteness check returns a real odd cycle."""
        verdict = is_bipartite(self.graph)
        assert not verdict.bipartite
        assert len(verdict.odd_cycle) % 2 == 1
        assert is_cycle_in(self.graph, verdict.odd_cycle)

    def test_common_neighbors(self) -> None:
        """Test every pair of vertices has a common neighbor."""
        assert common_neighbor_check(self.graph).ok

    def test_products_cover_group(self) -> None:
        """Test every element is a product of two even derangements."""
        assert product_decomposition_check(5)

    def test_connection_subgroup(self) -> None:
        """Test E_5 generates A_5."""
        assert connection_subgroup_order(5) == 60

    def test_matches_networkx(self) -> None:
        """Test the graph against a networkx build from the same edge rule."""
        group = alternating_group(5)
        reference = nx.Graph()
        reference.add_nodes_from(range(group.order))
        for u in range(group.order):
            for v in range(u + 1, group.order):
                quotient = compose(group.element(v), inverse(group.element(u)))
                if all(i != image for i, image in enumerate(quotient.table)):
                    reference.add_edge(u, v)
        ours = nx.from_numpy_array(self.graph.matrix.astype(int))
        assert {frozenset(e) for e in ours.edges()} == {frozenset(e) for e in reference.edges()}
        assert nx.diameter(reference) == 2

    def test_guard(self) -> None:
        """Test n outside the buildable range raises."""
        with pytest.raises(GuardError):
            build_even_derangement_graph(8)


class TestSmallDegrees(unittest.TestCase):
    """Test cases for n = 3 and n = 4."""

    def test_n3_is_a_triangle(self) -> None:
        """Test AΓ_3 is K3."""
        graph = build_even_derangement_graph(3)
        assert np.array_equal(graph.matrix, complete_graph(3).matrix)

    def test_n4_splits_into_three_k4(self) -> None:
        """Test AΓ_4 is three disjoint copies of K4."""
        graph = build_even_derangement_graph(4)
        components = connected_components(graph)
        assert [c.size for c in components] == [4, 4, 4]
        assert all(graph.induced(c).edge_count == 6 for c in components)
        assert len(translation_orbits(4)) == 3
        assert connection_subgroup_order(4) == 4

    def test_n4_diameter_is_undefined(self) -> None:
        """Test the diameter of a disconnected graph raises."""
        with pytest.raises(DisconnectedGraphError):
            diameter_vertex_transitive(build_even_derangement_graph(4))


class TestTensorPower(unittest.TestCase):
    """Test cases for the adjacency oracle of AΓ_5^2."""

    def setUp(self) -> None:
        """Set up the oracle and its materialization."""
        self.oracle = tensor_power_oracle(5, 2)
        self.explicit = materialize(self.oracle)

    def test_counts(self) -> None:
        """Test 3600 vertices of degree 576."""
        assert self.oracle.vertex_count == 3600
        assert self.oracle.degree == 576
        assert self.explicit.degree == 576

    def test_oracle_matches_materialized(self) -> None:
        """Test oracle adjacency against the Kronecker matrix on 100000 random pairs."""
        rng = np.random.default_rng(3)
        us = rng.integers(0, 3600, 100_000)
        vs = rng.integers(0, 3600, 100_000)
        assert np.array_equal(self.oracle.adjacent_many(us, vs), self.explicit.matrix[us, vs])
        assert self.oracle.adjacent(int(us[0]), int(vs[0])) == bool(
            self.explicit.matrix[us[0], vs[0]]
        )

    def test_neighbors_and_neighborhood(self) -> None:
        """Test neighbor lists and set neighborhoods agree with the matrix."""
        assert np.array_equal(self.oracle.neighbors(123), self.explicit.neighbors(123))
        mask = np.zeros(3600, dtype=bool)
        mask[[0, 999, 2500]] = True
        assert np.array_equal(self.oracle.neighborhood(mask), self.explicit.neighborhood(mask))

    def test_group_vertex_index(self) -> None:
        """Test coordinate 1 is most significant."""
        vertex = GroupVertex((2, 7))
        assert vertex.index(60) == 127
        assert GroupVertex.from_index(127, 60, 2) == vertex
        assert self.oracle.adjacent_vertices(GroupVertex((0, 0)), vertex) == self.oracle.adjacent(
            0, 127
        )

    def test_diameter(self) -> None:
        """Test the square also has diameter 2."""
        assert diameter_vertex_transitive(self.oracle) == 2

    def test_triangle_witness(self) -> None:
        """Test the diagonal triangle is a 3-cycle of the square."""
        triangle = triangle_witness(self.oracle)
        assert len(triangle) == 3
        assert triangle[0] == 0
        assert is_cycle_in(self.oracle, triangle)
        assert is_cycle_in(self.explicit, triangle)

    def test_materialize_cap(self) -> None:
        """Test materialization above the cap raises."""
        with pytest.raises(ResourceCapError):
            materialize(self.oracle, max_vertices=1000)

    def test_oracle_guard(self) -> None:
        """Test powers beyond the oracle cap are rejected."""
        with pytest.raises(GuardError):
            tensor_power_oracle(5, 5)

    def test_summary(self) -> None:
        """Test the JSON summary of the square."""
        summary = graph_summary(self.oracle, 5, 2)
        assert summary["components"] == 1
        assert summary["diameter"] == 2
        assert summary["edges"] == 3600 * 576 // 2


class TestExplicitGraph(unittest.TestCase):
    """Test cases for the small-graph helpers."""

    def test_rejects_loops(self) -> None:
        """Test self-loops are rejected."""
        with pytest.raises(PreconditionError):
            ExplicitGraph.from_edges(3, [(0, 0)])

    def test_rejects_out_of_range(self) -> None:
        """Test out-of-range endpoints are rejected."""
        with pytest.raises(IndexRangeError):
            ExplicitGraph.from_edges(3, [(0, 3)])

    def test_rejects_asymmetric_matrix(self) -> None:
        """Test a directed matrix is rejected."""
        with pytest.raises(PreconditionError):
            ExplicitGraph.from_matrix(np.array([[0, 1], [0, 0]]))

    def test_even_cycle_is_bipartite(self) -> None:
        """Test C8 two-colours and C7 does not."""
        assert is_bipartite(cycle_graph(8)).bipartite
        assert len(is_bipartite(cycle_graph(7)).odd_cycle) == 7

    def test_double_cover_of_triangle(self) -> None:
        """Test K3 x K2 is the 6-cycle."""
        cover = tensor_product(complete_graph(3), complete_graph(2))
        assert cover.degree == 2
        assert is_bipartite(cover).bipartite
        assert len(connected_components(cover)) == 1

    def test_disjoint_union(self) -> None:
        """Test a union has two components."""
        union = disjoint_union(cycle_graph(4), complete_graph(3))
        assert union.vertex_count == 7
        assert len(connected_components(union)) == 2

    def test_edge_list_text(self) -> None:
        """Test edges are listed once, u < v, sorted."""
        assert edge_list_text(cycle_graph(3)) == "0 1\n0 2\n1 2\n"

    def test_spec_rejects_odd_connection_element(self) -> None:
        """Test a transposition cannot be a connection element."""
        with pytest.raises(PreconditionError):
            CayleyGraphSpec(n=3, q=1, connection_set=(Permutation.from_cycles("(1 2)", 3),))


@pytest.mark.parametrize(("n", "q"), [(3, 1), (4, 1), (5, 3), (6, 2)])
def test_triangle_witness_without_materializing(n: int, q: int) -> None:
    """Test every power has a triangle through the identity, found on the oracle."""
    oracle = tensor_power_oracle(n, q)
    triangle = triangle_witness(oracle)
    assert triangle[0] == 0
    assert is_cycle_in(oracle, triangle)
