"""Unit tests for equitable refinement and the automorphism search."""

from __future__ import annotations

import unittest

import numpy as np
import pytest

from even_derangement.cayley_graph import (
    ExplicitGraph,
    build_even_derangement_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    materialize,
    tensor_power_oracle,
)
from even_derangement.exceptions import ResourceCapError
from even_derangement.refinement import (
    AutomorphismSearch,
    RefinementPartition,
    automorphism_generators,
    automorphism_group_order,
    is_automorphism,
    refine,
)


def petersen_graph() -> ExplicitGraph:
    """Outer 5-cycle, spokes and inner pentagram."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return ExplicitGraph.from_edges(10, outer + spokes + inner, name="Petersen")


class TestRefinement(unittest.TestCase):
    """Test cases for equitable partitions."""

    def test_regular_graph_unit_is_equitable(self) -> None:
        """Test a regular graph keeps the unit partition."""
        weights = petersen_graph().matrix.astype(np.float32)
        partition = refine(weights, RefinementPartition.unit(10))
        assert partition.sizes == (10,)
        assert partition.is_equitable(weights)

    def test_individualized_vertex_splits_by_distance(self) -> None:
        """Test individualizing a Petersen vertex gives cells 1, 3, 6."""
        weights = petersen_graph().matrix.astype(np.float32)
        partition = refine(weights, RefinementPartition.unit(10).individualize(0))
        assert sorted(partition.sizes) == [1, 3, 6]
        assert partition.cells[0].tolist() == [0]
        assert partition.is_equitable(weights)

    def test_path_splits_ends(self) -> None:
        """Test a path on 4 vertices separates ends from inner vertices."""
        path = ExplicitGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        weights = path.matrix.astype(np.float32)
        partition = refine(weights, RefinementPartition.unit(4))
        assert sorted(sorted(c.tolist()) for c in partition.cells) == [[0, 3], [1, 2]]

    def test_target_cell(self) -> None:
        """Test the first smallest non-singleton cell is chosen."""
        partition = RefinementPartition(
            (np.array([0]), np.array([1, 2, 3]), np.array([4, 5]), np.array([6, 7]))
        )
        assert partition.target_cell() == 2


class TestAutomorphismOrders(unittest.TestCase):
    """Test cases for |Aut| of small graphs."""

    def test_petersen(self) -> None:
        """Test |Aut(Petersen)| = 120."""
        assert automorphism_group_order(petersen_graph()) == 120

    def test_five_cycle(self) -> None:
        """Test |Aut(C5)| = 10."""
        assert automorphism_group_order(cycle_graph(5)) == 10

    def test_complete_bipartite(self) -> None:
        """Test |Aut(K3,3)| = 72."""
        assert automorphism_group_order(complete_bipartite_graph(3, 3)) == 72

    def test_triangle(self) -> None:
        """Test |Aut(K3)| = 6."""
        assert automorphism_group_order(complete_graph(3)) == 6

    def test_rigid_graph(self) -> None:
        """Test a graph with no symmetry has order 1."""
        # a path with a pendant vertex off its second vertex, lengths 1, 2, 3 from the branch
        edges = [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 6)]
        assert automorphism_group_order(ExplicitGraph.from_edges(7, edges)) == 1

    def test_generators_are_automorphisms(self) -> None:
        """Test every returned generator preserves the Petersen graph."""
        graph = petersen_graph()
        assert all(is_automorphism(graph, g.images) for g in automorphism_generators(graph))

    def test_even_derangement_graph(self) -> None:
        """Test |Aut(AΓ_5)| = 14400."""
        assert automorphism_group_order(build_even_derangement_graph(5)) == 14400

    def test_search_cap(self) -> None:
        """Test graphs above the cap are refused."""
        with pytest.raises(ResourceCapError):
            AutomorphismSearch(materialize(tensor_power_oracle(5, 2)))


class TestIsAutomorphism(unittest.TestCase):
    """Test cases for is_automorphism."""

    def test_rotation_of_cycle(self) -> None:
        """Test a rotation preserves C6 and a transposition does not."""
        graph = cycle_graph(6)
        assert is_automorphism(graph, [1, 2, 3, 4, 5, 0])
        assert not is_automorphism(graph, [1, 0, 2, 3, 4, 5])

    def test_not_a_bijection(self) -> None:
        """Test a non-bijective map is rejected."""
        assert not is_automorphism(cycle_graph(4), [0, 0, 1, 2])
