"""Equitable partitions and an individualization-refinement automorphism search.

Partitions are ordered: refinement replaces each cell by its pieces in
place, and pieces are ordered by their neighbor-count profile. Both steps
depend only on the graph, so any automorphism carries a search-tree node to
a node with the same cell sizes and quotient matrix.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from .const import DEFAULT_SEED, MAX_SEARCH_VERTICES
from .exceptions import IndexRangeError, ResourceCapError, SearchBudgetExceededError
from .group_engine import PointPermutation, orbit, schreier_sims

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .cayley_graph import ExplicitGraph

_LOGGER = logging.getLogger(__name__)

_DEADLINE_CHECK_INTERVAL = 64


@dataclass(frozen=True)
class RefinementPartition:
    """Ordered cells of vertex indices."""

    cells: tuple[np.ndarray, ...]

    @classmethod
    def unit(cls, vertex_count: int) -> RefinementPartition:
        """One cell holding every vertex."""
        return cls((np.arange(vertex_count, dtype=np.int64),))

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        """Cell sizes in order."""
        return tuple(int(c.size) for c in self.cells)

    @property
    def is_discrete(self) -> bool:
        """Every cell is a singleton."""
        return len(self.cells) == sum(self.sizes)

    def indicator(self) -> np.ndarray:
        """(N, cells) 0/1 membership matrix."""
        out = np.zeros((sum(self.sizes), len(self.cells)), dtype=np.float32)
        for idx, cell in enumerate(self.cells):
            out[cell, idx] = 1.0
        return out

    def target_cell(self) -> int:
        """Position of the first smallest non-singleton cell."""
        candidates = [(size, idx) for idx, size in enumerate(self.sizes) if size > 1]
        return min(candidates)[1]

    def individualize(self, vertex: int) -> RefinementPartition:
        """Split vertex off its cell, the singleton first."""
        for idx, cell in enumerate(self.cells):
            if vertex in cell:
                rest = cell[cell != vertex]
                singleton = np.array([vertex], dtype=np.int64)
                return RefinementPartition((*self.cells[:idx], singleton, rest, *self.cells[idx + 1 :]))
        msg = f"vertex {vertex} is not in the partition"
        raise IndexRangeError(msg)

    def leaf_order(self) -> np.ndarray:
        """Vertices in cell order; a labelling when the partition is discrete."""
        return np.concatenate(self.cells)

    def is_equitable(self, weights: np.ndarray) -> bool:
        """Every vertex of a cell has the same neighbor count into each cell."""
        counts = weights @ self.indicator()
        return all(np.all(counts[cell] == counts[cell[0]]) for cell in self.cells)


def refine(weights: np.ndarray, partition: RefinementPartition) -> RefinementPartition:
    """Coarsest equitable refinement, splitting every cell against the current partition."""
    while True:
        counts = weights @ partition.indicator()
        pieces: list[np.ndarray] = []
        for cell in partition.cells:
            if cell.size == 1:
                pieces.append(cell)
                continue
            profiles, label = np.unique(counts[cell], axis=0, return_inverse=True)
            label = label.ravel()
            pieces.extend(cell[label == u] for u in range(profiles.shape[0]))
        if len(pieces) == len(partition.cells):
            return partition
        partition = RefinementPartition(tuple(pieces))


def node_invariant(weights: np.ndarray, partition: RefinementPartition) -> tuple[tuple[int, ...], bytes]:
    """Cell sizes and the quotient matrix of an equitable partition."""
    representatives = [int(cell[0]) for cell in partition.cells]
    quotient = (weights[representatives] @ partition.indicator()).astype(np.int32)
    return partition.sizes, quotient.tobytes()


class AutomorphismSearch:
    """Generators of Aut(graph) by individualization-refinement with orbit pruning."""

    def __init__(self, graph: ExplicitGraph, deadline: float | None = None) -> None:
        """Prepare the search; the graph must keep its dense matrix."""
        if graph.vertex_count > MAX_SEARCH_VERTICES:
            msg = f"{graph.vertex_count} vertices exceed the automorphism-search cap {MAX_SEARCH_VERTICES}"
            raise ResourceCapError(msg)
        self.matrix = graph.matrix
        self.weights = graph.matrix.astype(np.float32)
        self.vertex_count = graph.vertex_count
        self.deadline = deadline
        self.nodes = 0
        self._invariants: list[tuple[tuple[int, ...], bytes]] = []
        self._first_leaf = np.arange(self.vertex_count)

    def _tick(self) -> None:
        self.nodes += 1
        if (
            self.deadline is not None
            and self.nodes % _DEADLINE_CHECK_INTERVAL == 0
            and time.monotonic() > self.deadline
        ):
            msg = f"automorphism search stopped after {self.nodes} nodes at the time budget"
            raise SearchBudgetExceededError(msg)

    def _first_path(self) -> tuple[list[RefinementPartition], list[int]]:
        partition = refine(self.weights, RefinementPartition.unit(self.vertex_count))
        path = [partition]
        chosen: list[int] = []
        self._invariants = [node_invariant(self.weights, partition)]
        while not partition.is_discrete:
            vertex = int(partition.cells[partition.target_cell()][0])
            chosen.append(vertex)
            partition = refine(self.weights, partition.individualize(vertex))
            path.append(partition)
            self._invariants.append(node_invariant(self.weights, partition))
        self._first_leaf = partition.leaf_order()
        return path, chosen

    def _leaf_automorphism(self, partition: RefinementPartition) -> PointPermutation | None:
        gamma = np.empty(self.vertex_count, dtype=np.int64)
        gamma[self._first_leaf] = partition.leaf_order()
        if np.array_equal(self.matrix[np.ix_(gamma, gamma)], self.matrix):
            return PointPermutation(gamma)
        return None

    def _search(self, partition: RefinementPartition, depth: int) -> PointPermutation | None:
        """First leaf below partition that yields an automorphism."""
        self._tick()
        if node_invariant(self.weights, partition) != self._invariants[depth]:
            return None
        if partition.is_discrete:
            return self._leaf_automorphism(partition)
        for vertex in partition.cells[partition.target_cell()].tolist():
            found = self._search(refine(self.weights, partition.individualize(vertex)), depth + 1)
            if found is not None:
                return found
        return None

    def run(self) -> list[PointPermutation]:
        """Strong generators of the automorphism group along the first path."""
        path, chosen = self._first_path()
        generators: list[PointPermutation] = []
        for depth in range(len(chosen) - 1, -1, -1):
            node = path[depth]
            base_vertex = chosen[depth]
            reached = orbit(generators, base_vertex) if generators else frozenset({base_vertex})
            for vertex in node.cells[node.target_cell()].tolist():
                if vertex in reached:
                    continue
                found = self._search(refine(self.weights, node.individualize(vertex)), depth + 1)
                if found is not None:
                    generators.append(found)
                    reached = orbit(generators, base_vertex)
            _LOGGER.debug(
                "Level %d: orbit of %d has size %d, %d generators",
                depth,
                base_vertex,
                len(reached),
                len(generators),
            )
        _LOGGER.debug("Automorphism search visited %d nodes", self.nodes)
        return generators


def automorphism_generators(
    graph: ExplicitGraph, deadline: float | None = None
) -> list[PointPermutation]:
    """Generators of Aut(graph)."""
    return AutomorphismSearch(graph, deadline).run()


def automorphism_group_order(
    graph: ExplicitGraph, deadline: float | None = None, seed: int = DEFAULT_SEED
) -> int:
    """|Aut(graph)|."""
    generators = automorphism_generators(graph, deadline)
    if not generators:
        return 1
    return schreier_sims(generators, seed).order


def is_automorphism(graph: ExplicitGraph, images: Sequence[int] | np.ndarray) -> bool:
    """True iff the vertex map preserves adjacency and non-adjacency."""
    gamma = np.asarray(images, dtype=np.int64)
    if sorted(gamma.tolist()) != list(range(graph.vertex_count)):
        return False
    return bool(np.array_equal(graph.matrix[np.ix_(gamma, gamma)], graph.matrix))
