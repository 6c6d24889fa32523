"""Pytest configuration for the even derangement verifier tests."""

from __future__ import annotations

import itertools
import os
import sys
from collections.abc import Iterator
from functools import cache
from pathlib import Path

import networkx as nx
import pytest

# Add the repository root to path for imports
repo_root = Path(__file__).parent.parent
if str(repo_root) not in sys.path:
    sys.path.insert(0, str(repo_root))

MAX_CATALOGUE_PART = 6


def pytest_configure(config: pytest.Config) -> None:
    """Register the stretch marker."""
    config.addinivalue_line("markers", "stretch: long n=6 checks, run with ALTGRAPH_STRETCH=1")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip stretch tests unless ALTGRAPH_STRETCH=1."""
    if os.environ.get("ALTGRAPH_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="set ALTGRAPH_STRETCH=1 to run")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def _biadjacency_matrices(m: int, d: int) -> Iterator[list[tuple[int, ...]]]:
    """m x m 0/1 matrices with every row and column sum d.

    The first row is 1^d 0^(m-d) and the rows are non-increasing, which
    leaves at least one matrix per isomorphism class.
    """
    rows = sorted(
        (tuple(int(c in combo) for c in range(m)) for combo in itertools.combinations(range(m), d)),
        reverse=True,
    )

    def extend(
        matrix: list[tuple[int, ...]], sums: list[int], start: int
    ) -> Iterator[list[tuple[int, ...]]]:
        if len(matrix) == m:
            yield matrix
            return
        remaining = m - len(matrix) - 1
        for k in range(start, len(rows)):
            new = [s + b for s, b in zip(sums, rows[k], strict=True)]
            if all(d - remaining <= s <= d for s in new):
                yield from extend([*matrix, rows[k]], new, k)

    yield from extend([rows[0]], list(rows[0]), 0)


@cache
def regular_bipartite_catalogue(
    max_part: int = MAX_CATALOGUE_PART,
) -> tuple[tuple[str, nx.Graph], ...]:
    """Every connected d-regular bipartite graph with parts of size m <= max_part, up to isomorphism."""
    found = []
    for m in range(1, max_part + 1):
        for d in range(1, m + 1):
            classes: dict[str, list[nx.Graph]] = {}
            for matrix in _biadjacency_matrices(m, d):
                graph = nx.Graph()
                graph.add_nodes_from(range(2 * m))
                graph.add_edges_from(
                    (i, m + j) for i, row in enumerate(matrix) for j, bit in enumerate(row) if bit
                )
                if not nx.is_connected(graph):
                    continue
                bucket = classes.setdefault(nx.weisfeiler_lehman_graph_hash(graph), [])
                if not any(nx.is_isomorphic(graph, other) for other in bucket):
                    bucket.append(graph)
            graphs = [graph for bucket in classes.values() for graph in bucket]
            found.extend((f"m{m}-d{d}-{i}", graph) for i, graph in enumerate(graphs))
    return tuple(found)


@pytest.fixture(scope="session")
def regular_bipartite_graphs() -> tuple[tuple[str, nx.Graph], ...]:
    """The whole catalogue, keyed by m, d and a running index."""
    return regular_bipartite_catalogue()


def pytest_generate_tests(metafunc: pytest.Metafunc) -> None:
    """Parametrize regular_bipartite_graph over the catalogue."""
    if "regular_bipartite_graph" in metafunc.fixturenames:
        catalogue = regular_bipartite_catalogue()
        metafunc.parametrize(
            "regular_bipartite_graph",
            [graph for _, graph in catalogue],
            ids=[key for key, _ in catalogue],
        )
