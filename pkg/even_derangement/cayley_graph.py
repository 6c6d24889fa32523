"""The even derangement graph, its tensor powers and BFS-based structure checks.

Vertices of the q-th tensor power are q-tuples of A_n element indices,
encoded mixed-radix with coordinate 1 most significant, so the dense
adjacency of the power is the Kronecker power of the base matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Protocol

import numpy as np

from . import cache
from .const import (
    DEFAULT_MAX_VERTICES,
    DEFAULT_SEED,
    MAX_GRAPH_DEGREE,
    MAX_ORACLE_VERTICES,
    MIN_GRAPH_DEGREE,
)
from .exceptions import (
    DisconnectedGraphError,
    GuardError,
    IndexRangeError,
    PreconditionError,
    ResourceCapError,
)
from .group_engine import PointPermutation, orbits, schreier_sims
from .perm_core import (
    Parity,
    Permutation,
    alternating_group,
    enumerate_even_derangements,
    inverse,
    is_derangement,
    parity,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

_LOGGER = logging.getLogger(__name__)


def check_graph_degree(n: int) -> None:
    """Raise GuardError unless the base graph on A_n is buildable."""
    if not MIN_GRAPH_DEGREE <= n <= MAX_GRAPH_DEGREE:
        msg = f"n={n} outside {MIN_GRAPH_DEGREE}..{MAX_GRAPH_DEGREE}"
        raise GuardError(msg)


def power_vertex_count(n: int, q: int) -> int:
    """(n!/2)^q."""
    return alternating_group(n).order**q


@dataclass(frozen=True)
class CayleyGraphSpec:
    """Cayley graph of A_n^q with connection set E_n^q."""

    n: int
    q: int
    connection_set: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        """Check the connection set."""
        if self.q < 1:
            msg = f"tensor exponent q={self.q} must be at least 1"
            raise IndexRangeError(msg)
        members = set(self.connection_set)
        for s in self.connection_set:
            if s.degree != self.n:
                msg = f"connection element {s} has degree {s.degree}, expected {self.n}"
                raise PreconditionError(msg)
            if not is_derangement(s) or parity(s) is not Parity.EVEN:
                msg = f"connection element {s} is not an even derangement"
                raise PreconditionError(msg)
            if inverse(s) not in members:
                msg = f"connection set is not closed under inverse at {s}"
                raise PreconditionError(msg)

    @classmethod
    def even_derangement(cls, n: int, q: int = 1) -> CayleyGraphSpec:
        """Spec of the q-th tensor power of the even derangement graph."""
        return cls(n=n, q=q, connection_set=tuple(enumerate_even_derangements(n)))

    @property
    def vertex_count(self) -> int:
        """(n!/2)^q."""
        return power_vertex_count(self.n, self.q)

    @property
    def degree(self) -> int:
        """|E_n|^q."""
        return len(self.connection_set) ** self.q


@dataclass(frozen=True)
class GroupVertex:
    """A q-tuple of A_n element indices."""

    coords: tuple[int, ...]

    def index(self, order: int) -> int:
        """Mixed-radix vertex index, coordinate 1 most significant."""
        result = 0
        for c in self.coords:
            if not 0 <= c < order:
                msg = f"coordinate {c} outside 0..{order - 1}"
                raise IndexRangeError(msg)
            result = result * order + c
        return result

    @classmethod
    def from_index(cls, index: int, order: int, q: int) -> GroupVertex:
        """Decode a vertex index."""
        if not 0 <= index < order**q:
            msg = f"vertex index {index} outside 0..{order**q - 1}"
            raise IndexRangeError(msg)
        coords = []
        for _ in range(q):
            index, c = divmod(index, order)
            coords.append(c)
        return cls(tuple(reversed(coords)))

    @classmethod
    def identity(cls, q: int) -> GroupVertex:
        """The identity tuple; A_n's identity has index 0."""
        return cls((0,) * q)


class ProductIndexer:
    """Vectorized encode/decode between vertex indices and coordinate arrays."""

    def __init__(self, order: int, q: int) -> None:
        """Index tuples over an order-element group."""
        self.order = order
        self.q = q
        self.shape = (order,) * q
        self.vertex_count = order**q

    @cached_property
    def coords(self) -> np.ndarray:
        """(vertex_count, q) coordinate table."""
        return np.indices(self.shape).reshape(self.q, -1).T

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Vertex indices of a (..., q) coordinate array."""
        coords = np.asarray(coords)
        return np.ravel_multi_index(tuple(np.moveaxis(coords, -1, 0)), self.shape)

    def decode(self, index: int | np.ndarray) -> np.ndarray:
        """Coordinates of one or more vertex indices."""
        return np.stack(np.unravel_index(index, self.shape), axis=-1)


class GraphLike(Protocol):
    """What the BFS helpers need from a graph."""

    @property
    def vertex_count(self) -> int: ...

    def neighborhood(self, mask: np.ndarray) -> np.ndarray: ...


class ExplicitGraph:
    """Simple undirected graph with sorted neighbor lists and, when small, a dense matrix."""

    def __init__(
        self,
        vertex_count: int,
        indptr: np.ndarray,
        indices: np.ndarray,
        matrix: np.ndarray | None = None,
        name: str = "",
    ) -> None:
        """Wrap CSR neighbor lists; use from_matrix or from_edges to build."""
        self.vertex_count = vertex_count
        self.name = name
        self._indptr = indptr
        self._indices = indices
        self._matrix = matrix
        degrees = np.diff(indptr)
        self.degrees = degrees
        self.degree = int(degrees[0]) if degrees.size and np.all(degrees == degrees[0]) else None

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, name: str = "") -> ExplicitGraph:
        """Build from a dense symmetric loop-free 0/1 matrix."""
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            msg = f"adjacency matrix must be square, got shape {matrix.shape}"
            raise PreconditionError(msg)
        if np.any(np.diagonal(matrix)):
            msg = "adjacency matrix has self-loops"
            raise PreconditionError(msg)
        if not np.array_equal(matrix, matrix.T):
            msg = "adjacency matrix is not symmetric"
            raise PreconditionError(msg)
        count = matrix.shape[0]
        rows, cols = np.nonzero(matrix)
        indptr = np.zeros(count + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=count), out=indptr[1:])
        dense = matrix if count <= DEFAULT_MAX_VERTICES else None
        if dense is not None:
            dense.flags.writeable = False
        return cls(count, indptr, cols.astype(np.int64), dense, name)

    @classmethod
    def from_edges(
        cls, vertex_count: int, edges: Iterable[tuple[int, int]], name: str = ""
    ) -> ExplicitGraph:
        """Build from an undirected edge list."""
        pairs = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= vertex_count):
            msg = f"edge endpoint outside 0..{vertex_count - 1}"
            raise IndexRangeError(msg)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            msg = "edge list contains self-loops"
            raise PreconditionError(msg)
        if vertex_count <= DEFAULT_MAX_VERTICES:
            matrix = np.zeros((vertex_count, vertex_count), dtype=bool)
            matrix[pairs[:, 0], pairs[:, 1]] = True
            matrix[pairs[:, 1], pairs[:, 0]] = True
            return cls.from_matrix(matrix, name)
        both = np.unique(np.concatenate([pairs, pairs[:, ::-1]]), axis=0)
        indptr = np.zeros(vertex_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=vertex_count), out=indptr[1:])
        return cls(vertex_count, indptr, both[:, 1].copy(), None, name)

    @property
    def has_matrix(self) -> bool:
        """True when the dense matrix is kept."""
        return self._matrix is not None

    @property
    def matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        if self._matrix is None:
            msg = f"dense matrix not kept for {self.vertex_count} vertices"
            raise ResourceCapError(msg)
        return self._matrix

    @property
    def edge_count(self) -> int:
        """Number of undirected edges."""
        return int(self._indices.size // 2)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbors of v."""
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def adjacent(self, u: int, v: int) -> bool:
        """True iff u ~ v."""
        if self._matrix is not None:
            return bool(self._matrix[u, v])
        nb = self.neighbors(u)
        pos = np.searchsorted(nb, v)
        return bool(pos < nb.size and nb[pos] == v)

    def neighborhood(self, mask: np.ndarray) -> np.ndarray:
        """Mask of vertices adjacent to some vertex of mask."""
        if self._matrix is not None:
            return self._matrix[mask].any(axis=0)
        out = np.zeros(self.vertex_count, dtype=bool)
        for v in np.flatnonzero(mask):
            out[self.neighbors(v)] = True
        return out

    def edge_array(self) -> np.ndarray:
        """(E, 2) array of edges u < v in lexicographic order."""
        rows = np.repeat(np.arange(self.vertex_count), self.degrees)
        keep = rows < self._indices
        return np.stack([rows[keep], self._indices[keep]], axis=1)

    def induced(self, vertices: Sequence[int] | np.ndarray, name: str = "") -> ExplicitGraph:
        """Induced subgraph, relabelled 0..len(vertices)-1 in the given order."""
        vertices = np.asarray(vertices, dtype=np.int64)
        return ExplicitGraph.from_matrix(self.matrix[np.ix_(vertices, vertices)], name)


class AdjacencyOracle:
    """Implicit adjacency of the q-th tensor power of the even derangement graph."""

    def __init__(self, spec: CayleyGraphSpec, base: ExplicitGraph) -> None:
        """Wrap the base graph's dense matrix."""
        self.spec = spec
        self.q = spec.q
        self.base = base
        self.base_matrix = base.matrix
        self.order = base.vertex_count
        self.indexer = ProductIndexer(self.order, self.q)

    @property
    def vertex_count(self) -> int:
        """(n!/2)^q."""
        return self.indexer.vertex_count

    @property
    def degree(self) -> int:
        """|E_n|^q."""
        return int(self.base.degree) ** self.q

    def adjacent(self, u: int, v: int) -> bool:
        """True iff the vertex pair is adjacent in every coordinate."""
        cu = self.indexer.decode(u)
        cv = self.indexer.decode(v)
        return bool(np.all(self.base_matrix[cu, cv]))

    def adjacent_vertices(self, u: GroupVertex, v: GroupVertex) -> bool:
        """Adjacency on GroupVertex values."""
        return bool(all(self.base_matrix[a, b] for a, b in zip(u.coords, v.coords, strict=True)))

    def adjacent_many(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Vectorized adjacency for paired index arrays."""
        cu = self.indexer.decode(np.asarray(us))
        cv = self.indexer.decode(np.asarray(vs))
        return np.all(self.base_matrix[cu, cv], axis=-1)

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted neighbor indices of u."""
        result = np.zeros(1, dtype=np.int64)
        for c in self.indexer.decode(u):
            nb = self.base.neighbors(int(c))
            result = (result[:, None] * self.order + nb[None, :]).ravel()
        return result

    def neighborhood(self, mask: np.ndarray) -> np.ndarray:
        """Mask of vertices adjacent to some vertex of mask, by one contraction per axis."""
        grid = mask.reshape(self.indexer.shape).astype(np.float32)
        weights = self.base_matrix.astype(np.float32)
        for _ in range(self.q):
            grid = np.tensordot(grid, weights, axes=([0], [0]))
        return (grid > 0).ravel()


def build_even_derangement_graph(n: int) -> ExplicitGraph:
    """AΓ_n with u ~ v iff v u^-1 is an even derangement."""
    check_graph_degree(n)
    key = f"graph_n{n}"
    cached = cache.load(key)
    if cached is not None:
        return ExplicitGraph.from_matrix(cached["matrix"], name=f"AG_{n}")
    group = alternating_group(n)
    # quotients[v, u] = index of v u^-1
    quotients = group.multiplication_table[:, group.inverse_table]
    matrix = group.derangement_mask[quotients].T.copy()
    cache.store(key, matrix=matrix)
    graph = ExplicitGraph.from_matrix(matrix, name=f"AG_{n}")
    _LOGGER.debug(
        "Built AG_%d: %d vertices, degree %s", n, graph.vertex_count, graph.degree
    )
    return graph


def tensor_power_oracle(n: int, q: int) -> AdjacencyOracle:
    """Adjacency oracle for the q-th tensor power of AΓ_n."""
    check_graph_degree(n)
    if q < 1:
        msg = f"tensor exponent q={q} must be at least 1"
        raise GuardError(msg)
    if power_vertex_count(n, q) > MAX_ORACLE_VERTICES:
        msg = f"(n!/2)^q = {power_vertex_count(n, q)} exceeds {MAX_ORACLE_VERTICES}"
        raise GuardError(msg)
    return AdjacencyOracle(CayleyGraphSpec.even_derangement(n, q), build_even_derangement_graph(n))


def materialize(oracle: AdjacencyOracle, max_vertices: int = DEFAULT_MAX_VERTICES) -> ExplicitGraph:
    """Explicit graph equal to the oracle."""
    if oracle.vertex_count > max_vertices:
        msg = f"{oracle.vertex_count} vertices exceed the cap of {max_vertices}"
        raise ResourceCapError(msg)
    base = oracle.base_matrix.astype(np.uint8)
    matrix = base
    for _ in range(oracle.q - 1):
        matrix = np.kron(matrix, base)
    return ExplicitGraph.from_matrix(
        matrix.astype(bool), name=f"AG_{oracle.spec.n}^{oracle.q}"
    )


def tensor_product(
    first: ExplicitGraph, second: ExplicitGraph, max_vertices: int = DEFAULT_MAX_VERTICES
) -> ExplicitGraph:
    """Tensor product of two small explicit graphs."""
    count = first.vertex_count * second.vertex_count
    if count > max_vertices:
        msg = f"tensor product has {count} vertices, cap is {max_vertices}"
        raise ResourceCapError(msg)
    matrix = np.kron(first.matrix.astype(np.uint8), second.matrix.astype(np.uint8))
    return ExplicitGraph.from_matrix(matrix.astype(bool), name=f"{first.name}x{second.name}")


def complete_graph(m: int) -> ExplicitGraph:
    """K_m."""
    return ExplicitGraph.from_matrix(~np.eye(m, dtype=bool), name=f"K{m}")


def cycle_graph(m: int) -> ExplicitGraph:
    """C_m for m >= 3."""
    return ExplicitGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)], name=f"C{m}")


def complete_bipartite_graph(a: int, b: int) -> ExplicitGraph:
    """K_{a,b} with parts 0..a-1 and a..a+b-1."""
    return ExplicitGraph.from_edges(
        a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}"
    )


def disjoint_union(first: ExplicitGraph, second: ExplicitGraph) -> ExplicitGraph:
    """Disjoint union, second graph relabelled after the first."""
    offset = first.vertex_count
    edges = [tuple(e) for e in first.edge_array().tolist()]
    edges += [(u + offset, v + offset) for u, v in second.edge_array().tolist()]
    return ExplicitGraph.from_edges(offset + second.vertex_count, edges)


def bfs_layers(graph: GraphLike, source: int) -> list[np.ndarray]:
    """Distance layers from source."""
    seen = np.zeros(graph.vertex_count, dtype=bool)
    frontier = np.zeros(graph.vertex_count, dtype=bool)
    seen[source] = frontier[source] = True
    layers = []
    while frontier.any():
        layers.append(np.flatnonzero(frontier))
        frontier = graph.neighborhood(frontier) & ~seen
        seen |= frontier
    return layers


def connected_components(graph: GraphLike) -> list[np.ndarray]:
    """Components as sorted vertex arrays, ordered by least vertex."""
    unvisited = np.ones(graph.vertex_count, dtype=bool)
    components = []
    while unvisited.any():
        start = int(np.argmax(unvisited))
        component = np.sort(np.concatenate(bfs_layers(graph, start)))
        unvisited[component] = False
        components.append(component)
    return components


def diameter_vertex_transitive(graph: GraphLike) -> int:
    """Eccentricity of the identity vertex 0, the diameter of a connected Cayley graph."""
    layers = bfs_layers(graph, 0)
    if sum(layer.size for layer in layers) != graph.vertex_count:
        msg = "graph is disconnected"
        raise DisconnectedGraphError(msg)
    return len(layers) - 1


@dataclass(frozen=True)
class BipartiteResult:
    """BFS two-colouring verdict."""

    bipartite: bool
    coloring: np.ndarray | None = None
    odd_cycle: tuple[int, ...] | None = None


def _cycle_through_ancestor(parent: np.ndarray, u: int, v: int) -> tuple[int, ...]:
    # u and v lie in the same BFS layer
    left, right = [u], [v]
    while left[-1] != right[-1]:
        left.append(int(parent[left[-1]]))
        right.append(int(parent[right[-1]]))
    return tuple(left + right[-2::-1])


def is_bipartite(graph: ExplicitGraph) -> BipartiteResult:
    """Two-colour by BFS; on failure return an odd cycle through an intra-layer edge."""
    dist = np.full(graph.vertex_count, -1, dtype=np.int64)
    parent = np.full(graph.vertex_count, -1, dtype=np.int64)
    for root in range(graph.vertex_count):
        if dist[root] >= 0:
            continue
        dist[root] = 0
        layer = [root]
        while layer:
            following = []
            for v in layer:
                nb = graph.neighbors(v)
                new = nb[dist[nb] < 0]
                dist[new] = dist[v] + 1
                parent[new] = v
                following.extend(new.tolist())
            layer = following
    for v in range(graph.vertex_count):
        nb = graph.neighbors(v)
        same = nb[dist[nb] == dist[v]]
        if same.size:
            cycle = _cycle_through_ancestor(parent, v, int(same[0]))
            return BipartiteResult(bipartite=False, odd_cycle=cycle)
    return BipartiteResult(bipartite=True, coloring=(dist % 2).astype(np.int8))


def is_cycle_in(graph: ExplicitGraph | AdjacencyOracle, cycle: Sequence[int]) -> bool:
    """True iff consecutive vertices (cyclically) are adjacent and all distinct."""
    if len(set(cycle)) != len(cycle) or len(cycle) < 3:
        return False
    return all(graph.adjacent(a, b) for a, b in zip(cycle, [*cycle[1:], cycle[0]], strict=True))


def triangle_witness(oracle: AdjacencyOracle) -> tuple[int, ...]:
    """A triangle {id, a, b} of the base graph, repeated in every coordinate of the power."""
    group = alternating_group(oracle.spec.n)
    mask = group.derangement_mask
    connection = np.flatnonzero(mask)
    for a in connection.tolist():
        # b ~ a iff b a^-1 is an even derangement
        hits = connection[mask[group.multiplication_table[connection, group.inverse_table[a]]]]
        if hits.size:
            b = int(hits[0])
            return tuple(GroupVertex((v,) * oracle.q).index(oracle.order) for v in (0, a, b))
    msg = f"AG_{oracle.spec.n} has no triangle through the identity"
    raise PreconditionError(msg)


@dataclass(frozen=True)
class CommonNeighborResult:
    """Outcome of the common-neighbor scan."""

    ok: bool
    min_common: int
    worst_pair: tuple[int, int]


def common_neighbor_check(graph: ExplicitGraph) -> CommonNeighborResult:
    """Every unordered vertex pair has a common neighbor."""
    weights = graph.matrix.astype(np.float32)
    common = weights @ weights
    rows, cols = np.triu_indices(graph.vertex_count, 1)
    values = common[rows, cols]
    worst = int(np.argmin(values))
    min_common = int(round(float(values[worst])))
    return CommonNeighborResult(
        ok=min_common >= 1,
        min_common=min_common,
        worst_pair=(int(rows[worst]), int(cols[worst])),
    )


def product_decomposition_check(n: int) -> bool:
    """True iff every element of A_n is a product of two even derangements."""
    check_graph_degree(n)
    group = alternating_group(n)
    members = np.flatnonzero(group.derangement_mask)
    products = group.multiplication_table[np.ix_(members, members)]
    return int(np.unique(products).size) == group.order


def left_translations(n: int) -> list[PointPermutation]:
    """The maps g -> s g for s in E_n, as permutations of vertex indices."""
    check_graph_degree(n)
    group = alternating_group(n)
    return [
        PointPermutation(group.multiplication_table[s])
        for s in np.flatnonzero(group.derangement_mask)
    ]


def translation_orbits(n: int) -> list[list[int]]:
    """Orbits of <E_n> acting on A_n by translation; these are the components of AΓ_n."""
    return orbits(left_translations(n))


def connection_subgroup_order(n: int, seed: int = DEFAULT_SEED) -> int:
    """|<E_n>| in the natural action on n points."""
    gens = [PointPermutation(p.table) for p in enumerate_even_derangements(n)]
    return schreier_sims(gens, seed).order


def edge_list_text(graph: ExplicitGraph) -> str:
    """One "u v" line per edge, u < v, sorted, LF-terminated."""
    return "".join(f"{u} {v}\n" for u, v in graph.edge_array().tolist())


def export_edge_list(graph: ExplicitGraph, path: Path) -> int:
    """Write the edge list; returns the number of lines."""
    path.write_text(edge_list_text(graph), encoding="utf-8", newline="\n")
    return graph.edge_count


def graph_summary(graph: ExplicitGraph | AdjacencyOracle, n: int, q: int) -> dict[str, object]:
    """JSON-ready summary of one instance."""
    components = connected_components(graph)
    summary: dict[str, object] = {
        "n": n,
        "q": q,
        "vertices": graph.vertex_count,
        "degree": graph.degree,
        "edges": graph.vertex_count * int(graph.degree or 0) // 2,
        "components": len(components),
        "diameter": diameter_vertex_transitive(graph) if len(components) == 1 else None,
        "bipartite": None,
    }
    if isinstance(graph, ExplicitGraph):
        summary["bipartite"] = is_bipartite(graph).bipartite
    return summary
