"""Independent sets, cliques and colourings of the even derangement graph family.

The canonical independent sets B^(k)_{i,j} hold the tuples whose k-th
coordinate maps point i to point j. Set algebra runs on Python int bit
sets, which keeps the unions and intersections over the whole family cheap.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from .cayley_graph import (
    AdjacencyOracle,
    ExplicitGraph,
    GraphLike,
    ProductIndexer,
    check_graph_degree,
    connected_components,
    is_bipartite,
    materialize,
    power_vertex_count,
    tensor_power_oracle,
)
from .const import (
    CERTIFICATE_TOL,
    DEFAULT_MAX_VERTICES,
    INTEGER_SNAP_TOL,
    MAX_COVER_SUBSETS,
    MAX_EXPANSION_PART,
    MAX_INTERSECTION_VERTICES,
    MAX_ORACLE_VERTICES,
    MAX_SEARCH_VERTICES,
)
from .exceptions import (
    CliqueConstructionError,
    EigenbasisUnavailableError,
    GuardError,
    IndexRangeError,
    PreconditionError,
    ResourceCapError,
    SearchBudgetExceededError,
)
from .perm_core import alternating_group, long_cycle
from .spectral import (
    DenseSymMatrix,
    Spectrum,
    eigenspace_residual,
    eigenvalues_symmetric,
    ratio_bound_exact,
    snap_integer,
    tensor_spectrum,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

_LOGGER = logging.getLogger(__name__)

_DEADLINE_CHECK_INTERVAL = 1024


@dataclass(frozen=True)
class VertexSet:
    """Bit set over vertex indices 0..universe-1."""

    bits: int
    universe: int

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> VertexSet:
        """Build from a boolean mask."""
        mask = np.asarray(mask, dtype=bool).ravel()
        packed = np.packbits(mask, bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"), int(mask.size))

    @classmethod
    def from_indices(cls, indices: Iterable[int], universe: int) -> VertexSet:
        """Build from vertex indices."""
        bits = 0
        for v in indices:
            if not 0 <= v < universe:
                msg = f"vertex {v} outside 0..{universe - 1}"
                raise IndexRangeError(msg)
            bits |= 1 << int(v)
        return cls(bits, universe)

    @cached_property
    def cardinality(self) -> int:
        """Number of members."""
        return self.bits.bit_count()

    def __len__(self) -> int:
        """Number of members."""
        return self.cardinality

    def __contains__(self, v: object) -> bool:
        """Membership."""
        return isinstance(v, int | np.integer) and 0 <= v < self.universe and bool(
            self.bits >> int(v) & 1
        )

    def _same_universe(self, other: VertexSet) -> None:
        if other.universe != self.universe:
            msg = f"vertex sets over {self.universe} and {other.universe} vertices"
            raise IndexRangeError(msg)

    def __and__(self, other: VertexSet) -> VertexSet:
        """Intersection."""
        self._same_universe(other)
        return VertexSet(self.bits & other.bits, self.universe)

    def __or__(self, other: VertexSet) -> VertexSet:
        """Union."""
        self._same_universe(other)
        return VertexSet(self.bits | other.bits, self.universe)

    def __sub__(self, other: VertexSet) -> VertexSet:
        """Difference."""
        self._same_universe(other)
        return VertexSet(self.bits & ~other.bits, self.universe)

    def to_mask(self) -> np.ndarray:
        """Boolean mask of length universe."""
        raw = self.bits.to_bytes((self.universe + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[: self.universe].astype(bool)

    def to_indices(self) -> list[int]:
        """Sorted member list."""
        return np.flatnonzero(self.to_mask()).tolist()

    def to_json(self) -> list[int]:
        """Sorted member list for JSON export."""
        return self.to_indices()


@dataclass(frozen=True, order=True)
class CanonicalIndepSet:
    """Descriptor (k, i, j) of B^(k)_{i,j}; all fields 1-based."""

    k: int
    i: int
    j: int

    def validate(self, n: int, q: int) -> None:
        """Raise IndexRangeError unless 1 <= k <= q and 1 <= i, j <= n."""
        if not (1 <= self.k <= q and 1 <= self.i <= n and 1 <= self.j <= n):
            msg = f"descriptor {self} outside k in 1..{q}, i, j in 1..{n}"
            raise IndexRangeError(msg)

    def family_index(self, n: int) -> int:
        """Position in the family ordered by (k, i, j)."""
        return (self.k - 1) * n * n + (self.i - 1) * n + (self.j - 1)

    @property
    def label(self) -> str:
        """Short label such as ``B1(2,3)``."""
        return f"B{self.k}({self.i},{self.j})"


def b_set_size(n: int, q: int) -> int:
    """(n-1)! n!^(q-1) / 2^q."""
    return math.factorial(n - 1) * math.factorial(n) ** (q - 1) // 2**q


def _check_power(n: int, q: int) -> None:
    check_graph_degree(n)
    if q < 1:
        msg = f"tensor exponent q={q} must be at least 1"
        raise GuardError(msg)
    if power_vertex_count(n, q) > MAX_ORACLE_VERTICES:
        msg = f"(n!/2)^q = {power_vertex_count(n, q)} exceeds {MAX_ORACLE_VERTICES}"
        raise GuardError(msg)


def build_B(n: int, q: int, k: int, i: int, j: int) -> VertexSet:  # noqa: N802
    """Members of B^(k)_{i,j}."""
    _check_power(n, q)
    CanonicalIndepSet(k, i, j).validate(n, q)
    group = alternating_group(n)
    shape = [1] * q
    shape[k - 1] = group.order
    coordinate = group.fixes_mask(i, j).reshape(shape)
    return VertexSet.from_mask(np.broadcast_to(coordinate, (group.order,) * q))


def b_family(n: int, q: int) -> dict[CanonicalIndepSet, VertexSet]:
    """All q n^2 canonical sets, ordered by (k, i, j)."""
    return {
        CanonicalIndepSet(k, i, j): build_B(n, q, k, i, j)
        for k in range(1, q + 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def rows_and_columns(n: int, q: int) -> list[tuple[CanonicalIndepSet, ...]]:
    """The rows R^(k)_i followed by the columns C^(k)_j, coordinate by coordinate."""
    lines = []
    for k in range(1, q + 1):
        lines += [tuple(CanonicalIndepSet(k, i, j) for j in range(1, n + 1)) for i in range(1, n + 1)]
        lines += [tuple(CanonicalIndepSet(k, i, j) for i in range(1, n + 1)) for j in range(1, n + 1)]
    return lines


def verify_independent(adjacency: GraphLike, s: VertexSet) -> bool:
    """True iff no two members of s are adjacent."""
    mask = s.to_mask()
    if not mask.any():
        return True
    return not bool(np.any(adjacency.neighborhood(mask) & mask))


def is_maximal_independent(adjacency: GraphLike, s: VertexSet) -> bool:
    """True iff s is independent and every other vertex has a neighbor in s."""
    mask = s.to_mask()
    return verify_independent(adjacency, s) and bool(np.all(adjacency.neighborhood(mask) | mask))


class _BitSearch:
    """Branch and bound over bit-set adjacency with greedy colouring bounds."""

    def __init__(self, adjacency: list[int], deadline: float | None) -> None:
        self.adj = adjacency
        self.deadline = deadline
        self.nodes = 0
        self.best: list[int] = []
        self.found: list[list[int]] = []

    def _tick(self) -> None:
        self.nodes += 1
        if (
            self.deadline is not None
            and self.nodes % _DEADLINE_CHECK_INTERVAL == 0
            and time.monotonic() > self.deadline
        ):
            msg = f"search stopped after {self.nodes} nodes at the time budget"
            raise SearchBudgetExceededError(msg)

    def _color_sort(self, candidates: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        colors: list[int] = []
        color = 0
        uncolored = candidates
        while uncolored:
            color += 1
            available = uncolored
            while available:
                low = available & -available
                v = low.bit_length() - 1
                order.append(v)
                colors.append(color)
                uncolored &= ~low
                available &= ~low & ~self.adj[v]
        return order, colors

    def maximum(self, clique: list[int], candidates: int) -> None:
        """Largest clique extending clique inside candidates; result in self.best."""
        self._tick()
        if not candidates:
            if len(clique) > len(self.best):
                self.best = list(clique)
            return
        order, colors = self._color_sort(candidates)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + colors[idx] <= len(self.best):
                return
            v = order[idx]
            clique.append(v)
            self.maximum(clique, candidates & self.adj[v])
            clique.pop()
            candidates &= ~(1 << v)

    def enumerate(self, clique: list[int], candidates: int, target: int) -> None:
        """Every clique of size target extending clique inside candidates."""
        self._tick()
        if len(clique) == target:
            self.found.append(list(clique))
            return
        if not candidates:
            return
        order, colors = self._color_sort(candidates)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + colors[idx] < target:
                return
            v = order[idx]
            clique.append(v)
            self.enumerate(clique, candidates & self.adj[v], target)
            clique.pop()
            candidates &= ~(1 << v)


def _degeneracy_order(adjacency: list[int]) -> list[int]:
    """Vertices in smallest-last order, highest-core vertices first."""
    remaining = set(range(len(adjacency)))
    degree = [adj.bit_count() for adj in adjacency]
    removed: list[int] = []
    while remaining:
        v = min(remaining, key=lambda x: (degree[x], x))
        remaining.remove(v)
        removed.append(v)
        rest = adjacency[v]
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            if w in remaining:
                degree[w] -= 1
            rest &= ~low
    return removed[::-1]


def _relabelled_bits(matrix: np.ndarray, order: Sequence[int]) -> list[int]:
    """Bit-set rows of matrix with vertex order[r] moved to position r."""
    permuted = matrix[np.ix_(order, order)]
    return [VertexSet.from_mask(row).bits for row in permuted]


def _check_search_size(graph: ExplicitGraph) -> None:
    if graph.vertex_count > MAX_SEARCH_VERTICES:
        msg = f"{graph.vertex_count} vertices exceed the exact-search cap {MAX_SEARCH_VERTICES}"
        raise ResourceCapError(msg)


def max_independent_sets_exact(
    graph: ExplicitGraph,
    target_size: int | None = None,
    *,
    spectral_bound: float | None = None,
    translations: Sequence[np.ndarray] | None = None,
    deadline: float | None = None,
) -> list[VertexSet]:
    """All maximum independent sets, as cliques of the complement, sorted by member list.

    With ``target_size`` only sets of that size are enumerated. Otherwise sizes
    are tried downward from ``spectral_bound`` (or the vertex count) until one
    is attained. ``translations`` are vertex permutations, one mapping 0 to each
    vertex; when given, only sets through vertex 0 are searched and the rest are
    obtained as images.
    """
    _check_search_size(graph)
    count = graph.vertex_count
    complement = ~graph.matrix
    np.fill_diagonal(complement, False)
    raw = [VertexSet.from_mask(row).bits for row in complement]
    order = _degeneracy_order(raw)
    position = np.empty(count, dtype=np.int64)
    position[order] = np.arange(count)
    search = _BitSearch(_relabelled_bits(complement, order), deadline)

    if translations is not None:
        images_of_zero = {int(t[0]) for t in translations}
        if len(images_of_zero) != count:
            msg = "translations do not move vertex 0 to every vertex"
            raise PreconditionError(msg)
        root = [int(position[0])]
        candidates = search.adj[root[0]]
    else:
        root = []
        candidates = (1 << count) - 1

    if target_size is not None:
        sizes = [target_size]
    else:
        upper = math.floor(spectral_bound + INTEGER_SNAP_TOL) if spectral_bound is not None else count
        sizes = list(range(min(upper, count), 0, -1))

    for size in sizes:
        search.found = []
        search.enumerate(list(root), candidates, size)
        if search.found:
            break
    _LOGGER.debug("Independent-set search visited %d nodes", search.nodes)

    found = {frozenset(int(order[v]) for v in members) for members in search.found}
    if translations is not None:
        found = {
            frozenset(int(t[v]) for v in members) for members in found for t in translations
        }
    result = [VertexSet.from_indices(sorted(members), count) for members in found]
    return sorted(result, key=VertexSet.to_indices)


def max_clique(
    graph: ExplicitGraph, *, vertex_transitive: bool = False, deadline: float | None = None
) -> VertexSet:
    """A maximum clique; with vertex_transitive the search is rooted at vertex 0."""
    _check_search_size(graph)
    count = graph.vertex_count
    raw = [VertexSet.from_mask(row).bits for row in graph.matrix]
    order = _degeneracy_order(raw)
    position = np.empty(count, dtype=np.int64)
    position[order] = np.arange(count)
    search = _BitSearch(_relabelled_bits(graph.matrix, order), deadline)
    if vertex_transitive:
        root = int(position[0])
        search.maximum([root], search.adj[root])
    else:
        search.maximum([], (1 << count) - 1)
    _LOGGER.debug("Clique search visited %d nodes", search.nodes)
    return VertexSet.from_indices((int(order[v]) for v in search.best), count)


def max_clique_exact(
    graph: ExplicitGraph, *, vertex_transitive: bool = False, deadline: float | None = None
) -> int:
    """Clique number by branch and bound."""
    return len(max_clique(graph, vertex_transitive=vertex_transitive, deadline=deadline))


def eigenspace_certificate(
    s: VertexSet,
    eigenbasis: np.ndarray | None,
    alpha: int,
    vertex_count: int,
    tol: float = CERTIFICATE_TOL,
) -> bool:
    """True iff 1_s - (alpha/N) 1 lies in the span of eigenbasis up to relative residual tol."""
    if eigenbasis is None:
        msg = "eigenspace certificate needs eigenvectors"
        raise EigenbasisUnavailableError(msg)
    if s.universe != vertex_count or eigenbasis.shape[0] != vertex_count:
        msg = f"set over {s.universe} vertices, basis over {eigenbasis.shape[0]}, N={vertex_count}"
        raise IndexRangeError(msg)
    return eigenspace_residual(s.to_mask(), eigenbasis, alpha) < tol


def _diagonal_indices(order: int, q: int) -> np.ndarray:
    """Vertex index of (g, ..., g) for every element index g."""
    return np.arange(order, dtype=np.int64) * sum(order**e for e in range(q))


def find_clique_powers_of_cycle(n: int, q: int) -> VertexSet:
    """The n diagonal tuples (c^a, ..., c^a) for the n-cycle c; n must be odd."""
    _check_power(n, q)
    if n % 2 == 0:
        msg = f"powers of an {n}-cycle are odd permutations for even n"
        raise CliqueConstructionError(msg)
    group = alternating_group(n)
    cycle = long_cycle(n)
    power = cycle
    members = [0]
    for _ in range(n - 1):
        members.append(group.index_of(power))
        power = power * cycle
    diagonal = _diagonal_indices(group.order, q)
    return VertexSet.from_indices(diagonal[members].tolist(), group.order**q)


def diagonal_clique(clique: VertexSet, q: int) -> VertexSet:
    """Diagonal embedding of a clique of the base graph into the q-th power."""
    diagonal = _diagonal_indices(clique.universe, q)
    return VertexSet.from_indices(diagonal[clique.to_indices()].tolist(), clique.universe**q)


def is_clique(adjacency: AdjacencyOracle | ExplicitGraph, s: VertexSet) -> bool:
    """True iff all members are pairwise adjacent."""
    members = np.array(s.to_indices(), dtype=np.int64)
    rows, cols = np.triu_indices(members.size, 1)
    if isinstance(adjacency, AdjacencyOracle):
        return bool(np.all(adjacency.adjacent_many(members[rows], members[cols])))
    return bool(np.all(adjacency.matrix[members[rows], members[cols]]))


@dataclass(frozen=True)
class Coloring:
    """Vertex colours 1..num_colors."""

    colors: np.ndarray
    num_colors: int

    def classes(self) -> list[VertexSet]:
        """Colour classes in colour order."""
        return [VertexSet.from_mask(self.colors == c) for c in range(1, self.num_colors + 1)]

    def is_proper(self, adjacency: GraphLike) -> bool:
        """True iff no edge joins two vertices of the same colour."""
        return all(verify_independent(adjacency, cls) for cls in self.classes())


def canonical_coloring(n: int, q: int) -> Coloring:
    """Colour (s_1, ..., s_q) by the image of point 1 under s_1."""
    _check_power(n, q)
    group = alternating_group(n)
    base = group.images[:, 0] + 1
    colors = np.repeat(base, group.order ** (q - 1))
    return Coloring(colors=colors.astype(np.int64), num_colors=n)


class CaseType(StrEnum):
    """How two canonical sets B^(k)_{i,j} and B^(k')_{i',j'} relate."""

    IDENTICAL = "identical"
    SAME_SOURCE = "same_source"
    SAME_TARGET = "same_target"
    DISTINCT_POINTS = "distinct_points"
    CROSS_COORDINATE = "cross_coordinate"


def case_type(a: CanonicalIndepSet, b: CanonicalIndepSet) -> CaseType:
    """Classify an ordered pair of descriptors."""
    if a.k != b.k:
        return CaseType.CROSS_COORDINATE
    if a.i == b.i and a.j == b.j:
        return CaseType.IDENTICAL
    if a.i == b.i:
        return CaseType.SAME_SOURCE
    if a.j == b.j:
        return CaseType.SAME_TARGET
    return CaseType.DISTINCT_POINTS


def expected_intersection(case: CaseType, n: int, q: int) -> int:
    """Closed-form |B ∩ B'| for a case type."""
    f = math.factorial
    match case:
        case CaseType.IDENTICAL:
            return b_set_size(n, q)
        case CaseType.SAME_SOURCE | CaseType.SAME_TARGET:
            return 0
        case CaseType.DISTINCT_POINTS:
            return f(n - 2) * f(n) ** (q - 1) // 2**q
        case CaseType.CROSS_COORDINATE:
            return f(n - 1) ** 2 * f(n) ** (q - 2) // 2**q


def stated_distinct_points_value(n: int, q: int) -> int:
    """The (n-1)! n!^(q-1) / 2^q value printed for the distinct-points case; equals |B|."""
    return math.factorial(n - 1) * math.factorial(n) ** (q - 1) // 2**q


@dataclass(frozen=True)
class IntersectionCase:
    """Measured and closed-form intersection size for one case type."""

    computed: int
    expected: int
    constant: bool
    pairs: int


def _check_intersection_guard(n: int, q: int) -> None:
    _check_power(n, q)
    if power_vertex_count(n, q) > MAX_INTERSECTION_VERTICES:
        msg = f"(n!/2)^q = {power_vertex_count(n, q)} exceeds {MAX_INTERSECTION_VERTICES}"
        raise GuardError(msg)


def intersection_size_table(n: int, q: int) -> dict[CaseType, IntersectionCase]:
    """|B ∩ B'| over every ordered pair, grouped by case type."""
    _check_intersection_guard(n, q)
    family = b_family(n, q)
    sizes: dict[CaseType, set[int]] = {}
    counts: dict[CaseType, int] = {}
    for a, set_a in family.items():
        for b, set_b in family.items():
            case = case_type(a, b)
            sizes.setdefault(case, set()).add((set_a.bits & set_b.bits).bit_count())
            counts[case] = counts.get(case, 0) + 1
    return {
        case: IntersectionCase(
            computed=min(sizes[case]),
            expected=expected_intersection(case, n, q),
            constant=len(sizes[case]) == 1,
            pairs=counts[case],
        )
        for case in CaseType
        if case in sizes
    }


def disjointness_rule_check(n: int, q: int) -> bool:
    """B ∩ B' is empty iff k = k' and exactly one of i = i', j = j' holds."""
    _check_intersection_guard(n, q)
    family = b_family(n, q)
    for a, set_a in family.items():
        for b, set_b in family.items():
            disjoint = not (set_a.bits & set_b.bits)
            if disjoint != (a.k == b.k and ((a.i == b.i) != (a.j == b.j))):
                return False
    return True


@dataclass(frozen=True)
class CoverResult:
    """n-subsets of the canonical family whose union is every vertex."""

    covers: tuple[tuple[CanonicalIndepSet, ...], ...]
    lines: frozenset[frozenset[CanonicalIndepSet]]
    subsets: int

    @property
    def count(self) -> int:
        """Number of covering n-subsets."""
        return len(self.covers)

    @property
    def matches_lines(self) -> bool:
        """True iff the covers are exactly the rows and columns."""
        return {frozenset(c) for c in self.covers} == self.lines


def cover_characterization_check(n: int, q: int) -> CoverResult:
    """Scan every n-subset of the family for covers of the vertex set."""
    _check_power(n, q)
    family_size = q * n * n
    subsets = math.comb(family_size, n)
    if subsets > MAX_COVER_SUBSETS:
        msg = f"C({family_size}, {n}) = {subsets} exceeds {MAX_COVER_SUBSETS}"
        raise GuardError(msg)
    family = b_family(n, q)
    names = list(family)
    bits = [family[name].bits for name in names]
    total = power_vertex_count(n, q)
    full = (1 << total) - 1
    size = b_set_size(n, q)
    covers: list[tuple[CanonicalIndepSet, ...]] = []
    chosen: list[int] = []

    def extend(start: int, union: int) -> None:
        depth = len(chosen)
        if depth == n:
            if union == full:
                covers.append(tuple(names[i] for i in chosen))
            return
        # a union short of the bound cannot be completed
        if union.bit_count() + (n - depth) * size < total:
            return
        for idx in range(start, family_size - (n - depth) + 1):
            chosen.append(idx)
            extend(idx + 1, union | bits[idx])
            chosen.pop()

    extend(0, 0)
    lines = frozenset(frozenset(line) for line in rows_and_columns(n, q))
    return CoverResult(covers=tuple(covers), lines=lines, subsets=subsets)


def bipartite_expansion_check(graph: ExplicitGraph) -> bool:
    """Every nonempty proper subset S of one part has more than |S| neighbors."""
    if len(connected_components(graph)) != 1:
        msg = "expansion check needs a connected graph"
        raise PreconditionError(msg)
    if graph.degree is None:
        msg = "expansion check needs a regular graph"
        raise PreconditionError(msg)
    verdict = is_bipartite(graph)
    if not verdict.bipartite or verdict.coloring is None:
        msg = "expansion check needs a bipartite graph"
        raise PreconditionError(msg)
    first = np.flatnonzero(verdict.coloring == 0)
    second = np.flatnonzero(verdict.coloring == 1)
    if first.size != second.size:
        msg = f"parts have sizes {first.size} and {second.size}"
        raise PreconditionError(msg)
    if first.size > MAX_EXPANSION_PART:
        msg = f"part size {first.size} exceeds {MAX_EXPANSION_PART}"
        raise GuardError(msg)
    neighbor_bits = [
        VertexSet.from_mask(graph.matrix[v][second]).bits for v in first.tolist()
    ]
    full = (1 << first.size) - 1
    union = [0] * (full + 1)
    for subset in range(1, full):
        low = subset & -subset
        union[subset] = union[subset ^ low] | neighbor_bits[low.bit_length() - 1]
        if union[subset].bit_count() <= subset.bit_count():
            return False
    return True


@dataclass(frozen=True)
class CertifiedAlpha:
    """Independence number bracketed by an independent set and the ratio bound."""

    lower: int
    upper: int

    @property
    def alpha(self) -> int | None:
        """Exact value when the bracket closes."""
        return self.lower if self.lower == self.upper else None


def certified_alpha(n: int, q: int, base_spectrum: Spectrum) -> CertifiedAlpha:
    """Lower bound from B^(1)_{1,1}, upper bound from the tensor spectrum."""
    oracle = tensor_power_oracle(n, q)
    witness = build_B(n, q, 1, 1, 1)
    lower = witness.cardinality if verify_independent(oracle, witness) else 0
    least = snap_integer(tensor_spectrum(base_spectrum, q).least)
    if least is None:
        msg = "least eigenvalue of the tensor power is not an integer"
        raise PreconditionError(msg)
    upper = math.floor(ratio_bound_exact(oracle.vertex_count, oracle.degree, least))
    return CertifiedAlpha(lower=lower, upper=upper)


def base_spectrum_of(n: int, *, with_basis: bool = False) -> Spectrum:
    """Jacobi spectrum of AΓ_n."""
    oracle = tensor_power_oracle(n, 1)
    return eigenvalues_symmetric(DenseSymMatrix.from_graph(oracle.base), with_basis=with_basis)


@dataclass(frozen=True)
class NoHomomorphismResult:
    """Diagonal map from AΓ_n into its q-th power."""

    homomorphism: bool
    base_alpha: int | None
    power_alpha: int | None
    ratios_equal: bool
    preimage_is_canonical: bool
    preimage_size: int

    @property
    def ok(self) -> bool:
        """All parts hold."""
        return self.homomorphism and self.ratios_equal and self.preimage_is_canonical


def no_homomorphism_instance_check(
    n: int, q: int, base_spectrum: Spectrum | None = None
) -> NoHomomorphismResult:
    """Diagonal embedding is edge-preserving, ratios alpha/|V| agree, preimage of B is B."""
    if q < 2:
        msg = "the diagonal map needs q >= 2"
        raise PreconditionError(msg)
    oracle = tensor_power_oracle(n, q)
    base = oracle.base
    spectrum = base_spectrum if base_spectrum is not None else base_spectrum_of(n)
    diagonal = _diagonal_indices(oracle.order, q)
    edges = base.edge_array()
    homomorphism = bool(np.all(oracle.adjacent_many(diagonal[edges[:, 0]], diagonal[edges[:, 1]])))
    base_alpha = certified_alpha(n, 1, spectrum).alpha
    power_alpha = certified_alpha(n, q, spectrum).alpha
    ratios_equal = (
        base_alpha is not None
        and power_alpha is not None
        and Fraction(base_alpha, oracle.order) == Fraction(power_alpha, oracle.vertex_count)
    )
    preimage = VertexSet.from_mask(build_B(n, q, 1, 1, 1).to_mask()[diagonal])
    return NoHomomorphismResult(
        homomorphism=homomorphism,
        base_alpha=base_alpha,
        power_alpha=power_alpha,
        ratios_equal=ratios_equal,
        preimage_is_canonical=preimage == build_B(n, 1, 1, 1, 1),
        preimage_size=preimage.cardinality,
    )


@dataclass(frozen=True)
class JPartitionReport:
    """Split of A_n^2 by whether each coordinate fixes a point."""

    sizes: dict[str, int]
    expected: dict[str, int]
    bipartite: bool
    regular_between: bool
    cross_degree: int | None
    components: int

    @property
    def connected(self) -> bool:
        """True iff the graph induced on J1 and J2 is connected."""
        return self.components == 1


def j_partition_structure(
    n: int, fixed_point: int = 1, max_vertices: int = DEFAULT_MAX_VERTICES
) -> JPartitionReport:
    """Sizes of J0, J1, J2 and the structure of the graph induced on J1 and J2."""
    oracle = tensor_power_oracle(n, 2)
    graph = materialize(oracle, max_vertices)
    group = alternating_group(n)
    if not 1 <= fixed_point <= n:
        msg = f"point {fixed_point} outside 1..{n}"
        raise IndexRangeError(msg)
    fixes = group.fixes_mask(fixed_point, fixed_point)
    coords = ProductIndexer(group.order, 2).coords
    first, second = fixes[coords[:, 0]], fixes[coords[:, 1]]
    parts = {"J0": first & second, "J1": first & ~second, "J2": ~first & second}
    j1 = np.flatnonzero(parts["J1"])
    j2 = np.flatnonzero(parts["J2"])
    matrix = graph.matrix
    internal = bool(matrix[np.ix_(j1, j1)].any() or matrix[np.ix_(j2, j2)].any())
    forward = np.unique(matrix[np.ix_(j1, j2)].sum(axis=1))
    backward = np.unique(matrix[np.ix_(j2, j1)].sum(axis=1))
    regular = forward.size == 1 and backward.size == 1 and forward[0] == backward[0]
    induced = graph.induced(np.concatenate([j1, j2]))
    square = math.factorial(n - 1) ** 2 // 4
    return JPartitionReport(
        sizes={name: int(mask.sum()) for name, mask in parts.items()},
        expected={"J0": square, "J1": (n - 1) * square, "J2": (n - 1) * square},
        bipartite=not internal,
        regular_between=bool(regular),
        cross_degree=int(forward[0]) if regular else None,
        components=len(connected_components(induced)),
    )
