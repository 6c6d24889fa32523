"""Automorphisms of the tensor powers of the even derangement graph.

Four families generate the claimed group: right translations, coordinatewise
conjugation by S_n, permutations of the q coordinates and coordinatewise
inversion. Each is realized as a PointPermutation on vertex indices, so the
generated group can be handed straight to ``schreier_sims``.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING, Any

import numpy as np

from .cayley_graph import (
    AdjacencyOracle,
    ExplicitGraph,
    GroupVertex,
    tensor_power_oracle,
)
from .const import DEFAULT_OMEGA_SAMPLES, DEFAULT_SEED, MAX_BSGS_DOMAIN, MAX_SEARCH_VERTICES
from .exceptions import (
    BFamilyError,
    BlockCoherenceError,
    DegreeMismatchError,
    GuardError,
    IndexRangeError,
    ResourceCapError,
)
from .extremal import CanonicalIndepSet, VertexSet, b_family, rows_and_columns
from .group_engine import BSGS, PointPermutation, schreier_sims
from .perm_core import (
    Permutation,
    alternating_generators,
    alternating_group,
    long_cycle,
)
from .refinement import automorphism_group_order

if TYPE_CHECKING:
    from collections.abc import Sequence

_LOGGER = logging.getLogger(__name__)

_EDGE_SAMPLE_PAIRS = 100_000


class AutomorphismKind(StrEnum):
    """Families of named automorphisms."""

    RIGHT_TRANSLATION = "right_translation"
    CONJUGATION = "conjugation"
    COORDINATE_PERMUTATION = "coordinate_permutation"
    INVERSION = "inversion"


@dataclass(frozen=True)
class NamedAutomorphism:
    """A claimed automorphism with its vertex-index realization."""

    kind: AutomorphismKind
    parameters: dict[str, Any]
    realization: PointPermutation = field(repr=False)

    @property
    def images(self) -> np.ndarray:
        """Vertex image table."""
        return self.realization.images

    def to_json(self, *, include_images: bool = False) -> dict[str, Any]:
        """{kind, parameters} and optionally the vertex-image table."""
        data: dict[str, Any] = {"kind": str(self.kind), "parameters": self.parameters}
        if include_images:
            data["images"] = self.realization.to_list()
        return data


def _coordinatewise(
    oracle: AdjacencyOracle, maps: Sequence[np.ndarray], source: Sequence[int] | None = None
) -> PointPermutation:
    """Vertex map applying maps[k] to the coordinate that lands in position k."""
    coords = oracle.indexer.coords
    order = source if source is not None else range(oracle.q)
    moved = np.stack([maps[k][coords[:, src]] for k, src in enumerate(order)], axis=1)
    return PointPermutation(oracle.indexer.encode(moved))


def _identity_maps(oracle: AdjacencyOracle) -> list[np.ndarray]:
    return [np.arange(oracle.order) for _ in range(oracle.q)]


def _check_coordinate(k: int, q: int) -> None:
    if not 1 <= k <= q:
        msg = f"coordinate {k} outside 1..{q}"
        raise IndexRangeError(msg)


def right_translation(n: int, q: int, h: GroupVertex) -> NamedAutomorphism:
    """g -> g h, coordinatewise."""
    oracle = tensor_power_oracle(n, q)
    if len(h.coords) != q:
        msg = f"translation tuple has {len(h.coords)} coordinates, expected {q}"
        raise IndexRangeError(msg)
    h.index(oracle.order)
    group = alternating_group(n)
    maps = [group.multiplication_table[:, c] for c in h.coords]
    return NamedAutomorphism(
        kind=AutomorphismKind.RIGHT_TRANSLATION,
        parameters={"h": [list(group.element(c).images) for c in h.coords]},
        realization=_coordinatewise(oracle, maps),
    )


def conjugation_automorphism(n: int, q: int, tau: Permutation, k: int) -> NamedAutomorphism:
    """sigma_k -> tau^-1 sigma_k tau in coordinate k; tau may be odd."""
    oracle = tensor_power_oracle(n, q)
    _check_coordinate(k, q)
    if tau.degree != n:
        msg = f"conjugating permutation has degree {tau.degree}, expected {n}"
        raise DegreeMismatchError(msg)
    maps = _identity_maps(oracle)
    maps[k - 1] = alternating_group(n).conjugation_table(tau)
    return NamedAutomorphism(
        kind=AutomorphismKind.CONJUGATION,
        parameters={"tau": list(tau.images), "k": k},
        realization=_coordinatewise(oracle, maps),
    )


def coordinate_permutation(n: int, q: int, pi: Permutation) -> NamedAutomorphism:
    """Coordinate i moves to position i^pi."""
    oracle = tensor_power_oracle(n, q)
    if pi.degree != q:
        msg = f"coordinate permutation has degree {pi.degree}, expected {q}"
        raise DegreeMismatchError(msg)
    source = np.argsort(np.asarray(pi.table)).tolist()
    return NamedAutomorphism(
        kind=AutomorphismKind.COORDINATE_PERMUTATION,
        parameters={"pi": list(pi.images)},
        realization=_coordinatewise(oracle, _identity_maps(oracle), source),
    )


def inversion(n: int, q: int, k: int) -> NamedAutomorphism:
    """sigma_k -> sigma_k^-1 in coordinate k."""
    oracle = tensor_power_oracle(n, q)
    _check_coordinate(k, q)
    maps = _identity_maps(oracle)
    maps[k - 1] = alternating_group(n).inverse_table
    return NamedAutomorphism(
        kind=AutomorphismKind.INVERSION,
        parameters={"k": k},
        realization=_coordinatewise(oracle, maps),
    )


def preserves_edges(
    automorphism: NamedAutomorphism | PointPermutation,
    graph: ExplicitGraph | AdjacencyOracle,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Adjacency and non-adjacency are preserved.

    Explicit graphs are compared in full; on an oracle it runs on sampled
    vertex pairs, half of them edges.
    """
    gamma = np.asarray(automorphism.images, dtype=np.int64)
    if gamma.size != graph.vertex_count:
        msg = f"map on {gamma.size} points, graph has {graph.vertex_count} vertices"
        raise IndexRangeError(msg)
    if isinstance(graph, ExplicitGraph):
        return bool(np.array_equal(graph.matrix[np.ix_(gamma, gamma)], graph.matrix))
    rng = np.random.default_rng(seed)
    us = rng.integers(0, graph.vertex_count, _EDGE_SAMPLE_PAIRS)
    vs = rng.integers(0, graph.vertex_count, _EDGE_SAMPLE_PAIRS)
    half = _EDGE_SAMPLE_PAIRS // 2
    neighbor_slot = rng.integers(0, graph.degree, half)
    vs[:half] = [graph.neighbors(int(u))[s] for u, s in zip(us[:half], neighbor_slot, strict=True)]
    return bool(
        np.array_equal(graph.adjacent_many(us, vs), graph.adjacent_many(gamma[us], gamma[vs]))
    )


def set_image(automorphism: NamedAutomorphism | PointPermutation, s: VertexSet) -> VertexSet:
    """{g(v) : v in s}."""
    gamma = automorphism.images
    if gamma.size != s.universe:
        msg = f"map on {gamma.size} points, set over {s.universe}"
        raise IndexRangeError(msg)
    mask = np.zeros(s.universe, dtype=bool)
    mask[gamma[s.to_mask()]] = True
    return VertexSet.from_mask(mask)


def claimed_group_order(n: int, q: int) -> int:
    """q! n!^(2q)."""
    return math.factorial(q) * math.factorial(n) ** (2 * q)


def _unit_tuple(q: int, k: int, value: int) -> GroupVertex:
    coords = [0] * q
    coords[k - 1] = value
    return GroupVertex(tuple(coords))


def translation_generators(n: int, q: int) -> list[NamedAutomorphism]:
    """Right translations by two generators of A_n in each coordinate."""
    group = alternating_group(n)
    return [
        right_translation(n, q, _unit_tuple(q, k, group.index_of(a)))
        for k in range(1, q + 1)
        for a in alternating_generators(n)
    ]


def conjugation_generators(n: int, q: int) -> list[NamedAutomorphism]:
    """Conjugation by (1 2) and (1 2 ... n) per coordinate, then adjacent coordinate swaps."""
    taus = [Permutation.from_cycles("(1 2)", n), long_cycle(n)]
    result = [conjugation_automorphism(n, q, tau, k) for k in range(1, q + 1) for tau in taus]
    result += [
        coordinate_permutation(n, q, Permutation.from_cycles(f"({k} {k + 1})", q))
        for k in range(1, q)
    ]
    return result


def inversion_generators(n: int, q: int) -> list[NamedAutomorphism]:
    """phi_k for every coordinate k."""
    return [inversion(n, q, k) for k in range(1, q + 1)]


def claimed_generators(n: int, q: int) -> list[NamedAutomorphism]:
    """Generators of the claimed automorphism group."""
    return translation_generators(n, q) + conjugation_generators(n, q) + inversion_generators(n, q)


def _check_bsgs_domain(n: int, q: int) -> None:
    count = tensor_power_oracle(n, q).vertex_count
    if count > MAX_BSGS_DOMAIN:
        msg = f"(n!/2)^q = {count} exceeds the BSGS domain cap {MAX_BSGS_DOMAIN}"
        raise GuardError(msg)


def generated_group(n: int, q: int, seed: int = DEFAULT_SEED) -> BSGS:
    """BSGS of the group generated by claimed_generators."""
    _check_bsgs_domain(n, q)
    return schreier_sims([a.realization for a in claimed_generators(n, q)], seed)


@dataclass(frozen=True)
class OrderCheck:
    """Generated against claimed group order."""

    computed: int
    claimed: int

    @property
    def match(self) -> bool:
        """True iff the orders agree."""
        return self.computed == self.claimed


def generated_order_check(n: int, q: int, seed: int = DEFAULT_SEED) -> OrderCheck:
    """Exact order of the generated group compared with q! n!^(2q)."""
    return OrderCheck(computed=generated_group(n, q, seed).order, claimed=claimed_group_order(n, q))


def order_ladder(n: int, q: int, seed: int = DEFAULT_SEED) -> list[tuple[str, int]]:
    """Orders after adding translations, then conjugations and coordinate swaps, then inversions."""
    _check_bsgs_domain(n, q)
    stages = [
        ("translations", translation_generators(n, q)),
        ("conjugations", conjugation_generators(n, q)),
        ("inversions", inversion_generators(n, q)),
    ]
    ladder = []
    generators: list[PointPermutation] = []
    for label, family in stages:
        generators += [a.realization for a in family]
        ladder.append((label, schreier_sims(generators, seed).order))
    return ladder


class _FamilyIndex:
    """Positions of the canonical sets, keyed by their bits."""

    def __init__(self, n: int, q: int) -> None:
        self.family = b_family(n, q)
        self.descriptors: list[CanonicalIndepSet] = list(self.family)
        self.position = {s.bits: idx for idx, s in enumerate(self.family.values())}

    def action(self, element: PointPermutation) -> PointPermutation:
        """Induced permutation of the family."""
        images = []
        for descriptor, members in self.family.items():
            image = set_image(element, members)
            idx = self.position.get(image.bits)
            if idx is None:
                msg = f"image of {descriptor.label} is not a canonical set"
                raise BFamilyError(msg)
            images.append(idx)
        return PointPermutation(images)


@dataclass(frozen=True)
class FaithfulnessResult:
    """Order of the group and of its image acting on the canonical sets."""

    source_order: int
    image_order: int

    @property
    def faithful(self) -> bool:
        """Trivial kernel."""
        return self.source_order == self.image_order


def faithful_B_action_check(  # noqa: N802
    n: int, q: int, seed: int = DEFAULT_SEED, bsgs: BSGS | None = None
) -> FaithfulnessResult:
    """Compare the group order with the order of its action on the q n^2 canonical sets."""
    _check_bsgs_domain(n, q)
    source = bsgs if bsgs is not None else generated_group(n, q, seed)
    index = _FamilyIndex(n, q)
    induced = [index.action(a.realization) for a in claimed_generators(n, q)]
    image = schreier_sims(induced, seed)
    return FaithfulnessResult(source_order=source.order, image_order=image.order)


@dataclass(frozen=True)
class OmegaActionResult:
    """Induced action on rows and columns of the canonical family."""

    elements_checked: int
    coordinate_maps: frozenset[tuple[int, ...]]
    row_column_swaps: int


def _line_action(
    beta: PointPermutation, lines: list[frozenset[int]], line_index: dict[frozenset[int], int]
) -> list[int]:
    result = []
    for line in lines:
        image = frozenset(beta(p) for p in line)
        idx = line_index.get(image)
        if idx is None:
            msg = "a row or column is not mapped to a row or column"
            raise BlockCoherenceError(msg)
        result.append(idx)
    return result


def omega_action_check(
    n: int,
    q: int,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_OMEGA_SAMPLES,
    bsgs: BSGS | None = None,
) -> OmegaActionResult:
    """Every checked element permutes the rows and columns block by block.

    Lines are ordered per coordinate as n rows then n columns, so line
    position p lies in coordinate p // 2n and is a row iff p % 2n < n.
    Raises BlockCoherenceError on the first violation.
    """
    _check_bsgs_domain(n, q)
    source = bsgs if bsgs is not None else generated_group(n, q, seed)
    index = _FamilyIndex(n, q)
    lines = [
        frozenset(d.family_index(n) for d in line) for line in rows_and_columns(n, q)
    ]
    line_index = {line: idx for idx, line in enumerate(lines)}
    rng = random.Random(seed)
    elements = [a.realization for a in claimed_generators(n, q)]
    elements += [source.random_element(rng) for _ in range(samples)]
    block = 2 * n
    coordinate_maps = set()
    swaps = 0
    for element in elements:
        line_map = _line_action(index.action(element), lines, line_index)
        sigma = []
        for k in range(q):
            targets = {line_map[k * block + p] // block for p in range(block)}
            if len(targets) != 1:
                msg = f"lines of coordinate {k + 1} are spread over coordinates {sorted(targets)}"
                raise BlockCoherenceError(msg)
            sigma.append(targets.pop())
            row_types = {line_map[k * block + p] % block < n for p in range(n)}
            column_types = {line_map[k * block + p] % block < n for p in range(n, block)}
            if len(row_types) != 1 or len(column_types) != 1 or row_types == column_types:
                msg = f"rows of coordinate {k + 1} are split across rows and columns"
                raise BlockCoherenceError(msg)
            if not row_types.pop():
                swaps += 1
        if sorted(sigma) != list(range(q)):
            msg = f"coordinate map {sigma} is not a permutation"
            raise BlockCoherenceError(msg)
        coordinate_maps.add(tuple(sigma))
    _LOGGER.debug("Checked %d elements on %d lines", len(elements), len(lines))
    return OmegaActionResult(
        elements_checked=len(elements),
        coordinate_maps=frozenset(coordinate_maps),
        row_column_swaps=swaps,
    )


def full_automorphism_order(graph: ExplicitGraph, deadline: float | None = None) -> int:
    """|Aut(graph)| by individualization-refinement; at most 400 vertices."""
    if graph.vertex_count > MAX_SEARCH_VERTICES:
        msg = f"{graph.vertex_count} vertices exceed the automorphism-search cap {MAX_SEARCH_VERTICES}"
        raise ResourceCapError(msg)
    return automorphism_group_order(graph, deadline)


@dataclass(frozen=True)
class NonCommutingWitness:
    """A vertex where phi_k R_h and R_h phi_k disagree."""

    translation: Permutation
    vertex: int
    first: int
    second: int


def non_commuting_witness(n: int, q: int = 1, k: int = 1) -> NonCommutingWitness | None:
    """Least translation generator and vertex showing phi_k R_h != R_h phi_k."""
    phi = inversion(n, q, k).realization
    group = alternating_group(n)
    for a in alternating_generators(n):
        translation = right_translation(n, q, _unit_tuple(q, k, group.index_of(a))).realization
        first = (phi * translation).images
        second = (translation * phi).images
        differ = np.flatnonzero(first != second)
        if differ.size:
            v = int(differ[0])
            return NonCommutingWitness(
                translation=a, vertex=v, first=int(first[v]), second=int(second[v])
            )
    return None


def automorphisms_to_json(
    automorphisms: Sequence[NamedAutomorphism], *, include_images: bool = False
) -> list[dict[str, Any]]:
    """JSON-ready list of automorphism records."""
    return [a.to_json(include_images=include_images) for a in automorphisms]
