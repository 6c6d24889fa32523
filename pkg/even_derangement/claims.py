"""Claim catalogue and the verifier that runs it.

Each claim family is a function registered with ``@claim``; its statement
comes from ``claims.json``. A family runs once for every selected (n, q) it
applies to and returns an Outcome, which the Verifier turns into a
ClaimRecord.
"""

from __future__ import annotations

import json
import logging
import math
import threading
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any, TypeVar

from .autgroup import (
    claimed_generators,
    claimed_group_order,
    faithful_B_action_check,
    full_automorphism_order,
    generated_group,
    non_commuting_witness,
    omega_action_check,
    order_ladder,
    preserves_edges,
)
from .cayley_graph import (
    AdjacencyOracle,
    ExplicitGraph,
    build_even_derangement_graph,
    common_neighbor_check,
    complete_graph,
    connected_components,
    connection_subgroup_order,
    diameter_vertex_transitive,
    is_bipartite,
    is_cycle_in,
    materialize,
    product_decomposition_check,
    tensor_power_oracle,
    tensor_product,
    triangle_witness,
)
from .const import MAX_BSGS_DOMAIN, MAX_SEARCH_VERTICES, Suite
from .exceptions import (
    BlockCoherenceError,
    GuardError,
    ResourceCapError,
    SearchBudgetExceededError,
)
from .extremal import (
    CaseType,
    VertexSet,
    b_family,
    b_set_size,
    bipartite_expansion_check,
    canonical_coloring,
    certified_alpha,
    cover_characterization_check,
    diagonal_clique,
    disjointness_rule_check,
    eigenspace_certificate,
    find_clique_powers_of_cycle,
    intersection_size_table,
    is_clique,
    is_maximal_independent,
    j_partition_structure,
    max_clique,
    max_clique_exact,
    max_independent_sets_exact,
    no_homomorphism_instance_check,
    stated_distinct_points_value,
    verify_independent,
)
from .group_engine import BSGS
from .perm_core import alternating_group, enumerate_even_derangements, even_derangement_count
from .report import (
    SKIP_GUARD,
    SKIP_NOT_RUN,
    SKIP_RESOURCE,
    SKIP_STRETCH,
    ClaimRecord,
    ClaimStatus,
    Report,
)
from .spectral import (
    DenseSymMatrix,
    Spectrum,
    eigenvalues_symmetric,
    ratio_bound_exact,
    snap_integer,
    spectrum_identities,
    tensor_eigenspace,
    tensor_spectrum,
)

if TYPE_CHECKING:
    from .config import RunConfig

_LOGGER = logging.getLogger(__name__)

_T = TypeVar("_T")

CLAIM_TEXT: dict[str, Any] = json.loads(
    (Path(__file__).parent / "claims.json").read_text(encoding="utf-8")
)

BASE_LEAST_EIGENVALUE = {5: -6, 6: -26}
SPECTRUM_N5 = [[24, 1], [4, 18], [0, 25], [-6, 16]]


def statement_for(suite: Suite, name: str) -> str:
    """Statement text of a claim family."""
    return CLAIM_TEXT["suites"][str(suite)]["claims"][name]


@dataclass(frozen=True)
class Outcome:
    """What a claim runner measured; passed None marks an informational claim."""

    computed: Any
    expected: Any
    passed: bool | None = None
    note: str = ""
    skip_reason: str | None = None


class ArtifactStore:
    """Run-wide memo of graphs, spectra and stabilizer chains."""

    def __init__(self) -> None:
        """Start empty."""
        self._lock = threading.Lock()
        self._values: dict[tuple[Any, ...], Any] = {}
        self._key_locks: dict[tuple[Any, ...], threading.Lock] = {}

    def get(self, key: tuple[Any, ...], factory: Callable[[], _T]) -> _T:
        """Value under key, built once by factory."""
        with self._lock:
            if key in self._values:
                return self._values[key]
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        with key_lock:
            with self._lock:
                if key in self._values:
                    return self._values[key]
            value = factory()
            with self._lock:
                self._values[key] = value
            return value


class InstanceContext:
    """Shared artefacts of one (n, q) instance as seen by one claim."""

    def __init__(
        self, n: int, q: int, config: RunConfig, store: ArtifactStore, deadline: float
    ) -> None:
        """Bind an instance to the run-wide store."""
        self.n = n
        self.q = q
        self.config = config
        self.store = store
        self.deadline = deadline

    def base_graph(self) -> ExplicitGraph:
        """AΓ_n."""
        return self.store.get(("graph", self.n), lambda: build_even_derangement_graph(self.n))

    def oracle(self) -> AdjacencyOracle:
        """Adjacency oracle of the q-th power."""
        return self.store.get(
            ("oracle", self.n, self.q), lambda: tensor_power_oracle(self.n, self.q)
        )

    def explicit(self) -> ExplicitGraph:
        """Materialized q-th power; ResourceCapError above max_vertices."""
        if self.q == 1:
            return self.base_graph()
        return self.store.get(
            ("explicit", self.n, self.q),
            lambda: materialize(self.oracle(), self.config.max_vertices),
        )

    def graph_like(self) -> ExplicitGraph | AdjacencyOracle:
        """Explicit graph when within max_vertices, else the oracle."""
        if self.oracle().vertex_count <= self.config.max_vertices:
            return self.explicit()
        return self.oracle()

    def base_spectrum(self) -> Spectrum:
        """Jacobi spectrum of AΓ_n with eigenvectors."""
        return self.store.get(
            ("spectrum", self.n),
            lambda: eigenvalues_symmetric(
                DenseSymMatrix.from_graph(self.base_graph()),
                self.config.tol,
                with_basis=True,
                deadline=self.deadline,
            ),
        )

    def spectrum(self) -> Spectrum:
        """Spectrum of the q-th power."""
        return tensor_spectrum(self.base_spectrum(), self.q)

    def bsgs(self) -> BSGS:
        """Stabilizer chain of the generated automorphism group."""
        return self.store.get(
            ("bsgs", self.n, self.q), lambda: generated_group(self.n, self.q, self.config.seed)
        )

    def maximum_independent_sets(self) -> list[VertexSet]:
        """All maximum independent sets of AΓ_n by exact search."""

        def search() -> list[VertexSet]:
            graph = self.base_graph()
            table = alternating_group(self.n).multiplication_table
            least = snap_integer(self.base_spectrum().least)
            bound = (
                float(ratio_bound_exact(graph.vertex_count, int(graph.degree), least))
                if least is not None
                else None
            )
            return max_independent_sets_exact(
                graph,
                spectral_bound=bound,
                translations=[table[:, h] for h in range(graph.vertex_count)],
                deadline=self.deadline,
            )

        return self.store.get(("mis", self.n), search)

    def needs_stretch(self) -> bool:
        """True when a stretch-only computation is requested without --stretch."""
        return not self.config.stretch


@dataclass(frozen=True)
class ClaimFamily:
    """One registered claim, instantiated per (n, q)."""

    name: str
    suite: Suite
    statement: str
    applies: Callable[[int, int], bool]
    runner: Callable[[InstanceContext], Outcome]
    ref: str = ""

    def claim_id(self, n: int, q: int) -> str:
        """Identifier such as ``alpha_n5_q1``."""
        return f"{self.name}_n{n}_q{q}"


CLAIM_FAMILIES: dict[str, ClaimFamily] = {}


def claim(
    name: str,
    suite: Suite,
    applies: Callable[[int, int], bool] = lambda n, q: True,
    *,
    ref: str,
) -> Callable[[Callable[[InstanceContext], Outcome]], Callable[[InstanceContext], Outcome]]:
    """Register a claim runner under name in suite, citing the result key ref."""
    if ref not in CLAIM_TEXT["results"]:
        msg = f"claim {name} cites unknown result {ref}"
        raise KeyError(msg)

    def register(func: Callable[[InstanceContext], Outcome]) -> Callable[[InstanceContext], Outcome]:
        CLAIM_FAMILIES[name] = ClaimFamily(
            name=name,
            suite=suite,
            statement=statement_for(suite, name),
            applies=applies,
            runner=func,
            ref=ref,
        )
        return func

    return register


def _large(n: int, q: int) -> bool:
    return n >= 5


def _base_only(n: int, q: int) -> bool:
    return q == 1


def _large_base(n: int, q: int) -> bool:
    return n >= 5 and q == 1


# structure


@claim("connection_set_size", Suite.STRUCTURE, _base_only, ref="connection-set-size")
def _connection_set_size(ctx: InstanceContext) -> Outcome:
    computed = len(enumerate_even_derangements(ctx.n))
    expected = even_derangement_count(ctx.n)
    return Outcome(computed, expected, computed == expected)


@claim("connection_subgroup", Suite.STRUCTURE, _base_only, ref="connection-subgroup")
def _connection_subgroup(ctx: InstanceContext) -> Outcome:
    computed = connection_subgroup_order(ctx.n, ctx.config.seed)
    expected = 4 if ctx.n == 4 else math.factorial(ctx.n) // 2
    return Outcome(computed, expected, computed == expected)


@claim("connectivity", Suite.STRUCTURE, lambda n, q: q == 1 or n != 4, ref="connectivity")
def _connectivity(ctx: InstanceContext) -> Outcome:
    components = connected_components(ctx.graph_like())
    if ctx.n == 4:
        graph = ctx.base_graph()
        complete = all(
            graph.induced(c).edge_count == c.size * (c.size - 1) // 2 for c in components
        )
        sizes = sorted(int(c.size) for c in components)
        return Outcome(
            len(components),
            "disconnected",
            len(components) == 3 and sizes == [4, 4, 4] and complete,
            note="components are complete graphs on 4 vertices" if complete else "",
        )
    return Outcome(len(components), 1, len(components) == 1)


@claim("non_bipartite", Suite.STRUCTURE, ref="non-bipartite")
def _non_bipartite(ctx: InstanceContext) -> Outcome:
    oracle = ctx.oracle()
    triangle = triangle_witness(oracle)
    witness = is_cycle_in(oracle, triangle)
    if oracle.vertex_count > ctx.config.max_vertices:
        return Outcome(
            not witness,
            False,
            witness,
            note=f"triangle {list(triangle)} checked on the adjacency oracle",
        )
    verdict = is_bipartite(ctx.explicit())
    cycle = verdict.odd_cycle or ()
    return Outcome(
        verdict.bipartite,
        False,
        not verdict.bipartite and witness,
        note=f"triangle {list(triangle)}; BFS odd cycle of length {len(cycle)}",
    )


@claim("diameter", Suite.STRUCTURE, _large, ref="diameter-two")
def _diameter(ctx: InstanceContext) -> Outcome:
    computed = diameter_vertex_transitive(ctx.graph_like())
    return Outcome(computed, 2, computed == 2)


@claim("common_neighbor", Suite.STRUCTURE, _large_base, ref="two-derangement-products")
def _common_neighbor(ctx: InstanceContext) -> Outcome:
    result = common_neighbor_check(ctx.base_graph())
    return Outcome(result.min_common, ">= 1", result.ok, note=f"fewest at pair {result.worst_pair}")


@claim("product_decomposition", Suite.STRUCTURE, _large_base, ref="two-derangement-products")
def _product_decomposition(ctx: InstanceContext) -> Outcome:
    computed = product_decomposition_check(ctx.n)
    return Outcome(computed, True, computed)


@claim("double_cover", Suite.STRUCTURE, _large_base, ref="tensor-connectivity")
def _double_cover(ctx: InstanceContext) -> Outcome:
    cover = tensor_product(ctx.base_graph(), complete_graph(2), ctx.config.max_vertices)
    computed = {
        "bipartite": is_bipartite(cover).bipartite,
        "components": len(connected_components(cover)),
    }
    expected = {"bipartite": True, "components": 1}
    return Outcome(computed, expected, computed == expected)


@claim("expansion", Suite.STRUCTURE, lambda n, q: n == 3 and q == 1, ref="bipartite-expansion")
def _expansion(ctx: InstanceContext) -> Outcome:
    cover = tensor_product(ctx.base_graph(), complete_graph(2), ctx.config.max_vertices)
    computed = bipartite_expansion_check(cover)
    return Outcome(computed, True, computed)


# spectra


@claim("least_eigenvalue", Suite.SPECTRA, ref="least-eigenvalue")
def _least_eigenvalue(ctx: InstanceContext) -> Outcome:
    least = ctx.spectrum().least
    computed = snap_integer(least)
    base = BASE_LEAST_EIGENVALUE.get(ctx.n)
    if base is None:
        return Outcome(computed if computed is not None else least, None)
    expected = base * even_derangement_count(ctx.n) ** (ctx.q - 1)
    return Outcome(computed, expected, computed == expected)


@claim("spectrum_integral", Suite.SPECTRA, _base_only, ref="least-eigenvalue")
def _spectrum_integral(ctx: InstanceContext) -> Outcome:
    computed = ctx.base_spectrum().is_integral()
    return Outcome(computed, True, computed)


@claim(
    "spectrum_regression", Suite.SPECTRA, lambda n, q: n == 5 and q == 1, ref="least-eigenvalue"
)
def _spectrum_regression(ctx: InstanceContext) -> Outcome:
    computed = [[snap_integer(v), m] for v, m in ctx.base_spectrum().grouped()]
    return Outcome(computed, SPECTRUM_N5, computed == SPECTRUM_N5)


@claim("spectrum_identities", Suite.SPECTRA, _base_only, ref="least-eigenvalue")
def _spectrum_identities(ctx: InstanceContext) -> Outcome:
    graph = ctx.base_graph()
    result = spectrum_identities(ctx.base_spectrum(), graph.edge_count, int(graph.degree))
    computed = {"trace": round(result.trace, 6), "energy": round(result.energy, 6)}
    expected = {"trace": 0, "energy": 2 * graph.edge_count}
    return Outcome(computed, expected, result.ok)


@claim("ratio_bound", Suite.SPECTRA, _large, ref="ratio-bound")
def _ratio_bound(ctx: InstanceContext) -> Outcome:
    oracle = ctx.oracle()
    least = snap_integer(ctx.spectrum().least)
    expected = b_set_size(ctx.n, ctx.q)
    if least is None:
        return Outcome(ctx.spectrum().least, expected, False, note="least eigenvalue not integral")
    bound = ratio_bound_exact(oracle.vertex_count, oracle.degree, least)
    computed = int(bound) if bound.denominator == 1 else str(bound)
    return Outcome(computed, expected, bound == expected)


# extremal


@claim("b_sets", Suite.EXTREMAL, _large, ref="maximum-independent-sets")
def _b_sets(ctx: InstanceContext) -> Outcome:
    graph = ctx.graph_like()
    family = b_family(ctx.n, ctx.q)
    computed = {
        "count": len(family),
        "independent": all(verify_independent(graph, s) for s in family.values()),
        "maximal": all(is_maximal_independent(graph, s) for s in family.values()),
        "sizes": sorted({s.cardinality for s in family.values()}),
    }
    expected = {
        "count": ctx.q * ctx.n**2,
        "independent": True,
        "maximal": True,
        "sizes": [b_set_size(ctx.n, ctx.q)],
    }
    return Outcome(computed, expected, computed == expected)


def _exact_search_allowed(ctx: InstanceContext) -> bool:
    return ctx.q == 1 and (ctx.n == 5 or ctx.config.stretch)


@claim("alpha", Suite.EXTREMAL, _large, ref="independence-number")
def _alpha(ctx: InstanceContext) -> Outcome:
    expected = b_set_size(ctx.n, ctx.q)
    if _exact_search_allowed(ctx) and ctx.oracle().vertex_count <= MAX_SEARCH_VERTICES:
        sets = ctx.maximum_independent_sets()
        computed = sets[0].cardinality if sets else 0
        return Outcome(computed, expected, computed == expected, note="exact search")
    bracket = certified_alpha(ctx.n, ctx.q, ctx.base_spectrum())
    return Outcome(
        bracket.alpha,
        expected,
        bracket.alpha == expected,
        note=f"independent set of size {bracket.lower}, ratio bound {bracket.upper}",
    )


@claim("mis_uniqueness", Suite.EXTREMAL, _large_base, ref="maximum-independent-sets")
def _mis_uniqueness(ctx: InstanceContext) -> Outcome:
    expected = ctx.n**2
    if not _exact_search_allowed(ctx):
        return Outcome(None, expected, skip_reason=SKIP_STRETCH, note="enable with --stretch")
    found = {s.bits for s in ctx.maximum_independent_sets()}
    canonical = {s.bits for s in b_family(ctx.n, 1).values()}
    return Outcome(len(found), expected, found == canonical)


@claim("eigenspace_certificate", Suite.EXTREMAL, _large, ref="maximum-independent-sets")
def _eigenspace_certificate(ctx: InstanceContext) -> Outcome:
    base = ctx.base_spectrum()
    least = ctx.spectrum().least
    if ctx.q == 1:
        basis = base.eigenspace(least)
    else:
        basis = tensor_eigenspace(base, ctx.q, least)
    alpha = b_set_size(ctx.n, ctx.q)
    vertex_count = ctx.oracle().vertex_count
    family = b_family(ctx.n, ctx.q)
    computed = sum(
        eigenspace_certificate(s, basis, alpha, vertex_count) for s in family.values()
    )
    return Outcome(
        computed,
        len(family),
        computed == len(family),
        note=f"least eigenspace of dimension {basis.shape[1]}",
    )


def _clique_witness(ctx: InstanceContext) -> VertexSet:
    if ctx.q == 1:
        return max_clique(ctx.base_graph(), vertex_transitive=True, deadline=ctx.deadline)
    if ctx.n % 2:
        return find_clique_powers_of_cycle(ctx.n, ctx.q)
    base = max_clique(ctx.base_graph(), vertex_transitive=True, deadline=ctx.deadline)
    return diagonal_clique(base, ctx.q)


@claim("clique_number", Suite.EXTREMAL, ref="clique-and-chromatic-number")
def _clique_number(ctx: InstanceContext) -> Outcome:
    if ctx.q == 1:
        computed = max_clique_exact(ctx.base_graph(), vertex_transitive=True, deadline=ctx.deadline)
        return Outcome(computed, ctx.n, computed == ctx.n, note="exact search")
    clique = _clique_witness(ctx)
    valid = is_clique(ctx.oracle(), clique)
    return Outcome(
        clique.cardinality,
        ctx.n,
        valid and clique.cardinality == ctx.n,
        note="diagonal clique; the proper n-colouring bounds omega from above",
    )


@claim("chromatic_number", Suite.EXTREMAL, _large, ref="clique-and-chromatic-number")
def _chromatic_number(ctx: InstanceContext) -> Outcome:
    graph = ctx.graph_like()
    coloring = canonical_coloring(ctx.n, ctx.q)
    proper = coloring.is_proper(graph)
    rows = [s for d, s in b_family(ctx.n, ctx.q).items() if d.k == 1 and d.i == 1]
    classes_are_rows = coloring.classes() == rows
    clique = _clique_witness(ctx)
    clique_ok = is_clique(ctx.oracle(), clique) and clique.cardinality == coloring.num_colors
    identity = b_set_size(ctx.n, ctx.q) * clique.cardinality == ctx.oracle().vertex_count
    computed = coloring.num_colors if proper and clique_ok else None
    return Outcome(
        computed,
        ctx.n,
        computed == ctx.n and classes_are_rows and identity,
        note="colour classes are the canonical sets fixing the image of 1"
        if classes_are_rows
        else "colour classes differ from the canonical sets",
    )


@claim("intersection_table", Suite.EXTREMAL, _large, ref="canonical-set-intersections")
def _intersection_table(ctx: InstanceContext) -> Outcome:
    table = intersection_size_table(ctx.n, ctx.q)
    computed = {str(case): entry.computed for case, entry in table.items()}
    expected = {str(case): entry.expected for case, entry in table.items()}
    constant = all(entry.constant for entry in table.values())
    return Outcome(computed, expected, computed == expected and constant)


@claim("intersection_erratum", Suite.EXTREMAL, _large, ref="canonical-set-intersections")
def _intersection_erratum(ctx: InstanceContext) -> Outcome:
    table = intersection_size_table(ctx.n, ctx.q)
    measured = table[CaseType.DISTINCT_POINTS].computed
    stated = stated_distinct_points_value(ctx.n, ctx.q)
    if measured != stated:
        _LOGGER.warning(
            "Distinct-points intersection for n=%d q=%d: stated %d, measured %d",
            ctx.n,
            ctx.q,
            stated,
            measured,
        )
    return Outcome(
        measured,
        stated,
        note="printed value equals |B|; the measured size is (n-2)! n!^(q-1) / 2^q",
    )


@claim("disjointness_rule", Suite.EXTREMAL, _large, ref="canonical-set-intersections")
def _disjointness_rule(ctx: InstanceContext) -> Outcome:
    computed = disjointness_rule_check(ctx.n, ctx.q)
    return Outcome(computed, True, computed)


@claim("cover_characterization", Suite.EXTREMAL, _large, ref="canonical-set-covers")
def _cover_characterization(ctx: InstanceContext) -> Outcome:
    result = cover_characterization_check(ctx.n, ctx.q)
    expected = 2 * ctx.q * ctx.n
    return Outcome(
        result.count,
        expected,
        result.count == expected and result.matches_lines,
        note=f"scanned {result.subsets} subsets",
    )


@claim(
    "no_homomorphism", Suite.EXTREMAL, lambda n, q: n >= 5 and q >= 2, ref="no-homomorphism"
)
def _no_homomorphism(ctx: InstanceContext) -> Outcome:
    result = no_homomorphism_instance_check(ctx.n, ctx.q, ctx.base_spectrum())
    computed = {
        "homomorphism": result.homomorphism,
        "ratios_equal": result.ratios_equal,
        "preimage_is_canonical": result.preimage_is_canonical,
    }
    expected = dict.fromkeys(computed, True)
    return Outcome(computed, expected, result.ok)


@claim("j_partition", Suite.EXTREMAL, lambda n, q: n >= 5 and q == 2, ref="j-partition")
def _j_partition(ctx: InstanceContext) -> Outcome:
    report = j_partition_structure(ctx.n, max_vertices=ctx.config.max_vertices)
    computed = {
        "sizes": report.sizes,
        "bipartite": report.bipartite,
        "regular_between": report.regular_between,
        "cross_degree": report.cross_degree,
        "components": report.components,
    }
    return Outcome(computed, {"sizes": report.expected}, note="connectivity recorded, not asserted")


# aut


@claim("aut_edges", Suite.AUT, _large, ref="automorphism-group")
def _aut_edges(ctx: InstanceContext) -> Outcome:
    graph = ctx.graph_like()
    generators = claimed_generators(ctx.n, ctx.q)
    failing = [str(a.kind) for a in generators if not preserves_edges(a, graph, ctx.config.seed)]
    return Outcome(len(generators) - len(failing), len(generators), not failing)


def _bsgs_in_range(ctx: InstanceContext) -> bool:
    return ctx.oracle().vertex_count <= MAX_BSGS_DOMAIN


@claim("aut_order", Suite.AUT, _large, ref="automorphism-group")
def _aut_order(ctx: InstanceContext) -> Outcome:
    claimed = claimed_group_order(ctx.n, ctx.q)
    if not _bsgs_in_range(ctx):
        return Outcome(
            None,
            claimed,
            skip_reason=SKIP_NOT_RUN,
            note=f"{ctx.oracle().vertex_count} points exceed the BSGS domain cap",
        )
    computed = ctx.bsgs().order
    return Outcome(computed, claimed, computed == claimed)


@claim("order_ladder", Suite.AUT, _large, ref="automorphism-group")
def _order_ladder(ctx: InstanceContext) -> Outcome:
    n, q = ctx.n, ctx.q
    translations = (math.factorial(n) // 2) ** q
    with_conjugations = translations * math.factorial(n) ** q * math.factorial(q)
    expected = [translations, with_conjugations, claimed_group_order(n, q)]
    computed = [order for _, order in order_ladder(n, q, ctx.config.seed)]
    return Outcome(computed, expected, computed == expected)


@claim("faithful_b_action", Suite.AUT, _large, ref="canonical-set-action")
def _faithful_b_action(ctx: InstanceContext) -> Outcome:
    result = faithful_B_action_check(ctx.n, ctx.q, ctx.config.seed, ctx.bsgs())
    return Outcome(result.image_order, result.source_order, result.faithful)


@claim("omega_action", Suite.AUT, _large, ref="canonical-set-action")
def _omega_action(ctx: InstanceContext) -> Outcome:
    q = ctx.q
    identity = tuple(range(q))
    required = {identity}
    for k in range(q - 1):
        swapped = list(identity)
        swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
        required.add(tuple(swapped))
    expected = {
        "blockCoherent": True,
        "coordinateMaps": sorted(list(m) for m in required),
        "rowColumnSwaps": q,
    }
    try:
        result = omega_action_check(ctx.n, q, ctx.config.seed, bsgs=ctx.bsgs())
    except BlockCoherenceError as err:
        return Outcome({"blockCoherent": False}, expected, False, note=str(err))
    computed = {
        "blockCoherent": True,
        "coordinateMaps": sorted(list(m) for m in result.coordinate_maps),
        "rowColumnSwaps": result.row_column_swaps,
    }
    # translations give the identity map, inversions one swap each
    passed = required <= result.coordinate_maps and result.row_column_swaps >= q
    return Outcome(
        computed,
        expected,
        passed,
        note=f"{result.elements_checked} elements; maps and swaps must include the expected ones",
    )


@claim("full_aut_order", Suite.AUT, _large_base, ref="automorphism-group")
def _full_aut_order(ctx: InstanceContext) -> Outcome:
    claimed = claimed_group_order(ctx.n, ctx.q)
    if ctx.n >= 6 and ctx.needs_stretch():
        return Outcome(None, claimed, skip_reason=SKIP_STRETCH, note="enable with --stretch")
    computed = full_automorphism_order(ctx.base_graph(), ctx.deadline)
    return Outcome(computed, claimed, computed == claimed)


@claim("non_commuting", Suite.AUT, _large_base, ref="automorphism-group")
def _non_commuting(ctx: InstanceContext) -> Outcome:
    witness = non_commuting_witness(ctx.n)
    if witness is None:
        return Outcome(None, "witness", False)
    return Outcome(
        str(witness.translation),
        "witness",
        True,
        note=f"vertex {witness.vertex} goes to {witness.first} and {witness.second}",
    )


def _status(outcome: Outcome) -> ClaimStatus:
    if outcome.skip_reason is not None:
        return ClaimStatus.SKIPPED
    if outcome.passed is None:
        return ClaimStatus.INFORMATIONAL
    return ClaimStatus.PASS if outcome.passed else ClaimStatus.FAIL


class Verifier:
    """Runs every applicable claim of the selected suites on every selected instance."""

    def __init__(self, config: RunConfig) -> None:
        """Prepare an empty artefact store."""
        self.config = config
        self.store = ArtifactStore()

    def plan(self) -> list[tuple[ClaimFamily, int, int]]:
        """Claims to run, ordered by instance, then suite, then registration."""
        suites = set(self.config.suites)
        return [
            (family, n, q)
            for n in self.config.n_values
            for q in self.config.q_values
            for suite in Suite
            for family in CLAIM_FAMILIES.values()
            if family.suite is suite and suite in suites and family.applies(n, q)
        ]

    def _run_one(self, item: tuple[ClaimFamily, int, int]) -> ClaimRecord:
        family, n, q = item
        claim_id = family.claim_id(n, q)
        started = time.perf_counter()
        ctx = InstanceContext(
            n, q, self.config, self.store, time.monotonic() + self.config.time_budget
        )
        try:
            outcome = family.runner(ctx)
        except (ResourceCapError, SearchBudgetExceededError) as err:
            outcome = Outcome(None, None, skip_reason=SKIP_RESOURCE, note=str(err))
        except GuardError as err:
            outcome = Outcome(None, None, skip_reason=SKIP_GUARD, note=str(err))
        except Exception as err:
            _LOGGER.exception("Unexpected error in claim %s", claim_id)
            outcome = Outcome(None, None, False, note=f"{type(err).__name__}: {err}")
        record = ClaimRecord(
            claim_id=claim_id,
            statement=family.statement,
            computed=outcome.computed,
            expected=outcome.expected,
            status=_status(outcome),
            runtime_ms=round((time.perf_counter() - started) * 1000),
            note=outcome.note,
            skip_reason=outcome.skip_reason,
            ref=family.ref,
        )
        if record.status in (ClaimStatus.SKIPPED, ClaimStatus.INFORMATIONAL):
            _LOGGER.warning("%s %s: %s", record.status, claim_id, record.note)
        else:
            _LOGGER.info("%s %s (%d ms)", record.status, claim_id, record.runtime_ms)
        return record

    def run(self) -> Report:
        """Execute the plan; records keep plan order whatever the job count."""
        plan = self.plan()
        _LOGGER.info("Running %d claims with %d job(s)", len(plan), self.config.jobs)
        if self.config.jobs > 1:
            with ThreadPoolExecutor(max_workers=self.config.jobs) as pool:
                records = list(pool.map(self._run_one, plan))
        else:
            records = [self._run_one(item) for item in plan]
        return Report(config=self.config, records=records)


def run(config: RunConfig) -> Report:
    """Verify every applicable claim for the configured instances."""
    return Verifier(config).run()
