"""Unit tests for the claim catalogue and the verifier."""

from __future__ import annotations

import json
import unittest

from even_derangement.claims import (
    CLAIM_FAMILIES,
    CLAIM_TEXT,
    ClaimFamily,
    InstanceContext,
    Outcome,
    Verifier,
    run,
)
from even_derangement.config import RunConfig
from even_derangement.const import Suite
from even_derangement.report import (
    SKIP_GUARD,
    SKIP_NOT_RUN,
    SKIP_RESOURCE,
    SKIP_STRETCH,
    ClaimStatus,
)


def by_id(report_records: list) -> dict:
    """Records keyed by claim id."""
    return {r.claim_id: r for r in report_records}


class TestCatalogue(unittest.TestCase):
    """Test cases for the registered claim families."""

    def test_every_statement_is_registered(self) -> None:
        """Test the families and the statement file name the same claims."""
        names = {
            name for suite in CLAIM_TEXT["suites"].values() for name in suite["claims"]
        }
        assert set(CLAIM_FAMILIES) == names

    def test_suites_match_statement_file(self) -> None:
        """Test each family sits under its own suite in the statement file."""
        for family in CLAIM_FAMILIES.values():
            assert family.name in CLAIM_TEXT["suites"][str(family.suite)]["claims"]

    def test_claim_id(self) -> None:
        """Test identifiers carry n and q."""
        assert CLAIM_FAMILIES["alpha"].claim_id(5, 2) == "alpha_n5_q2"

    def test_every_reference_is_a_result(self) -> None:
        """Test each family cites a key of the results manifest."""
        for family in CLAIM_FAMILIES.values():
            assert family.ref in CLAIM_TEXT["results"], family.name

    def test_results_are_covered(self) -> None:
        """Test suite all plans a claim for every in-scope result and listed instance."""
        for key, result in CLAIM_TEXT["results"].items():
            if not result["inScope"]:
                assert result["instances"] == [], key
                continue
            assert result["instances"], key
            for n, q in result["instances"]:
                config = RunConfig.from_mapping({"n_values": [n], "q_values": [q]})
                refs = {family.ref for family, _, _ in Verifier(config).plan()}
                assert key in refs, (key, n, q)

    def test_every_result_is_cited(self) -> None:
        """Test no in-scope result is left without a claim family."""
        cited = {family.ref for family in CLAIM_FAMILIES.values()}
        in_scope = {k for k, v in CLAIM_TEXT["results"].items() if v["inScope"]}
        assert in_scope <= cited
        assert "j-partition-connectivity" not in cited


class TestPlan(unittest.TestCase):
    """Test cases for Verifier.plan."""

    def test_order(self) -> None:
        """Test instances come first, then suites in catalogue order."""
        config = RunConfig.from_mapping({"n_values": [5], "q_values": [1, 2]})
        plan = Verifier(config).plan()
        instances = [(n, q) for _, n, q in plan]
        assert instances == sorted(instances)
        first_instance = [family.suite for family, n, q in plan if q == 1]
        order = list(Suite)
        assert [order.index(s) for s in first_instance] == sorted(
            order.index(s) for s in first_instance
        )

    def test_applicability(self) -> None:
        """Test base-only claims drop out of the square."""
        config = RunConfig.from_mapping({"n_values": [5], "q_values": [2]})
        names = {family.name for family, _, _ in Verifier(config).plan()}
        assert "spectrum_regression" not in names
        assert "no_homomorphism" in names
        assert "j_partition" in names

    def test_suite_filter(self) -> None:
        """Test only the selected suites are planned."""
        config = RunConfig.from_mapping({"n_values": [5], "q_values": [1], "suites": ["aut"]})
        assert {family.suite for family, _, _ in Verifier(config).plan()} == {Suite.AUT}


class TestRuns(unittest.TestCase):
    """Test cases for whole verifier runs."""

    def test_structure_n3(self) -> None:
        """Test every structure claim holds for AΓ_3."""
        config = RunConfig.from_mapping(
            {"n_values": [3], "q_values": [1], "suites": ["structure"]}
        )
        report = run(config)
        assert report.records
        assert all(r.status is ClaimStatus.PASS for r in report.records)
        assert report.exit_code == 0

    def test_connectivity_n4(self) -> None:
        """Test AΓ_4 is recognised as three complete graphs."""
        config = RunConfig.from_mapping(
            {"n_values": [4], "q_values": [1], "suites": ["structure"]}
        )
        records = by_id(run(config).records)
        assert records["connectivity_n4_q1"].status is ClaimStatus.PASS
        assert records["connectivity_n4_q1"].computed == 3
        assert records["connection_subgroup_n4_q1"].computed == 4

    def test_base_graph_n5(self) -> None:
        """Test every claim about AΓ_5 passes or is informational."""
        report = run(RunConfig.from_mapping({"n_values": [5], "q_values": [1]}))
        failed = [r.claim_id for r in report.records if r.status is ClaimStatus.FAIL]
        assert failed == []
        records = by_id(report.records)
        assert records["alpha_n5_q1"].computed == 12
        assert records["mis_uniqueness_n5_q1"].computed == 25
        assert records["full_aut_order_n5_q1"].computed == 14_400
        assert records["intersection_erratum_n5_q1"].status is ClaimStatus.INFORMATIONAL
        assert report.exit_code == 0
        for record in report.records:
            name = record.claim_id.removesuffix("_n5_q1")
            assert record.to_json()["paperRef"] == CLAIM_FAMILIES[name].ref

    def test_resource_skip(self) -> None:
        """Test a materialization above max_vertices is skipped and exits 3."""
        config = RunConfig.from_mapping(
            {"n_values": [5], "q_values": [1], "suites": ["structure"], "max_vertices": 100}
        )
        report = run(config)
        record = by_id(report.records)["double_cover_n5_q1"]
        assert record.status is ClaimStatus.SKIPPED
        assert record.skip_reason == SKIP_RESOURCE
        assert report.exit_code == 3

    def test_non_bipartite_above_cap(self) -> None:
        """Test a triangle on the oracle decides the square without materializing it."""
        config = RunConfig.from_mapping(
            {"n_values": [5], "q_values": [2], "suites": ["structure"], "max_vertices": 100}
        )
        record = by_id(run(config).records)["non_bipartite_n5_q2"]
        assert record.status is ClaimStatus.PASS
        assert record.computed is False
        assert "adjacency oracle" in record.note


class TestSingleClaims(unittest.TestCase):
    """Test cases for Verifier._run_one."""

    def setUp(self) -> None:
        """Set up a verifier with default configuration."""
        self.verifier = Verifier(RunConfig())

    def test_guard_skip(self) -> None:
        """Test the intersection table refuses (n!/2)^q above its cap."""
        record = self.verifier._run_one((CLAIM_FAMILIES["intersection_table"], 6, 2))
        assert record.status is ClaimStatus.SKIPPED
        assert record.skip_reason == SKIP_GUARD

    def test_stretch_skip(self) -> None:
        """Test the n=6 enumeration waits for --stretch."""
        record = self.verifier._run_one((CLAIM_FAMILIES["mis_uniqueness"], 6, 1))
        assert record.skip_reason == SKIP_STRETCH
        assert record.expected == 36

    def test_not_run(self) -> None:
        """Test the stabilizer chain is not attempted on 129600 points."""
        record = self.verifier._run_one((CLAIM_FAMILIES["aut_order"], 6, 2))
        assert record.skip_reason == SKIP_NOT_RUN
        assert record.expected == 2 * 720**4

    def test_non_bipartite_n6_square(self) -> None:
        """Test AΓ_6 squared (129600 vertices) is shown non-bipartite."""
        record = self.verifier._run_one((CLAIM_FAMILIES["non_bipartite"], 6, 2))
        assert record.status is ClaimStatus.PASS
        assert record.skip_reason is None

    def test_omega_action_reports_measured_maps(self) -> None:
        """Test coordinate maps and swaps come from the group, not from constants."""
        for q in (1, 2):
            record = self.verifier._run_one((CLAIM_FAMILIES["omega_action"], 5, q))
            assert record.status is ClaimStatus.PASS, record.note
            assert record.computed["blockCoherent"]
            assert list(range(q)) in record.computed["coordinateMaps"]
            assert record.computed["rowColumnSwaps"] >= q
            assert record.expected["rowColumnSwaps"] == q
        assert [1, 0] in record.computed["coordinateMaps"]

    def test_unexpected_error_fails(self) -> None:
        """Test an exception in a runner becomes a failed record."""

        def explode(ctx: InstanceContext) -> Outcome:
            raise ZeroDivisionError("boom")

        family = ClaimFamily(
            name="explode",
            suite=Suite.STRUCTURE,
            statement="never holds",
            applies=lambda n, q: True,
            runner=explode,
        )
        record = self.verifier._run_one((family, 5, 1))
        assert record.status is ClaimStatus.FAIL
        assert record.note == "ZeroDivisionError: boom"

    def test_informational_outcome(self) -> None:
        """Test passed=None gives an informational record."""
        family = ClaimFamily(
            name="measure",
            suite=Suite.STRUCTURE,
            statement="a measurement",
            applies=lambda n, q: True,
            runner=lambda ctx: Outcome(ctx.n, None),
        )
        record = self.verifier._run_one((family, 5, 1))
        assert record.status is ClaimStatus.INFORMATIONAL
        assert record.computed == 5


class TestDeterminism(unittest.TestCase):
    """Test cases for reproducible reports."""

    def setUp(self) -> None:
        """Set up a small structure run."""
        self.data = {"n_values": [3, 5], "q_values": [1], "suites": ["structure"]}

    @staticmethod
    def _without_runtime(text: str) -> dict:
        document = json.loads(text)
        for claim in document["claims"]:
            del claim["runtimeMs"]
        return document

    def test_json_is_stable(self) -> None:
        """Test two runs agree apart from timings."""
        config = RunConfig.from_mapping({**self.data, "format": "json"})
        first = self._without_runtime(run(config).to_json())
        second = self._without_runtime(run(config).to_json())
        assert first == second

    def test_parallel_keeps_order(self) -> None:
        """Test --jobs 2 keeps plan order."""
        serial = run(RunConfig.from_mapping(self.data))
        parallel = run(RunConfig.from_mapping({**self.data, "jobs": 2}))
        assert [r.claim_id for r in parallel.records] == [r.claim_id for r in serial.records]
        assert [r.status for r in parallel.records] == [r.status for r in serial.records]
