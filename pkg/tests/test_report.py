"""Unit tests for claim records, report rendering and artifact export."""

from __future__ import annotations

import json
import unittest
from pathlib import Path

import numpy as np
import pytest

from even_derangement.config import RunConfig
from even_derangement.const import Artifact, Suite
from even_derangement.exceptions import ResourceCapError
from even_derangement.report import (
    SKIP_RESOURCE,
    SKIP_STRETCH,
    ClaimRecord,
    ClaimStatus,
    Report,
    export,
    to_jsonable,
)


def record(claim_id: str, status: ClaimStatus, skip_reason: str | None = None) -> ClaimRecord:
    """A record with fixed computed and expected values."""
    return ClaimRecord(
        claim_id=claim_id,
        statement="statement",
        computed=1,
        expected=1,
        status=status,
        skip_reason=skip_reason,
    )


class TestClaimRecord(unittest.TestCase):
    """Test cases for ClaimRecord serialization."""

    def test_key_set(self) -> None:
        """Test the fixed camelCase key set."""
        data = record("alpha_n5_q1", ClaimStatus.PASS).to_json()
        assert set(data) == {
            "claimId",
            "paperRef",
            "statement",
            "computed",
            "expected",
            "status",
            "runtimeMs",
            "note",
            "skipReason",
        }
        assert data["status"] == "pass"
        assert data["skipReason"] is None
        assert data["paperRef"] == ""

    def test_reference_is_emitted(self) -> None:
        """Test the cited result key appears under paperRef."""
        data = ClaimRecord(
            claim_id="alpha_n5_q1",
            statement="statement",
            status=ClaimStatus.PASS,
            ref="independence-number",
        ).to_json()
        assert data["paperRef"] == "independence-number"

    def test_numpy_values(self) -> None:
        """Test numpy and enum values become plain JSON types."""
        value = {
            "a": np.int64(3),
            "b": np.float32(0.5),
            "c": np.array([1, 2]),
            "d": frozenset({2, 1}),
            "e": Suite.AUT,
            "f": np.bool_(True),
        }
        assert to_jsonable(value) == {"a": 3, "b": 0.5, "c": [1, 2], "d": [1, 2], "e": "aut", "f": True}
        json.dumps(to_jsonable(value))


class TestReport(unittest.TestCase):
    """Test cases for exit codes and rendering."""

    def setUp(self) -> None:
        """Set up a default configuration."""
        self.config = RunConfig()

    def test_exit_code_ok(self) -> None:
        """Test passes, informational and stretch skips exit 0."""
        report = Report(
            self.config,
            [
                record("a_n5_q1", ClaimStatus.PASS),
                record("b_n5_q1", ClaimStatus.INFORMATIONAL),
                record("c_n6_q1", ClaimStatus.SKIPPED, SKIP_STRETCH),
            ],
        )
        assert report.exit_code == 0

    def test_exit_code_resource(self) -> None:
        """Test a resource skip exits 3."""
        report = Report(self.config, [record("a_n5_q1", ClaimStatus.SKIPPED, SKIP_RESOURCE)])
        assert report.exit_code == 3

    def test_failure_wins(self) -> None:
        """Test any failure exits 1, even with a resource skip."""
        report = Report(
            self.config,
            [
                record("a_n5_q1", ClaimStatus.SKIPPED, SKIP_RESOURCE),
                record("b_n5_q1", ClaimStatus.FAIL),
            ],
        )
        assert report.exit_code == 1

    def test_json_document(self) -> None:
        """Test the JSON layout and key order."""
        report = Report(self.config, [record("a_n5_q1", ClaimStatus.PASS)])
        text = report.to_json()
        document = json.loads(text)
        assert set(document) == {"meta", "claims"}
        assert document["meta"]["config"]["n_values"] == [5]
        assert document["claims"][0]["claimId"] == "a_n5_q1"
        assert text == json.dumps(document, indent=2, sort_keys=True) + "\n"

    def test_text(self) -> None:
        """Test one line per claim plus a summary."""
        report = Report(
            self.config, [record("a_n5_q1", ClaimStatus.PASS), record("b_n5_q1", ClaimStatus.FAIL)]
        )
        lines = report.to_text().splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("PASS")
        assert "b_n5_q1" in lines[1]
        assert lines[2].startswith("2 claims: 1 pass, 1 fail")

    def test_render_follows_format(self) -> None:
        """Test render() picks JSON when configured."""
        config = RunConfig.from_mapping({"format": "json"})
        assert json.loads(Report(config).render())["claims"] == []


def test_export_edges(tmp_path: Path) -> None:
    """Test the edge list of AΓ_3."""
    config = RunConfig.from_mapping({"n_values": [3], "q_values": [1], "out_path": str(tmp_path)})
    paths = export(config, Artifact.EDGES)
    assert paths == [tmp_path / "edges_n3_q1.txt"]
    assert paths[0].read_text(encoding="utf-8") == "0 1\n0 2\n1 2\n"


def test_export_spectrum(tmp_path: Path) -> None:
    """Test the spectrum CSV of AΓ_5 and its square."""
    config = RunConfig.from_mapping({"n_values": [5], "q_values": [1, 2], "out_path": str(tmp_path)})
    base, square = export(config, Artifact.SPECTRUM)
    assert base.read_text(encoding="utf-8") == "eigenvalue,multiplicity\n24,1\n4,18\n0,25\n-6,16\n"
    lines = square.read_text(encoding="utf-8").splitlines()
    assert lines[1] == "576,1"
    assert lines[-1] == "-144,32"


def test_export_b_sets(tmp_path: Path) -> None:
    """Test the canonical family of AΓ_5 as JSON."""
    config = RunConfig.from_mapping({"n_values": [5], "q_values": [1], "out_path": str(tmp_path)})
    (path,) = export(config, Artifact.B_SETS)
    sets = json.loads(path.read_text(encoding="utf-8"))
    assert len(sets) == 25
    assert {len(s["members"]) for s in sets} == {12}
    assert (sets[0]["k"], sets[0]["i"], sets[0]["j"]) == (1, 1, 1)


def test_export_automorphisms(tmp_path: Path) -> None:
    """Test generator records carry image tables when the graph is small."""
    config = RunConfig.from_mapping({"n_values": [5], "q_values": [1], "out_path": str(tmp_path)})
    (path,) = export(config, Artifact.AUTOMORPHISMS)
    records = json.loads(path.read_text(encoding="utf-8"))
    assert all(len(r["images"]) == 60 for r in records)


def test_export_cap(tmp_path: Path) -> None:
    """Test an edge list above max_vertices is refused."""
    config = RunConfig.from_mapping(
        {"n_values": [5], "q_values": [2], "out_path": str(tmp_path), "max_vertices": 100}
    )
    with pytest.raises(ResourceCapError):
        export(config, Artifact.EDGES)
