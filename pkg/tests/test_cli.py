"""Tests for the command-line front end."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from pathlib import Path

import pytest

from even_derangement.cli import main


@pytest.fixture(autouse=True)
def restore_logging() -> Iterator[None]:
    """Put back the root handlers that main() replaces."""
    root = logging.getLogger()
    handlers = root.handlers[:]
    level = root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def test_invalid_degree_is_usage_error() -> None:
    """Test --n 2 exits 2."""
    assert main(["--n", "2"]) == 2


def test_json_report_to_file(tmp_path: Path) -> None:
    """Test a JSON report is written to --out."""
    out = tmp_path / "report.json"
    code = main(
        ["--n", "3", "--q", "1", "--suite", "structure", "--format", "json", "--out", str(out)]
    )
    assert code == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["claims"][0]["claimId"] == "connection_set_size_n3_q1"


def test_text_report_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the text report goes to stdout."""
    assert main(["--n", "3", "--q", "1", "--suite", "structure"]) == 0
    output = capsys.readouterr().out
    assert "connectivity_n3_q1" in output
    assert output.splitlines()[-1].startswith("5 claims:")


def test_export_edges(tmp_path: Path) -> None:
    """Test --export edges writes one file per instance."""
    assert main(["--n", "3", "--q", "1", "--export", "edges", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "edges_n3_q1.txt").read_text(encoding="utf-8") == "0 1\n0 2\n1 2\n"


def test_export_over_cap(tmp_path: Path) -> None:
    """Test an export above --max-vertices exits 3."""
    code = main(
        [
            "--n", "5", "--q", "1", "--export", "edges",
            "--max-vertices", "10", "--out", str(tmp_path),
        ]
    )  # fmt: skip
    assert code == 3
