"""Claim records, report rendering and artifact export."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from .autgroup import automorphisms_to_json, claimed_generators
from .cayley_graph import export_edge_list, materialize, tensor_power_oracle
from .const import (
    EXIT_CLAIM_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE_ABORT,
    VERSION,
    Artifact,
)
from .exceptions import ResourceCapError
from .extremal import b_family, base_spectrum_of
from .spectral import tensor_spectrum

if TYPE_CHECKING:
    from .config import RunConfig

_LOGGER = logging.getLogger(__name__)

SKIP_RESOURCE = "resource"
SKIP_GUARD = "guard"
SKIP_STRETCH = "stretch"
SKIP_NOT_RUN = "not run"


class ClaimStatus(StrEnum):
    """Outcome of one claim."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    INFORMATIONAL = "informational"


def to_jsonable(value: Any) -> Any:
    """Plain JSON types for numpy scalars, arrays, tuples, sets and enums."""
    if isinstance(value, StrEnum):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, set | frozenset):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    return value


@dataclass(kw_only=True)
class ClaimRecord:
    """Result of checking one claim on one instance."""

    claim_id: str
    statement: str
    computed: Any = None
    expected: Any = None
    status: ClaimStatus
    runtime_ms: int = 0
    note: str = ""
    skip_reason: str | None = None
    ref: str = ""

    def to_json(self) -> dict[str, Any]:
        """JSON-ready mapping with a fixed key set."""
        return {
            "claimId": self.claim_id,
            "paperRef": self.ref,
            "statement": self.statement,
            "computed": to_jsonable(self.computed),
            "expected": to_jsonable(self.expected),
            "status": str(self.status),
            "runtimeMs": self.runtime_ms,
            "note": self.note,
            "skipReason": self.skip_reason,
        }


@dataclass
class Report:
    """All claim records of one run."""

    config: RunConfig
    records: list[ClaimRecord] = field(default_factory=list)

    def counts(self) -> dict[ClaimStatus, int]:
        """Number of records per status."""
        result = dict.fromkeys(ClaimStatus, 0)
        for record in self.records:
            result[record.status] += 1
        return result

    @property
    def exit_code(self) -> int:
        """1 on any failure, else 3 if a resource cap stopped a claim, else 0."""
        if any(r.status is ClaimStatus.FAIL for r in self.records):
            return EXIT_CLAIM_FAILURE
        if any(r.skip_reason == SKIP_RESOURCE for r in self.records):
            return EXIT_RESOURCE_ABORT
        return EXIT_OK

    def to_json(self) -> str:
        """{meta: {config, version}, claims: [...]}, keys sorted."""
        document = {
            "meta": {"config": self.config.to_json(), "version": VERSION},
            "claims": [r.to_json() for r in self.records],
        }
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        """One line per claim and a summary line."""
        lines = []
        for r in self.records:
            computed = json.dumps(to_jsonable(r.computed))
            expected = json.dumps(to_jsonable(r.expected))
            line = (
                f"{r.status.upper():<13} {r.claim_id:<32} "
                f"computed={computed} expected={expected} ({r.runtime_ms} ms)"
            )
            if r.note:
                line += f"  # {r.note}"
            lines.append(line)
        summary = ", ".join(f"{count} {status}" for status, count in self.counts().items())
        lines.append(f"{len(self.records)} claims: {summary}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        """Text or JSON according to the configured format."""
        return self.to_json() if self.config.format == "json" else self.to_text()


def _check_size(count: int, config: RunConfig) -> None:
    if count > config.max_vertices:
        msg = f"{count} vertices exceed the export cap of {config.max_vertices}"
        raise ResourceCapError(msg)


def _export_one(config: RunConfig, artifact: Artifact, n: int, q: int, directory: Path) -> Path:
    oracle = tensor_power_oracle(n, q)
    match artifact:
        case Artifact.EDGES:
            path = directory / f"edges_n{n}_q{q}.txt"
            lines = export_edge_list(materialize(oracle, config.max_vertices), path)
            _LOGGER.info("Wrote %d edges to %s", lines, path)
        case Artifact.SPECTRUM:
            _check_size(oracle.order, config)
            spectrum = tensor_spectrum(base_spectrum_of(n), q)
            path = directory / f"spectrum_n{n}_q{q}.csv"
            path.write_text(spectrum.to_csv(), encoding="utf-8", newline="\n")
            _LOGGER.info("Wrote spectrum to %s", path)
        case Artifact.B_SETS:
            _check_size(oracle.vertex_count, config)
            sets = [
                {"k": d.k, "i": d.i, "j": d.j, "members": s.to_json()}
                for d, s in b_family(n, q).items()
            ]
            path = directory / f"bsets_n{n}_q{q}.json"
            path.write_text(json.dumps(sets) + "\n", encoding="utf-8")
            _LOGGER.info("Wrote %d sets to %s", len(sets), path)
        case Artifact.AUTOMORPHISMS:
            records = automorphisms_to_json(
                claimed_generators(n, q),
                include_images=oracle.vertex_count <= config.max_vertices,
            )
            path = directory / f"automorphisms_n{n}_q{q}.json"
            path.write_text(json.dumps(records) + "\n", encoding="utf-8")
            _LOGGER.info("Wrote %d automorphisms to %s", len(records), path)
    return path


def export(config: RunConfig, artifact: Artifact) -> list[Path]:
    """Write the artifact for every selected instance into the output directory."""
    directory = config.out_path if config.out_path is not None else Path()
    directory.mkdir(parents=True, exist_ok=True)
    return [
        _export_one(config, artifact, n, q, directory)
        for n in config.n_values
        for q in config.q_values
    ]
