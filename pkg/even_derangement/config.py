"""Run configuration and its schema."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

import voluptuous as vol

from .const import (
    CONF_CACHE_DIR,
    CONF_EXPORT,
    CONF_FORMAT,
    CONF_JOBS,
    CONF_MAX_VERTICES,
    CONF_N_VALUES,
    CONF_OUT_PATH,
    CONF_Q_VALUES,
    CONF_SEED,
    CONF_STRETCH,
    CONF_SUITES,
    CONF_TIME_BUDGET,
    CONF_TOL,
    DEFAULT_JOBS,
    DEFAULT_MAX_VERTICES,
    DEFAULT_N_VALUES,
    DEFAULT_Q_VALUES,
    DEFAULT_SEED,
    DEFAULT_TIME_BUDGET,
    DEFAULT_TOL,
    MAX_DEGREE,
    MIN_GRAPH_DEGREE,
    STRETCH_ENV,
    Artifact,
    OutputFormat,
    Suite,
)
from .exceptions import ConfigError

if TYPE_CHECKING:
    import argparse
    from collections.abc import Mapping


def _unique_sorted(values: list[int]) -> list[int]:
    return sorted(set(values))


def _expand_suites(values: list[str]) -> list[Suite]:
    suites = {Suite(v) for v in values}
    if Suite.ALL in suites:
        return [s for s in Suite if s is not Suite.ALL]
    return [s for s in Suite if s in suites]


CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_N_VALUES, default=DEFAULT_N_VALUES): vol.All(
            [vol.All(vol.Coerce(int), vol.Range(min=MIN_GRAPH_DEGREE, max=MAX_DEGREE))],
            vol.Length(min=1),
            _unique_sorted,
        ),
        vol.Optional(CONF_Q_VALUES, default=DEFAULT_Q_VALUES): vol.All(
            [vol.All(vol.Coerce(int), vol.Range(min=1))], vol.Length(min=1), _unique_sorted
        ),
        vol.Optional(CONF_SUITES, default=[Suite.ALL.value]): vol.All(
            [vol.In([s.value for s in Suite])], vol.Length(min=1), _expand_suites
        ),
        vol.Optional(CONF_TOL, default=DEFAULT_TOL): vol.All(
            vol.Coerce(float), vol.Range(min=0, min_included=False)
        ),
        vol.Optional(CONF_MAX_VERTICES, default=DEFAULT_MAX_VERTICES): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_TIME_BUDGET, default=DEFAULT_TIME_BUDGET): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): vol.All(vol.Coerce(int), vol.Range(min=1)),
        vol.Optional(CONF_FORMAT, default=OutputFormat.TEXT.value): vol.All(
            vol.In([f.value for f in OutputFormat]), vol.Coerce(OutputFormat)
        ),
        vol.Optional(CONF_OUT_PATH, default=None): vol.Any(None, vol.Coerce(Path)),
        vol.Optional(CONF_EXPORT, default=None): vol.Any(
            None, vol.All(vol.In([a.value for a in Artifact]), vol.Coerce(Artifact))
        ),
        vol.Optional(CONF_STRETCH, default=False): vol.Boolean(),
        vol.Optional(CONF_CACHE_DIR, default=None): vol.Any(None, vol.Coerce(Path)),
    }
)


@dataclass(kw_only=True)
class RunConfig:
    """Validated settings for one verifier run."""

    n_values: list[int] = field(default_factory=lambda: list(DEFAULT_N_VALUES))
    q_values: list[int] = field(default_factory=lambda: list(DEFAULT_Q_VALUES))
    suites: list[Suite] = field(default_factory=lambda: _expand_suites([Suite.ALL.value]))
    tol: float = DEFAULT_TOL
    max_vertices: int = DEFAULT_MAX_VERTICES
    time_budget: int = DEFAULT_TIME_BUDGET
    seed: int = DEFAULT_SEED
    jobs: int = DEFAULT_JOBS
    format: OutputFormat = OutputFormat.TEXT
    out_path: Path | None = None
    export: Artifact | None = None
    stretch: bool = False
    cache_dir: Path | None = None

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> RunConfig:
        """Validate a plain mapping against CONFIG_SCHEMA."""
        try:
            validated = CONFIG_SCHEMA(dict(data))
        except vol.Invalid as err:
            msg = f"invalid configuration: {err}"
            raise ConfigError(msg) from err
        return cls(**validated)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        """Build from parsed command-line flags; unset flags take their defaults."""
        data = {key: value for key, value in vars(args).items() if value is not None}
        data.pop("verbose", None)
        if CONF_STRETCH not in data or not data[CONF_STRETCH]:
            data[CONF_STRETCH] = os.environ.get(STRETCH_ENV) == "1"
        return cls.from_mapping(data)

    def to_json(self) -> dict[str, Any]:
        """JSON-ready view, without output locations."""
        data = asdict(self)
        data.pop(CONF_OUT_PATH)
        data.pop(CONF_CACHE_DIR)
        data[CONF_SUITES] = [str(s) for s in self.suites]
        data[CONF_FORMAT] = str(self.format)
        data[CONF_EXPORT] = str(self.export) if self.export is not None else None
        return data
