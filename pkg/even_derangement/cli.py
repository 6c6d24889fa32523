"""Command-line front end: ``python -m even_derangement``."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import TYPE_CHECKING

import colorlog

from . import cache
from .claims import run
from .config import RunConfig
from .const import (
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
    EXIT_OK,
    EXIT_RESOURCE_ABORT,
    EXIT_USAGE,
    VERSION,
    Artifact,
    OutputFormat,
    Suite,
)
from .exceptions import ConfigError, GuardError, ResourceCapError
from .report import export

if TYPE_CHECKING:
    from collections.abc import Sequence

_LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the verifier."""
    parser = argparse.ArgumentParser(
        prog="even_derangement",
        description="Verify structural, spectral, extremal and automorphism claims "
        "about the even derangement graph and its tensor powers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument(
        "--n", dest=CONF_N_VALUES, type=int, action="append", help="degree n (repeatable)"
    )
    parser.add_argument(
        "--q", dest=CONF_Q_VALUES, type=int, action="append", help="tensor exponent q (repeatable)"
    )
    parser.add_argument(
        "--suite",
        dest=CONF_SUITES,
        action="append",
        choices=[s.value for s in Suite],
        help="claim suite (repeatable, default all)",
    )
    parser.add_argument("--tol", dest=CONF_TOL, type=float, help="Jacobi off-diagonal tolerance")
    parser.add_argument(
        "--max-vertices", dest=CONF_MAX_VERTICES, type=int, help="materialization cap"
    )
    parser.add_argument(
        "--time-budget", dest=CONF_TIME_BUDGET, type=int, help="seconds per claim"
    )
    parser.add_argument("--seed", dest=CONF_SEED, type=int, help="random seed")
    parser.add_argument("--jobs", dest=CONF_JOBS, type=int, help="claims run in parallel")
    parser.add_argument(
        "--format", dest=CONF_FORMAT, choices=[f.value for f in OutputFormat], help="report format"
    )
    parser.add_argument(
        "--out",
        dest=CONF_OUT_PATH,
        help="report file, or the artifact directory with --export",
    )
    parser.add_argument(
        "--export",
        dest=CONF_EXPORT,
        choices=[a.value for a in Artifact],
        help="write an artifact instead of running claims",
    )
    parser.add_argument(
        "--stretch",
        dest=CONF_STRETCH,
        action="store_true",
        default=None,
        help="run the n=6 independent-set enumeration and automorphism search",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def setup_logging(*, verbose: bool) -> None:
    """Coloured log lines on stderr."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the verifier; returns the process exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose)
    try:
        config = RunConfig.from_args(args)
    except ConfigError as err:
        _LOGGER.error("%s", err)  # noqa: TRY400
        return EXIT_USAGE
    if config.cache_dir is not None:
        cache.configure(config.cache_dir)

    if config.export is not None:
        try:
            paths = export(config, config.export)
        except ResourceCapError as err:
            _LOGGER.error("Export aborted: %s", err)  # noqa: TRY400
            return EXIT_RESOURCE_ABORT
        except GuardError as err:
            _LOGGER.error("Export rejected: %s", err)  # noqa: TRY400
            return EXIT_USAGE
        _LOGGER.info("Exported %d file(s)", len(paths))
        return EXIT_OK

    report = run(config)
    text = report.render()
    if config.out_path is not None:
        config.out_path.write_text(text, encoding="utf-8")
        _LOGGER.info("Report written to %s", config.out_path)
    else:
        sys.stdout.write(text)
    return report.exit_code
