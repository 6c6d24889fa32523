"""Constants for the even derangement graph verifier."""

from __future__ import annotations

import json
from enum import StrEnum
from pathlib import Path

DOMAIN = "even_derangement"
VERSION = json.loads((Path(__file__).parent / "manifest.json").read_text())["version"]

CACHE_DIR_ENV = "ALTGRAPH_CACHE_DIR"
STRETCH_ENV = "ALTGRAPH_STRETCH"


class Suite(StrEnum):
    """Claim suites selectable from the command line."""

    STRUCTURE = "structure"
    SPECTRA = "spectra"
    EXTREMAL = "extremal"
    AUT = "aut"
    ALL = "all"


class OutputFormat(StrEnum):
    """Report output formats."""

    TEXT = "text"
    JSON = "json"


class Artifact(StrEnum):
    """Exportable artifacts."""

    EDGES = "edges"
    SPECTRUM = "spectrum"
    B_SETS = "b-sets"
    AUTOMORPHISMS = "automorphisms"


# Configuration parameters
CONF_N_VALUES = "n_values"
CONF_Q_VALUES = "q_values"
CONF_SUITES = "suites"
CONF_TOL = "tol"
CONF_MAX_VERTICES = "max_vertices"
CONF_TIME_BUDGET = "time_budget"
CONF_SEED = "seed"
CONF_JOBS = "jobs"
CONF_FORMAT = "format"
CONF_OUT_PATH = "out_path"
CONF_EXPORT = "export"
CONF_STRETCH = "stretch"
CONF_CACHE_DIR = "cache_dir"

# Default values
DEFAULT_N_VALUES = [5]
DEFAULT_Q_VALUES = [1, 2]
DEFAULT_TOL = 1e-10  # absolute off-diagonal Frobenius norm for Jacobi
DEFAULT_MAX_VERTICES = 4096  # materialization cap (dense bit matrix)
DEFAULT_TIME_BUDGET = 300  # seconds per claim
DEFAULT_JOBS = 1
DEFAULT_SEED = 42
DEFAULT_MAX_SWEEPS = 60  # Jacobi sweeps before giving up
DEFAULT_RANDOM_SIFTS = 24  # consecutive trivial sifts ending the randomized phase
DEFAULT_OMEGA_SAMPLES = 20  # random group elements checked on top of the generators

# Resource guards
MIN_DEGREE = 1
MAX_DEGREE = 8  # |A_9| = 181,440 exceeds desk scale
MIN_GRAPH_DEGREE = 3
MAX_GRAPH_DEGREE = 7  # |A_7| = 2,520 vertices
MAX_ORACLE_VERTICES = 10**7
MAX_EIGEN_DIMENSION = 4096
MAX_BSGS_DOMAIN = 10**4
MAX_SEARCH_VERTICES = 400
MAX_INTERSECTION_VERTICES = 10**4
MAX_COVER_SUBSETS = 10**7
MAX_EXPANSION_PART = 16

# Numerical tolerances
INTEGER_SNAP_TOL = 1e-6  # eigenvalues this close to an integer are treated as exact
EIGEN_GROUP_TOL = 1e-6  # eigenvalues closer than this share a multiplicity group
CERTIFICATE_TOL = 1e-6  # relative residual for eigenspace certificates

# Exit codes
EXIT_OK = 0
EXIT_CLAIM_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE_ABORT = 3
