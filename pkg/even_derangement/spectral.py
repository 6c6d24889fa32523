"""Dense symmetric eigensolver and ratio-bound machinery.

The solver is cyclic Jacobi in round-robin order: each round rotates
n/2 disjoint index pairs at once, so one sweep visits every pair exactly
once with O(n) vectorized rounds.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import TYPE_CHECKING

import numpy as np

from .const import (
    DEFAULT_MAX_SWEEPS,
    DEFAULT_TOL,
    EIGEN_GROUP_TOL,
    INTEGER_SNAP_TOL,
    MAX_EIGEN_DIMENSION,
)
from .exceptions import (
    ConvergenceError,
    DegenerateBoundError,
    EigenbasisUnavailableError,
    GuardError,
    PreconditionError,
    SearchBudgetExceededError,
)

if TYPE_CHECKING:
    from .cayley_graph import ExplicitGraph, GraphLike

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class DenseSymMatrix:
    """Real symmetric matrix."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        """Require a square, exactly symmetric matrix."""
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            msg = f"matrix must be square, got shape {entries.shape}"
            raise PreconditionError(msg)
        if not np.array_equal(entries, entries.T):
            msg = "matrix is not symmetric"
            raise PreconditionError(msg)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_graph(cls, graph: ExplicitGraph) -> DenseSymMatrix:
        """Adjacency matrix of an explicit graph."""
        return cls(graph.matrix.astype(np.float64))

    @property
    def dimension(self) -> int:
        """N."""
        return int(self.entries.shape[0])


def snap_integer(value: float, tol: float = INTEGER_SNAP_TOL) -> int | None:
    """Nearest integer if value is within tol of it, else None."""
    nearest = round(float(value))
    return int(nearest) if abs(value - nearest) <= tol else None


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, optionally with matching eigenvector columns."""

    eigenvalues: np.ndarray
    basis: np.ndarray | None = None

    @property
    def dimension(self) -> int:
        """Number of eigenvalues."""
        return int(self.eigenvalues.size)

    @property
    def largest(self) -> float:
        """Largest eigenvalue."""
        return float(self.eigenvalues[0])

    @property
    def least(self) -> float:
        """Least eigenvalue."""
        return float(self.eigenvalues[-1])

    def grouped(self, tol: float = EIGEN_GROUP_TOL) -> list[tuple[float, int]]:
        """(value, multiplicity) pairs, descending, merging values closer than tol."""
        groups: list[list[float]] = []
        for value in self.eigenvalues.tolist():
            if groups and abs(groups[-1][0] - value) <= tol:
                groups[-1].append(value)
            else:
                groups.append([value])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def is_integral(self, tol: float = INTEGER_SNAP_TOL) -> bool:
        """True iff every eigenvalue is within tol of an integer."""
        return all(snap_integer(v, tol) is not None for v in self.eigenvalues.tolist())

    def eigenspace(self, value: float, tol: float = EIGEN_GROUP_TOL) -> np.ndarray:
        """Orthonormal columns spanning the eigenspace of value."""
        if self.basis is None:
            msg = "spectrum was computed without eigenvectors"
            raise EigenbasisUnavailableError(msg)
        return self.basis[:, np.abs(self.eigenvalues - value) <= tol]

    def to_csv(self) -> str:
        """CSV "eigenvalue,multiplicity", descending, LF-terminated."""
        lines = ["eigenvalue,multiplicity"]
        for value, multiplicity in self.grouped():
            exact = snap_integer(value)
            text = str(exact) if exact is not None else f"{value:.12g}"
            lines.append(f"{text},{multiplicity}")
        return "\n".join(lines) + "\n"


def _round_robin_schedule(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint pairs covering every pair once (circle method)."""
    players = list(range(size + size % 2))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [
            (players[i], players[m - 1 - i])
            for i in range(m // 2)
            if players[m - 1 - i] < size and players[i] < size
        ]
        p, q = zip(*pairs, strict=True) if pairs else ((), ())
        rounds.append((np.array(p, dtype=np.int64), np.array(q, dtype=np.int64)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, v: np.ndarray | None, p: np.ndarray, q: np.ndarray) -> None:
    apq = a[p, q]
    active = apq != 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = np.where(active, sign / (np.abs(theta) + np.hypot(1.0, theta)), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * cols_p - s * cols_q
    a[:, q] = s * cols_p + c * cols_q
    rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
    a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    if v is not None:
        vp, vq = v[:, p].copy(), v[:, q].copy()
        v[:, p] = c * vp - s * vq
        v[:, q] = s * vp + c * vq


def eigenvalues_symmetric(
    m: DenseSymMatrix,
    tol: float = DEFAULT_TOL,
    *,
    with_basis: bool = False,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    deadline: float | None = None,
) -> Spectrum:
    """Full spectrum by cyclic Jacobi until the off-diagonal Frobenius norm is below tol."""
    size = m.dimension
    if size > MAX_EIGEN_DIMENSION:
        msg = f"dimension {size} exceeds {MAX_EIGEN_DIMENSION}"
        raise GuardError(msg)
    if tol <= 0:
        msg = f"tolerance must be positive, got {tol}"
        raise PreconditionError(msg)
    a = m.entries.copy()
    v = np.eye(size) if with_basis else None
    schedule = _round_robin_schedule(size)
    sweeps = 0
    off = _off_norm(a)
    while off >= tol:
        if sweeps >= max_sweeps:
            msg = f"off-diagonal norm {off:.3e} above {tol:.1e} after {sweeps} sweeps"
            raise ConvergenceError(msg)
        if deadline is not None and time.monotonic() > deadline:
            msg = f"Jacobi stopped after {sweeps} sweeps at the time budget"
            raise SearchBudgetExceededError(msg)
        for p, q in schedule:
            _rotate(a, v, p, q)
        a = (a + a.T) / 2.0
        sweeps += 1
        off = _off_norm(a)
        _LOGGER.debug("Jacobi sweep %d on N=%d: off-norm %.3e", sweeps, size, off)
    values = np.diagonal(a).copy()
    order = np.argsort(-values, kind="stable")
    basis = v[:, order] if v is not None else None
    return Spectrum(eigenvalues=values[order], basis=basis)


def ratio_bound_exact(vertex_count: int, degree: int, least: int | Fraction) -> Fraction:
    """vertex_count * (-least) / (degree - least) as an exact fraction."""
    least = Fraction(least)
    if least >= 0 or degree == least:
        msg = f"ratio bound undefined for degree {degree}, least eigenvalue {least}"
        raise DegenerateBoundError(msg)
    return Fraction(vertex_count) * (-least) / (degree - least)


def ratio_bound(vertex_count: int, degree: float, least: float) -> float:
    """Upper bound vertex_count * (-least) / (degree - least) on the independence number."""
    if least >= 0 or degree == least:
        msg = f"ratio bound undefined for degree {degree}, least eigenvalue {least}"
        raise DegenerateBoundError(msg)
    return vertex_count * (-least) / (degree - least)


def tensor_spectrum(base: Spectrum, q: int) -> Spectrum:
    """All q-fold products of base eigenvalues, descending."""
    if q < 1:
        msg = f"tensor exponent q={q} must be at least 1"
        raise PreconditionError(msg)
    if q == 1:
        return base
    values = reduce(np.multiply.outer, [base.eigenvalues] * q).ravel()
    return Spectrum(eigenvalues=np.sort(values)[::-1].copy())


def tensor_eigenspace(
    base: Spectrum, q: int, value: float, tol: float = EIGEN_GROUP_TOL
) -> np.ndarray:
    """Kronecker eigenvectors of the tensor power whose eigenvalue is value."""
    if base.basis is None:
        msg = "base spectrum was computed without eigenvectors"
        raise EigenbasisUnavailableError(msg)
    products = reduce(np.multiply.outer, [base.eigenvalues] * q)
    hits = np.argwhere(np.abs(products - value) <= tol)
    columns = [reduce(np.kron, [base.basis[:, i] for i in index]) for index in hits]
    if not columns:
        return np.zeros((base.dimension**q, 0))
    return np.stack(columns, axis=1)


def least_eigenspace(spectrum: Spectrum) -> np.ndarray:
    """Eigenvectors of the least eigenvalue."""
    return spectrum.eigenspace(spectrum.least)


def rayleigh_quotients(graph: ExplicitGraph, vectors: np.ndarray) -> np.ndarray:
    """x^T A x / x^T x for each column x."""
    vectors = np.asarray(vectors, dtype=np.float64).reshape(graph.vertex_count, -1)
    images = graph.matrix.astype(np.float64) @ vectors
    return np.einsum("ij,ij->j", vectors, images) / np.einsum("ij,ij->j", vectors, vectors)


@dataclass(frozen=True)
class SpectrumIdentities:
    """Trace, energy and top-eigenvalue checks of an adjacency spectrum."""

    trace: float
    energy: float
    trace_ok: bool
    energy_ok: bool
    largest_ok: bool

    @property
    def ok(self) -> bool:
        """All three identities hold."""
        return self.trace_ok and self.energy_ok and self.largest_ok


def spectrum_identities(
    spectrum: Spectrum, edge_count: int, degree: int, tol: float = INTEGER_SNAP_TOL
) -> SpectrumIdentities:
    """Trace 0, sum of squares 2|E| and largest eigenvalue equal to the degree."""
    scale = tol * spectrum.dimension
    trace = float(np.sum(spectrum.eigenvalues))
    energy = float(np.sum(spectrum.eigenvalues**2))
    return SpectrumIdentities(
        trace=trace,
        energy=energy,
        trace_ok=abs(trace) <= scale,
        energy_ok=abs(energy - 2 * edge_count) <= scale,
        largest_ok=abs(spectrum.largest - degree) <= tol,
    )


def ratio_tightness_certificate(
    graph: GraphLike, spectrum: Spectrum, claimed_alpha: int, tol: float = INTEGER_SNAP_TOL
) -> bool | None:
    """Exact comparison of claimed_alpha with the ratio bound; None when not certifiable."""
    degree = getattr(graph, "degree", None)
    if degree is None:
        msg = "ratio bound needs a regular graph"
        raise PreconditionError(msg)
    least = snap_integer(spectrum.least, tol)
    if least is None:
        _LOGGER.warning("Least eigenvalue %.12g is not within %g of an integer", spectrum.least, tol)
        return None
    return Fraction(claimed_alpha) == ratio_bound_exact(graph.vertex_count, int(degree), least)


def eigenspace_residual(indicator: np.ndarray, basis: np.ndarray, alpha: int) -> float:
    """Relative norm of the part of indicator - alpha/N outside span(basis)."""
    x = indicator.astype(np.float64) - alpha / indicator.size
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return 0.0
    residual = x - basis @ (basis.T @ x)
    return float(np.linalg.norm(residual)) / norm

