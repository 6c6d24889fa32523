"""Unit tests for the Jacobi eigensolver and the ratio bound."""

from __future__ import annotations

import unittest
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from even_derangement.cayley_graph import build_even_derangement_graph, cycle_graph
from even_derangement.exceptions import (
    ConvergenceError,
    DegenerateBoundError,
    EigenbasisUnavailableError,
    PreconditionError,
)
from even_derangement.extremal import build_B
from even_derangement.spectral import (
    DenseSymMatrix,
    Spectrum,
    eigenspace_residual,
    eigenvalues_symmetric,
    least_eigenspace,
    ratio_bound,
    ratio_bound_exact,
    ratio_tightness_certificate,
    rayleigh_quotients,
    snap_integer,
    spectrum_identities,
    tensor_eigenspace,
    tensor_spectrum,
)


class TestJacobi(unittest.TestCase):
    """Test cases for the cyclic Jacobi solver."""

    def test_small_matrix(self) -> None:
        """Test a 2x2 matrix with eigenvalues 3 and 1."""
        spectrum = eigenvalues_symmetric(DenseSymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))
        assert np.allclose(spectrum.eigenvalues, [3.0, 1.0])

    def test_odd_dimension(self) -> None:
        """Test C5, whose size leaves one index idle per round."""
        spectrum = eigenvalues_symmetric(DenseSymMatrix.from_graph(cycle_graph(5)))
        expected = sorted((2 * np.cos(2 * np.pi * k / 5) for k in range(5)), reverse=True)
        assert np.allclose(spectrum.eigenvalues, expected, atol=1e-9)

    def test_random_matrix_matches_eigvalsh(self) -> None:
        """Test a random symmetric matrix against numpy."""
        rng = np.random.default_rng(11)
        a = rng.normal(size=(17, 17))
        a = a + a.T
        spectrum = eigenvalues_symmetric(DenseSymMatrix(a), with_basis=True)
        assert np.allclose(spectrum.eigenvalues, np.linalg.eigvalsh(a)[::-1], atol=1e-8)
        # columns are orthonormal eigenvectors
        basis = spectrum.basis
        assert np.allclose(basis.T @ basis, np.eye(17), atol=1e-8)
        assert np.allclose(a @ basis, basis * spectrum.eigenvalues, atol=1e-7)

    def test_rejects_asymmetric(self) -> None:
        """Test an asymmetric matrix is rejected."""
        with pytest.raises(PreconditionError):
            DenseSymMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_sweep_limit(self) -> None:
        """Test a zero sweep budget raises on a non-diagonal matrix."""
        with pytest.raises(ConvergenceError):
            eigenvalues_symmetric(DenseSymMatrix.from_graph(cycle_graph(4)), max_sweeps=0)

    def test_eigenspace_needs_basis(self) -> None:
        """Test eigenspace() without eigenvectors raises."""
        spectrum = Spectrum(eigenvalues=np.array([1.0, 0.0]))
        with pytest.raises(EigenbasisUnavailableError):
            spectrum.eigenspace(1.0)


class TestEvenDerangementSpectrum(unittest.TestCase):
    """Test cases for the spectrum of AΓ_5."""

    def setUp(self) -> None:
        """Set up AΓ_5 and its spectrum."""
        self.graph = build_even_derangement_graph(5)
        self.spectrum = eigenvalues_symmetric(DenseSymMatrix.from_graph(self.graph), with_basis=True)

    def test_grouped_spectrum(self) -> None:
        """Test 24^1 4^18 0^25 (-6)^16."""
        grouped = [(snap_integer(v), m) for v, m in self.spectrum.grouped()]
        assert grouped == [(24, 1), (4, 18), (0, 25), (-6, 16)]
        assert self.spectrum.is_integral()

    def test_matches_eigvalsh(self) -> None:
        """Test against numpy's dense solver."""
        reference = np.linalg.eigvalsh(self.graph.matrix.astype(float))[::-1]
        assert np.allclose(self.spectrum.eigenvalues, reference, atol=1e-8)

    def test_identities(self) -> None:
        """Test trace, energy and the top eigenvalue."""
        assert spectrum_identities(self.spectrum, self.graph.edge_count, 24).ok

    def test_ratio_bound(self) -> None:
        """Test 60 * 6 / 30 = 12 and that it is attained."""
        assert ratio_bound_exact(60, 24, -6) == 12
        assert ratio_bound(60, 24.0, -6.0) == pytest.approx(12.0)
        assert ratio_tightness_certificate(self.graph, self.spectrum, 12) is True

    def test_least_eigenspace(self) -> None:
        """Test the least eigenspace has dimension 16 and Rayleigh quotient -6."""
        basis = least_eigenspace(self.spectrum)
        assert basis.shape == (60, 16)
        assert np.allclose(rayleigh_quotients(self.graph, basis), -6.0)

    def test_canonical_set_in_least_eigenspace(self) -> None:
        """Test 1_B - (12/60) 1 lies in the least eigenspace."""
        indicator = build_B(5, 1, 1, 2, 3).to_mask()
        assert eigenspace_residual(indicator, least_eigenspace(self.spectrum), 12) < 1e-8

    def test_to_csv(self) -> None:
        """Test the CSV export."""
        assert self.spectrum.to_csv() == (
            "eigenvalue,multiplicity\n24,1\n4,18\n0,25\n-6,16\n"
        )


class TestTensorSpectrum(unittest.TestCase):
    """Test cases for spectra of tensor powers."""

    def setUp(self) -> None:
        """Set up the base spectrum of AΓ_5."""
        graph = build_even_derangement_graph(5)
        self.base = eigenvalues_symmetric(DenseSymMatrix.from_graph(graph), with_basis=True)

    def test_square_least(self) -> None:
        """Test the least eigenvalue of the square is 24 * -6."""
        square = tensor_spectrum(self.base, 2)
        assert square.dimension == 3600
        assert snap_integer(square.least) == -144
        assert snap_integer(square.largest) == 576

    def test_square_ratio_bound(self) -> None:
        """Test the ratio bound on the square is 720."""
        assert ratio_bound_exact(3600, 576, -144) == Fraction(720)

    def test_square_least_eigenspace(self) -> None:
        """Test the -144 eigenspace is spanned by 32 Kronecker products."""
        basis = tensor_eigenspace(self.base, 2, -144.0)
        assert basis.shape == (3600, 32)

    def test_power_one_is_identity(self) -> None:
        """Test q = 1 returns the base spectrum."""
        assert tensor_spectrum(self.base, 1) is self.base

    def test_degenerate_bound(self) -> None:
        """Test a nonnegative least eigenvalue has no bound."""
        with pytest.raises(DegenerateBoundError):
            ratio_bound_exact(4, 3, 0)


AG4_VALUES = eigenvalues_symmetric(DenseSymMatrix.from_graph(build_even_derangement_graph(4)))
AG5_VALUES = eigenvalues_symmetric(DenseSymMatrix.from_graph(build_even_derangement_graph(5)))


def relabelled_spectrum(n: int, order: list[int]) -> Spectrum:
    """Jacobi spectrum of AΓ_n with vertex v renamed to order[v]."""
    matrix = build_even_derangement_graph(n).matrix
    perm = np.asarray(order)
    return eigenvalues_symmetric(DenseSymMatrix(matrix[np.ix_(perm, perm)].astype(np.float64)))


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(12)))
def test_relabelling_keeps_spectrum_n4(order: list[int]) -> None:
    """Test eigenvalues of AΓ_4 do not depend on the vertex order."""
    spectrum = relabelled_spectrum(4, order)
    assert np.allclose(spectrum.eigenvalues, AG4_VALUES.eigenvalues, atol=1e-8)


@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.permutations(range(60)))
def test_relabelling_keeps_spectrum_n5(order: list[int]) -> None:
    """Test eigenvalues of AΓ_5 do not depend on the vertex order."""
    spectrum = relabelled_spectrum(5, order)
    assert np.allclose(spectrum.eigenvalues, AG5_VALUES.eigenvalues, atol=1e-8)
    assert [m for _, m in spectrum.grouped()] == [1, 18, 25, 16]
