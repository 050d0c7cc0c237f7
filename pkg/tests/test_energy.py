"""Tests for the Hamiltonian and kernel discrepancies."""

import math

import numpy as np
import pytest

from repulse_quad.common.exceptions import ValidationError
from repulse_quad.common.rng import derive_rng
from repulse_quad.core.config import EmbeddingSettings
from repulse_quad.embedding import QuadraticPotential, equilibrate
from repulse_quad.energy import (
    ParticleConfiguration,
    cross_energy,
    energy_and_gradient,
    grad_hamiltonian,
    hamiltonian,
    interaction_energy,
    mmd_squared,
    worst_case_error,
)
from repulse_quad.kernels import KernelFamily, KernelSpec, build_kernel
from repulse_quad.measures import UniformBall


def naive_hamiltonian(X, kernel, potential):
    n = len(X)
    pairs = sum(kernel.evaluate(X[i], X[j]) for i in range(n) for j in range(n) if i != j)
    return pairs / (2 * n**2) + sum(potential.value(x) for x in X) / n


def naive_cross(X, Y, kernel):
    return sum(kernel.evaluate(x, y) for x in X for y in Y) / (len(X) * len(Y))


@pytest.fixture
def zero_potential_3d():
    return QuadraticPotential(3, scale=0.0)


class TestParticleConfiguration:
    """Test configuration validation"""

    def test_read_only_points(self):
        """Test stored points cannot be mutated"""
        config = ParticleConfiguration(np.zeros((3, 2)))
        assert (config.n, config.d) == (3, 2)
        with pytest.raises(ValueError):
            config.points[0, 0] = 1.0

    def test_rejects_non_finite(self):
        """Test non-finite coordinates are rejected"""
        with pytest.raises(ValidationError):
            ParticleConfiguration(np.array([[0.0, np.nan]]))


class TestHamiltonian:
    """Test H_n and its gradient"""

    def test_single_particle(self, quadratic_2d, gaussian_kernel_2d):
        """Test n = 1 has no interaction and total V(x_1)"""
        X = np.array([[0.6, -0.8]])
        energy = hamiltonian(X, gaussian_kernel_2d, quadratic_2d)
        assert energy.interaction == 0.0
        assert energy.total == pytest.approx(0.5)

    def test_coincident_pair(self, gaussian_kernel_2d):
        """Test two coincident points with the Gaussian kernel give 0.25"""
        X = np.array([[0.1, 0.2], [0.1, 0.2]])
        energy = hamiltonian(X, gaussian_kernel_2d, QuadraticPotential(2, scale=0.0))
        assert energy.interaction == pytest.approx(0.25)
        assert energy.total == pytest.approx(0.25)

    def test_matches_double_loop(self, all_kernels, rng):
        """Test H_n against a naive loop over ordered pairs"""
        potential = QuadraticPotential(3)
        for kernel in all_kernels:
            for _ in range(5):
                X = rng.normal(size=(int(rng.integers(2, 9)), 3))
                expected = naive_hamiltonian(X, kernel, potential)
                assert hamiltonian(X, kernel, potential).total == pytest.approx(
                    expected, rel=1e-12, abs=1e-12
                )

    def test_gradient_single_particle(self, quadratic_2d, gaussian_kernel_2d):
        """Test n = 1 gradient is the potential gradient x_1"""
        X = np.array([[0.3, -0.7]])
        assert np.allclose(grad_hamiltonian(X, gaussian_kernel_2d, quadratic_2d), X)

    def test_gradient_symmetric_pair(self, riesz_kernel_3d, zero_potential_3d):
        """Test a symmetric pair has equal and opposite gradients"""
        x = np.array([0.2, -0.1, 0.3])
        grad = grad_hamiltonian(np.stack([x, -x]), riesz_kernel_3d, zero_potential_3d)
        assert np.allclose(grad[0], -grad[1])

    def test_gradient_finite_differences(self, all_kernels, rng):
        """Test grad H_n against central differences of H_n"""
        potential = QuadraticPotential(3)
        h = 1e-6
        for kernel in all_kernels:
            X = rng.normal(size=(5, 3))
            analytic = grad_hamiltonian(X, kernel, potential)
            numeric = np.zeros_like(X)
            for i in range(5):
                for k in range(3):
                    up, down = X.copy(), X.copy()
                    up[i, k] += h
                    down[i, k] -= h
                    numeric[i, k] = (
                        hamiltonian(up, kernel, potential).total
                        - hamiltonian(down, kernel, potential).total
                    ) / (2 * h)
            assert np.allclose(analytic, numeric, rtol=1e-5, atol=1e-7)

    def test_gradient_finite_differences_equilibrated(self, all_kernels, rng):
        """Test grad H_n against central differences with the equilibrated potential"""
        h = 1e-6
        for kernel in all_kernels:
            potential = equilibrate(
                UniformBall(3), kernel, EmbeddingSettings(size=60), derive_rng(1, "embedding")
            )
            X = rng.normal(scale=0.8, size=(5, 3))
            radii = np.linalg.norm(X, axis=1)
            X[np.abs(radii - 1.0) < 1e-3] *= 0.9
            analytic = grad_hamiltonian(X, kernel, potential)
            _, joint = energy_and_gradient(X, kernel, potential)
            assert np.allclose(joint, analytic, rtol=1e-12)
            numeric = np.zeros_like(X)
            for i in range(5):
                for k in range(3):
                    up, down = X.copy(), X.copy()
                    up[i, k] += h
                    down[i, k] -= h
                    numeric[i, k] = (
                        hamiltonian(up, kernel, potential).total
                        - hamiltonian(down, kernel, potential).total
                    ) / (2 * h)
            assert np.allclose(analytic, numeric, rtol=1e-5, atol=1e-7)

    def test_permutation_invariance(self, riesz_kernel_3d, rng):
        """Test H_n does not depend on particle order"""
        potential = QuadraticPotential(3)
        X = ParticleConfiguration(rng.normal(size=(7, 3)))
        shuffled = X.permuted(rng.permutation(7))
        assert (
            hamiltonian(X, riesz_kernel_3d, potential).total
            == hamiltonian(shuffled, riesz_kernel_3d, potential).total
        )

    def test_diagonal_identity(self, all_kernels, rng):
        """Test n^2 H_n = n^2 (I_K(mu_n) + mean V) - sum K(x_i, x_i) / 2"""
        potential = QuadraticPotential(3)
        for kernel in all_kernels:
            X = rng.normal(size=(6, 3))
            n = len(X)
            left = n**2 * hamiltonian(X, kernel, potential).total
            energy_with_diagonal = interaction_energy(X, kernel) / 2 + np.mean(
                potential.value(X)
            )
            right = n**2 * energy_with_diagonal - 0.5 * n * kernel.diag_bound()
            assert left == pytest.approx(right, rel=1e-10, abs=1e-10)


class TestDiscrepancy:
    """Test interaction energies and MMD"""

    def test_single_point_energy(self, gaussian_kernel_2d):
        """Test I_K of a Dirac mass is K(x, x)"""
        assert interaction_energy(np.array([[0.4, 0.1]]), gaussian_kernel_2d) == 1.0

    def test_energies_match_double_loop(self, all_kernels, rng):
        """Test interaction and cross energies against naive loops"""
        for kernel in all_kernels:
            X, Y = rng.normal(size=(6, 3)), rng.normal(size=(4, 3))
            assert interaction_energy(X, kernel) == pytest.approx(
                naive_cross(X, X, kernel), rel=1e-12
            )
            assert cross_energy(X, Y, kernel) == pytest.approx(
                naive_cross(X, Y, kernel), rel=1e-12
            )

    def test_mmd_of_identical_sets(self, riesz_kernel_3d, rng):
        """Test MMD^2(X, X) = 0"""
        X = rng.normal(size=(10, 3))
        assert mmd_squared(X, X, riesz_kernel_3d) == 0.0
        assert mmd_squared(X, X.copy(), riesz_kernel_3d) == 0.0

    def test_two_diracs(self, gaussian_kernel_2d):
        """Test MMD^2 between two Dirac masses is 2 - 2 exp(-|x - y|^2 / 2)"""
        x, y = np.array([[0.0, 0.0]]), np.array([[1.0, 1.0]])
        assert mmd_squared(x, y, gaussian_kernel_2d) == pytest.approx(2 - 2 * math.exp(-1.0))
        assert worst_case_error(x, y, gaussian_kernel_2d) == pytest.approx(
            math.sqrt(2 - 2 * math.exp(-1.0))
        )

    def test_symmetry_and_nonnegativity(self, gaussian_kernel_2d, rng):
        """Test MMD^2 is symmetric bit for bit and non-negative"""
        for _ in range(100):
            X = rng.normal(size=(int(rng.integers(1, 10)), 2))
            Y = rng.normal(size=(int(rng.integers(1, 10)), 2))
            value = mmd_squared(X, Y, gaussian_kernel_2d)
            assert value == mmd_squared(Y, X, gaussian_kernel_2d)
            assert value >= -1e-10

    def test_dimension_mismatch(self, gaussian_kernel_2d):
        """Test point sets of different dimension are rejected"""
        with pytest.raises(ValidationError):
            cross_energy(np.zeros((2, 2)), np.zeros((2, 3)), gaussian_kernel_2d)
