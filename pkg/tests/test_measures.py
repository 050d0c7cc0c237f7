"""Tests for target measures and the random-walk chain."""

import numpy as np
import pytest
from scipy import stats

from repulse_quad.common.exceptions import SamplingError, ValidationError
from repulse_quad.measures import (
    TemperedTarget,
    TruncatedGaussian,
    TruncatedGaussianMixture,
    UniformBall,
    mixture_on_circle,
    random_walk_chain,
)


class TestLogDensity:
    """Test unnormalised log densities"""

    def test_uniform_ball_inside_and_outside(self, unit_ball_3d):
        """Test uniform ball is 0 inside and -inf outside"""
        assert unit_ball_3d.log_density(np.zeros(3)) == 0.0
        assert unit_ball_3d.log_density(np.array([1.5, 0.0, 0.0])) == -np.inf
        assert unit_ball_3d.contains(np.array([0.5, 0.5, 0.5]))

    def test_truncated_gaussian_quadratic(self):
        """Test truncated Gaussian log density is -|x|^2 / (2 s^2) inside"""
        target = TruncatedGaussian(2, variance=0.5, trunc_radius=1.0)
        x = np.array([0.3, -0.4])
        assert target.log_density(x) == pytest.approx(-0.25 / (2 * 0.5))
        assert target.log_density(np.array([2.0, 0.0])) == -np.inf

    def test_vectorised_rows(self, unit_ball_3d):
        """Test log densities of stacked rows"""
        rows = np.array([[0.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
        values = unit_ball_3d.log_density(rows)
        assert values.shape == (2,)
        assert values[0] == 0.0 and values[1] == -np.inf

    def test_dimension_mismatch(self, unit_ball_3d):
        """Test wrong dimension is rejected"""
        with pytest.raises(ValidationError):
            unit_ball_3d.log_density(np.zeros(2))


class TestExactSampling:
    """Test exact samplers"""

    def test_uniform_ball_second_moment(self, rng):
        """Test E|x|^2 = d / (d + 2) for the uniform ball in d = 2"""
        draws = UniformBall(2).sample(rng, 100_000)
        sq = np.sum(draws**2, axis=1)
        stderr = sq.std() / np.sqrt(len(sq))
        assert abs(sq.mean() - 0.5) < 3 * stderr
        assert np.all(sq <= 1.0)

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_uniform_ball_radial_law(self, dimension, rng):
        """Test |x|^d is uniform on [0, 1] for the uniform ball"""
        draws = UniformBall(dimension).sample(rng, 100_000)
        scaled = np.linalg.norm(draws, axis=1) ** dimension
        assert stats.kstest(scaled, "uniform").statistic < 0.01

    def test_truncated_gaussian_mean(self, rng):
        """Test sample mean is the centre when truncation is far out"""
        center = np.array([0.5, -1.0])
        target = TruncatedGaussian(2, variance=1.0, trunc_radius=10.0, center=center)
        draws = target.sample(rng, 20_000)
        stderr = draws.std(axis=0) / np.sqrt(len(draws))
        assert np.all(np.abs(draws.mean(axis=0) - center) < 3 * stderr)

    def test_rejection_budget(self, rng):
        """Test a hopeless rejection sampler raises a sampling error"""
        target = TruncatedGaussian(10, variance=100.0, trunc_radius=0.1, rejection_budget=5)
        with pytest.raises(SamplingError):
            target.sample(rng, 3)

    def test_exact_sample_shape(self, unit_ball_3d, rng):
        """Test a single draw is a point"""
        assert unit_ball_3d.exact_sample(rng).shape == (3,)


class TestMixture:
    """Test truncated Gaussian mixtures"""

    def test_circle_mixture_centres(self):
        """Test six components evenly spaced on the unit circle"""
        target = mixture_on_circle(6, trunc_radius=0.5, variance=0.1)
        centres = target.modes()
        assert centres.shape == (6, 2)
        assert np.allclose(np.linalg.norm(centres, axis=1), 1.0)
        assert target.support_radius == pytest.approx(1.5)

    def test_single_component(self):
        """Test a one-component circle mixture is a truncated Gaussian at (1, 0)"""
        target = mixture_on_circle(1, trunc_radius=0.5, variance=0.1)
        single = TruncatedGaussian(2, variance=0.1, trunc_radius=0.5, center=[1.0, 0.0])
        points = np.array([[1.0, 0.0], [1.2, 0.1], [0.0, 0.0]])
        assert np.allclose(target.modes(), [[1.0, 0.0]])
        assert np.allclose(target.log_density(points), single.log_density(points))

    def test_mode_assignment(self):
        """Test points are assigned to the nearest centre"""
        target = mixture_on_circle(4, trunc_radius=0.3, variance=0.05)
        points = np.array([[0.9, 0.0], [0.0, 1.1], [-1.0, 0.1], [0.05, -0.95]])
        assert target.assign_modes(points).tolist() == [0, 1, 2, 3]

    def test_balanced_sampling(self, rng):
        """Test component frequencies follow the weights"""
        target = mixture_on_circle(3, trunc_radius=0.3, variance=0.05)
        labels = target.assign_modes(target.sample(rng, 30_000))
        counts = np.bincount(labels, minlength=3) / 30_000
        assert np.allclose(counts, 1 / 3, atol=0.02)

    def test_invalid_weights(self):
        """Test weights must sum to one"""
        component = TruncatedGaussian(2, variance=0.1, trunc_radius=0.5)
        with pytest.raises(ValidationError):
            TruncatedGaussianMixture([component, component], weights=[0.7, 0.7])


class TestTempering:
    """Test tempered targets"""

    def test_power_one_is_identity(self, unit_ball_3d):
        """Test tempering at 1 returns the target itself"""
        assert unit_ball_3d.tempered(1.0) is unit_ball_3d

    def test_tempered_log_density(self):
        """Test pi^t has t times the log density on the same support"""
        base = TruncatedGaussian(2, variance=0.2, trunc_radius=1.0)
        tempered = base.tempered(0.3)
        assert isinstance(tempered, TemperedTarget)
        x = np.array([0.2, 0.4])
        assert tempered.log_density(x) == pytest.approx(0.3 * base.log_density(x))
        assert tempered.log_density(np.array([2.0, 0.0])) == -np.inf

    def test_tempered_has_no_exact_sampler(self, rng):
        """Test tempered targets refuse exact sampling but still start chains"""
        tempered = UniformBall(2).tempered(0.5)
        with pytest.raises(SamplingError):
            tempered.sample(rng, 2)
        assert tempered.chain_start(rng).shape == (2,)


class TestRandomWalkChain:
    """Test random-walk Metropolis-Hastings"""

    def test_zero_proposal_std(self, unit_ball_3d, rng):
        """Test a degenerate proposal keeps the initial state"""
        chain = random_walk_chain(unit_ball_3d, 50, 0.0, rng)
        assert np.all(chain.states == chain.states[0])

    def test_states_stay_in_support(self, unit_ball_3d, rng):
        """Test proposals outside the ball are rejected"""
        chain = random_walk_chain(unit_ball_3d, 2000, 0.5, rng)
        assert np.all(np.linalg.norm(chain.states, axis=1) <= 1.0)
        assert 0.0 < chain.acceptance_rate < 1.0

    def test_length_validation(self, unit_ball_3d, rng):
        """Test chain length must be positive"""
        with pytest.raises(ValidationError):
            random_walk_chain(unit_ball_3d, 0, 0.1, rng)
