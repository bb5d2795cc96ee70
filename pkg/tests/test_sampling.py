"""
Тесты потоков случайных чисел и сэмплеров сферы/шара
"""

import math

import numpy as np
import pytest

from poem_zo.sampling import RngStream, sample_uniform_index, sample_unit_ball, sample_unit_sphere


class TestRngStream:
    """Тесты воспроизводимости"""

    def test_same_seed_same_sequence(self):
        a = RngStream(42).standard_normal(100)
        b = RngStream(42).standard_normal(100)
        assert np.array_equal(a, b)

    def test_derived_streams_differ(self):
        a = RngStream.derive(42, 0).standard_normal(10)
        b = RngStream.derive(42, 1).standard_normal(10)
        assert not np.array_equal(a, b)

    def test_derive_independent_of_creation_order(self):
        first = RngStream.derive(7, 3).random(5)
        RngStream.derive(7, 0).random(100)
        again = RngStream.derive(7, 3).random(5)
        assert np.array_equal(first, again)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            RngStream(-1)
        with pytest.raises(ValueError):
            RngStream(2 ** 64)

    def test_bernoulli_scalar_and_batch(self, rng):
        assert rng.bernoulli(0.0) == 0
        assert rng.bernoulli(1.0) == 1
        bits = rng.bernoulli(0.5, size=1000)
        assert bits.dtype == np.int8
        assert set(np.unique(bits)) <= {0, 1}


class TestSphere:
    """Тесты равномерной выборки на сфере"""

    def test_unit_norm(self, rng):
        v = sample_unit_sphere(rng, 7)
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-12

    def test_batch_unit_norms(self, rng):
        v = sample_unit_sphere(rng, 5, size=1000)
        assert v.shape == (1000, 5)
        np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1.0, rtol=1e-12)

    def test_dimension_one_is_sign(self, rng):
        v = sample_unit_sphere(rng, 1, size=200)
        assert set(np.unique(v)) <= {-1.0, 1.0}

    def test_zero_dimension_rejected(self, rng):
        with pytest.raises(ValueError):
            sample_unit_sphere(rng, 0)

    @pytest.mark.slow
    def test_isotropy(self):
        """Ковариация выборки близка к I/d: d=10, 2·10⁵ выборок"""
        d, n = 10, 200_000
        v = sample_unit_sphere(RngStream(2024), d, size=n)
        cov = v.T @ v / n
        assert np.max(np.abs(cov - np.eye(d) / d)) < 5e-3

    @pytest.mark.parametrize("d", [2, 5])
    def test_isotropy_small_dimensions(self, d):
        """E[u uᵀ] = I/d при d ∈ {2, 5}"""
        n = 100_000
        v = sample_unit_sphere(RngStream(2025 + d), d, size=n)
        cov = v.T @ v / n
        assert np.max(np.abs(cov - np.eye(d) / d)) < 1e-2

    def test_mean_near_zero(self):
        v = sample_unit_sphere(RngStream(1), 4, size=50_000)
        assert np.max(np.abs(v.mean(axis=0))) < 0.02


class TestBall:
    def test_inside_ball(self, rng):
        u = sample_unit_ball(rng, 6, size=2000)
        assert np.all(np.linalg.norm(u, axis=1) <= 1.0)

    def test_radius_distribution(self):
        """P(‖u‖ ≤ 1/2) = 2^{−d}"""
        d = 3
        u = sample_unit_ball(RngStream(5), d, size=40_000)
        frequency = np.mean(np.linalg.norm(u, axis=1) <= 0.5)
        assert abs(frequency - 0.5 ** d) < 0.01


class TestUniformIndex:
    def test_range(self, rng):
        draws = {sample_uniform_index(rng, 3) for _ in range(200)}
        assert draws == {0, 1, 2}

    def test_empty_rejected(self, rng):
        with pytest.raises(ValueError):
            sample_uniform_index(rng, 0)

    def test_two_elements_balanced(self):
        """Частота индекса 1 при n=2 в пределах 4σ от 1/2"""
        draws = 20_000
        rng = RngStream(77)
        ones = sum(sample_uniform_index(rng, 2) for _ in range(draws))
        sigma = math.sqrt(0.25 / draws)
        assert abs(ones / draws - 0.5) <= 4 * sigma
