"""
Тесты областей и проекций
"""

import math

import numpy as np
import pytest

from poem_zo.vectorspace import (
    Ball,
    Box,
    DimensionMismatchError,
    DomainError,
    NonFiniteVectorError,
    Unbounded,
    as_vector,
    contains,
    diameter,
    distance,
    project,
)


class TestAsVector:
    """Тесты приведения к вектору"""

    def test_list_to_float64(self):
        vec = as_vector([1, 2, 3])
        assert vec.dtype == np.float64
        assert vec.shape == (3,)

    def test_nan_rejected(self):
        with pytest.raises(NonFiniteVectorError):
            as_vector([1.0, math.nan])

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatchError):
            as_vector([1.0, 2.0], dimension=3)


class TestDomains:
    """Тесты конструкторов областей"""

    def test_ball_radius_positive(self):
        with pytest.raises(DomainError):
            Ball.centered(3, 0.0)

    def test_box_bounds_ordered(self):
        with pytest.raises(DomainError):
            Box([0.0, 1.0], [1.0, 0.0])

    def test_ball_center_read_only(self):
        ball = Ball.centered(2, 1.0)
        with pytest.raises(ValueError):
            ball.center[0] = 5.0

    def test_diameter(self):
        assert diameter(Ball.centered(4, 1.5)) == 3.0
        assert diameter(Box([0.0, 0.0], [3.0, 4.0])) == 5.0
        assert diameter(Unbounded(3)) == math.inf


class TestProject:
    """Тесты проекции"""

    def test_ball_outside_point(self):
        """Точка (3, 4) на единичный шар → (0.6, 0.8)"""
        np.testing.assert_allclose(project(Ball.centered(2, 1.0), [3.0, 4.0]), [0.6, 0.8])

    def test_ball_inside_point_unchanged(self):
        x = np.array([0.1, -0.2])
        assert np.array_equal(project(Ball.centered(2, 1.0), x), x)

    def test_ball_boundary_point_unchanged(self):
        x = np.array([0.6, 0.8])
        assert np.array_equal(project(Ball.centered(2, 1.0), x), x)

    def test_box_clip(self):
        np.testing.assert_array_equal(project(Box([0.0, 0.0], [1.0, 1.0]), [2.0, -1.0]), [1.0, 0.0])

    def test_unbounded_identity(self):
        x = np.array([1e6, -1e6])
        assert np.array_equal(project(Unbounded(2), x), x)

    def test_projection_is_member_and_idempotent(self, rng):
        """Проекция лежит в области, повторная проекция ничего не меняет"""
        ball = Ball([1.0, -2.0, 0.5], 0.3)
        for _ in range(200):
            x = 10.0 * rng.standard_normal(3)
            p = project(ball, x)
            assert contains(ball, p)
            np.testing.assert_allclose(project(ball, p), p, rtol=0, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            project(Ball.centered(2, 1.0), [1.0, 2.0, 3.0])


class TestDistance:
    def test_distance(self):
        assert distance([0.0, 0.0], [3.0, 4.0]) == 5.0

    def test_distance_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            distance([0.0], [1.0, 2.0])


class TestNonexpansive:
    """‖Π(x) − Π(y)‖ ≤ ‖x − y‖"""

    @pytest.mark.parametrize(
        "domain",
        [Ball([1.0, -2.0, 0.5], 0.3), Box([-1.0, 0.0, 0.5], [0.0, 2.0, 0.75]), Unbounded(3)],
        ids=["ball", "box", "unbounded"],
    )
    def test_projection_nonexpansive(self, domain, rng):
        for _ in range(300):
            x, y = 5.0 * rng.standard_normal(3), 5.0 * rng.standard_normal(3)
            gap = np.linalg.norm(project(domain, x) - project(domain, y))
            assert gap <= np.linalg.norm(x - y) + 1e-12
