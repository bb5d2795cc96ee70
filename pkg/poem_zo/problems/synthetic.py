"""
Синтетические задачи с известным оптимумом и аналитическим сглаживанием.

Реализовано:
- SyntheticNormProblem: F(x; ξ) = ‖x − x_⋆‖ + ⟨ξ, x⟩, ξ равномерно на сфере радиуса σ;
  f(x) = ‖x − x_⋆‖, f_⋆ = 0, L = 1 + σ
- make_synthetic_known_optimum(): фабрика для ограниченного (шар) и неограниченного вариантов
- LinearProblem: F(x; ξ) = ⟨c + ξ, x⟩, ∇f_μ ≡ c
- QuadraticProblem: F(x) = κ‖x‖², f_μ(x) = κ(‖x‖² + μ²·d/(d+2)), ∇f_μ(x) = 2κx
- ZeroProblem: F ≡ 0 (вырожденный случай, G_t = 0)
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from poem_zo.sampling import RngStream, sample_unit_sphere
from poem_zo.vectorspace import Ball, Domain, Unbounded, Vector, as_vector

from .base import StochasticProblem


def _sphere_noise(rng: RngStream, d: int, radius: float, size: Optional[int] = None):
    if radius == 0.0:
        return None if size is None else [None] * size
    return radius * sample_unit_sphere(rng, d, size)


class SyntheticNormProblem(StochasticProblem):
    """F(x; ξ) = ‖x − x_⋆‖ + ⟨ξ, x⟩ с E[ξ] = 0."""

    name = "synthetic-norm"

    def __init__(self, x_star: Vector, noise_level: float, domain: Domain) -> None:
        if noise_level < 0:
            raise ValueError(f"Уровень шума должен быть ≥ 0, получено {noise_level}")
        x_star = as_vector(x_star)
        self.noise_level = float(noise_level)
        super().__init__(
            dimension=x_star.shape[0],
            domain=domain,
            lipschitz_bound=1.0 + self.noise_level,
            optimum_value=0.0,
            minimizer=x_star,
        )

    def evaluate(self, x: Vector, xi) -> float:
        value = float(np.linalg.norm(x - self.minimizer))
        if xi is not None:
            value += float(xi @ x)
        return value

    def sample_noise(self, rng: RngStream):
        return _sphere_noise(rng, self.dimension, self.noise_level)

    def sample_noise_batch(self, rng: RngStream, size: int):
        return _sphere_noise(rng, self.dimension, self.noise_level, size)

    def evaluate_batch(self, points: np.ndarray, noises) -> np.ndarray:
        values = np.linalg.norm(points - self.minimizer, axis=1)
        if self.noise_level > 0.0:
            values = values + np.einsum("ij,ij->i", np.asarray(noises), points)
        return values

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        return float(np.linalg.norm(x - self.minimizer))


def make_synthetic_known_optimum(
    d: int,
    noise_level: float,
    rng_seed: int,
    radius: float = 1.0,
    bounded: bool = True,
    scale: float = 1.0,
) -> SyntheticNormProblem:
    """
    Синтетическая задача с известным минимумом.

    Параметры:
    - d: размерность
    - noise_level: радиус σ сферы шума
    - rng_seed: seed для выбора x_⋆ (направление случайно, ‖x_⋆‖ = radius/2)
    - radius: радиус области Ball(0, radius) (для bounded=True)
    - bounded: False → область Unbounded(d)
    - scale: общий множитель геометрии (x_⋆ и радиус)
    """
    if d < 1:
        raise ValueError(f"Размерность должна быть ≥ 1, получено {d}")
    direction = sample_unit_sphere(RngStream(rng_seed), d)
    x_star = direction * (0.5 * radius * scale)
    domain: Domain = Ball.centered(d, radius * scale) if bounded else Unbounded(d)
    return SyntheticNormProblem(x_star, noise_level, domain)


class LinearProblem(StochasticProblem):
    """F(x; ξ) = ⟨c + ξ, x⟩; сглаживание не меняет градиент: ∇f_μ ≡ c."""

    name = "linear"

    def __init__(self, c, domain: Optional[Domain] = None, noise_level: float = 0.0) -> None:
        c = as_vector(c)
        norm_c = float(np.linalg.norm(c))
        if norm_c == 0.0:
            raise ValueError("Вектор c должен быть ненулевым")
        domain = domain if domain is not None else Ball.centered(c.shape[0], 1.0)
        minimizer = None
        optimum = None
        if isinstance(domain, Ball):
            minimizer = domain.center - domain.radius * c / norm_c
            optimum = float(c @ minimizer)
        self.c = c
        self.noise_level = float(noise_level)
        super().__init__(
            dimension=c.shape[0],
            domain=domain,
            lipschitz_bound=norm_c + self.noise_level,
            optimum_value=optimum,
            minimizer=minimizer,
        )

    def evaluate(self, x: Vector, xi) -> float:
        value = float(self.c @ x)
        if xi is not None:
            value += float(xi @ x)
        return value

    def sample_noise(self, rng: RngStream):
        return _sphere_noise(rng, self.dimension, self.noise_level)

    def sample_noise_batch(self, rng: RngStream, size: int):
        return _sphere_noise(rng, self.dimension, self.noise_level, size)

    def evaluate_batch(self, points: np.ndarray, noises) -> np.ndarray:
        values = points @ self.c
        if self.noise_level > 0.0:
            values = values + np.einsum("ij,ij->i", np.asarray(noises), points)
        return values

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        return float(self.c @ x)

    def smoothed_value(self, x: Vector, mu: float) -> float:
        return self.objective(x)

    def smoothed_gradient(self, x: Vector, mu: float) -> Vector:
        return self.c.copy()


class QuadraticProblem(StochasticProblem):
    """
    F(x) = κ‖x‖² без шума.

    lipschitz_bound = 2κR действует только на области Ball(0, R);
    глобально квадратичная функция не липшицева.
    """

    name = "quadratic"

    def __init__(self, d: int, coefficient: float = 0.5, radius: float = 1.0) -> None:
        if coefficient <= 0:
            raise ValueError(f"Коэффициент должен быть положительным, получено {coefficient}")
        self.coefficient = float(coefficient)
        super().__init__(
            dimension=d,
            domain=Ball.centered(d, radius),
            lipschitz_bound=2.0 * self.coefficient * radius,
            optimum_value=0.0,
            minimizer=np.zeros(d),
        )

    def evaluate(self, x: Vector, xi) -> float:
        return self.coefficient * float(x @ x)

    def sample_noise(self, rng: RngStream):
        return None

    def sample_noise_batch(self, rng: RngStream, size: int):
        return [None] * size

    def evaluate_batch(self, points: np.ndarray, noises) -> np.ndarray:
        return self.coefficient * np.einsum("ij,ij->i", points, points)

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        return self.coefficient * float(x @ x)

    def smoothed_value(self, x: Vector, mu: float) -> float:
        d = self.dimension
        return self.coefficient * (float(x @ x) + mu * mu * d / (d + 2.0))

    def smoothed_gradient(self, x: Vector, mu: float) -> Vector:
        return 2.0 * self.coefficient * np.asarray(x, dtype=np.float64)


class ZeroProblem(StochasticProblem):
    """F ≡ 0: все оценки градиента нулевые."""

    name = "zero"

    def __init__(self, d: int, domain: Optional[Domain] = None) -> None:
        domain = domain if domain is not None else Ball.centered(d, 1.0)
        # Любая положительная константа ограничивает липшицевость константы
        super().__init__(dimension=d, domain=domain, lipschitz_bound=1.0, optimum_value=0.0)

    def evaluate(self, x: Vector, xi) -> float:
        return 0.0

    def sample_noise(self, rng: RngStream):
        return None

    def sample_noise_batch(self, rng: RngStream, size: int):
        return [None] * size

    def evaluate_batch(self, points: np.ndarray, noises: Sequence) -> np.ndarray:
        return np.zeros(points.shape[0])

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        return 0.0

    def smoothed_gradient(self, x: Vector, mu: float) -> Vector:
        return np.zeros(self.dimension)


__all__ = [
    "LinearProblem",
    "QuadraticProblem",
    "SyntheticNormProblem",
    "ZeroProblem",
    "make_synthetic_known_optimum",
]
