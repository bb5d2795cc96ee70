"""
Монте-Карло оракулы рандомизированного сглаживания (эталоны для тестов).

- smoothed_value_mc(): f_μ(x) = E_{u ∼ U(B^d)}[f(x + μu)] со свежим шумом на каждую выборку
- smoothed_grad_mc(): ∇f_μ(x) = E_v[(d/(2μ))(F(x+μv; ξ) − F(x−μv; ξ))v] покомпонентно

Выборки обрабатываются векторизованно блоками по MC_CHUNK_SIZE; моменты
блоков объединяются попарно (среднее и M2), без вычитания больших сумм.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from poem_zo.config.constants import MC_CHUNK_SIZE
from poem_zo.problems import StochasticProblem
from poem_zo.sampling import RngStream, sample_unit_ball, sample_unit_sphere
from poem_zo.vectorspace import Vector, as_vector


class _RunningMoments:
    """Среднее и M2 с попарным объединением блоков."""

    def __init__(self, shape=()) -> None:
        self.count = 0
        self.mean = np.zeros(shape)
        self.m2 = np.zeros(shape)

    def update(self, block: np.ndarray) -> None:
        n_block = block.shape[0]
        block_mean = block.mean(axis=0)
        block_m2 = ((block - block_mean) ** 2).sum(axis=0)
        total = self.count + n_block
        delta = block_mean - self.mean
        self.mean = self.mean + delta * (n_block / total)
        self.m2 = self.m2 + block_m2 + delta * delta * (self.count * n_block / total)
        self.count = total

    def stderr(self):
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


def _chunks(n_samples: int):
    remaining = n_samples
    while remaining > 0:
        size = min(MC_CHUNK_SIZE, remaining)
        yield size
        remaining -= size


def _check_inputs(mu: float, n_samples: int) -> None:
    if not mu > 0:
        raise ValueError(f"Параметр сглаживания должен быть положительным, получено {mu}")
    if n_samples < 2:
        raise ValueError(f"Нужно как минимум 2 выборки, получено {n_samples}")


def smoothed_value_mc(
    problem: StochasticProblem,
    x,
    mu: float,
    n_samples: int,
    rng: RngStream,
) -> Tuple[float, float]:
    """
    Оценка f_μ(x) методом Монте-Карло.

    Возвращает (среднее, стандартная ошибка).
    """
    _check_inputs(mu, n_samples)
    x = as_vector(x, problem.dimension)
    d = problem.dimension
    moments = _RunningMoments()
    for size in _chunks(n_samples):
        points = x + mu * sample_unit_ball(rng, d, size)
        noises = problem.sample_noise_batch(rng, size)
        moments.update(problem.evaluate_batch(points, noises))
    return float(moments.mean), float(moments.stderr())


def smoothed_grad_mc(
    problem: StochasticProblem,
    x,
    mu: float,
    n_samples: int,
    rng: RngStream,
) -> Tuple[Vector, Vector]:
    """
    Покомпонентная оценка ∇f_μ(x) через среднее двухточечных оценок.

    Возвращает (среднее, стандартная ошибка) - оба вектора размерности d.
    """
    _check_inputs(mu, n_samples)
    x = as_vector(x, problem.dimension)
    d = problem.dimension
    moments = _RunningMoments(d)
    for size in _chunks(n_samples):
        directions = sample_unit_sphere(rng, d, size)
        noises = problem.sample_noise_batch(rng, size)
        f_plus = problem.evaluate_batch(x + mu * directions, noises)
        f_minus = problem.evaluate_batch(x - mu * directions, noises)
        moments.update(((d / (2.0 * mu)) * (f_plus - f_minus))[:, None] * directions)
    return moments.mean, moments.stderr()


__all__ = ["smoothed_grad_mc", "smoothed_value_mc"]
