"""
Hinge-loss SVM как стохастическая задача: F(x; a, b) = max{0, 1 − b·aᵀx},
(a, b) равномерно выбирается из датасета, X = {‖x‖ ≤ R}.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from poem_zo.sampling import RngStream, sample_uniform_index
from poem_zo.vectorspace import Ball, Vector

from .base import StochasticProblem
from .libsvm import EmptyDatasetError, SparseDataset


class HingeSvmProblem(StochasticProblem):
    """
    Задача hinge SVM на разреженном датасете.

    L = max_i ‖a_i‖ (ограничение нормы субградиента hinge-компоненты).
    Шум ξ - индекс примера.
    """

    def __init__(self, dataset: SparseDataset, radius: float = 1.0) -> None:
        if dataset.n < 1:
            raise EmptyDatasetError("Датасет пуст")
        norms = dataset.row_norms()
        lipschitz = float(norms.max())
        if lipschitz <= 0.0:
            raise ValueError("Все признаки нулевые: константа Липшица не определена")
        super().__init__(
            dimension=dataset.d,
            domain=Ball.centered(dataset.d, radius),
            lipschitz_bound=lipschitz,
        )
        self.name = f"hinge-{dataset.name}" if dataset.name else "hinge"
        self.dataset = dataset
        self.radius = float(radius)
        # Прямой доступ к CSR массивам для быстрого скалярного произведения по строке
        self._indptr = dataset.features.indptr
        self._indices = dataset.features.indices
        self._data = dataset.features.data
        self._labels = dataset.labels

    def evaluate(self, x: Vector, xi: int) -> float:
        start, end = self._indptr[xi], self._indptr[xi + 1]
        margin = self._labels[xi] * float(self._data[start:end] @ x[self._indices[start:end]])
        return max(0.0, 1.0 - margin)

    def sample_noise(self, rng: RngStream) -> int:
        return sample_uniform_index(rng, self.dataset.n)

    def sample_noise_batch(self, rng: RngStream, size: int) -> np.ndarray:
        return rng.integers(self.dataset.n, size=size)

    def evaluate_batch(self, points: np.ndarray, noises: Sequence[int]) -> np.ndarray:
        idx = np.asarray(noises, dtype=np.int64)
        rows = self.dataset.features[idx]
        dots = np.asarray(rows.multiply(points).sum(axis=1)).ravel()
        return np.maximum(0.0, 1.0 - self._labels[idx] * dots)

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        """Эмпирическая цель: среднее hinge по всему датасету."""
        return float(np.mean(np.maximum(0.0, 1.0 - self.dataset.margins(x))))


def make_hinge_svm(dataset: SparseDataset, radius: float = 1.0) -> HingeSvmProblem:
    """Задача hinge SVM на шаре Ball(0, radius)."""
    return HingeSvmProblem(dataset, radius)


__all__ = ["HingeSvmProblem", "make_hinge_svm"]
