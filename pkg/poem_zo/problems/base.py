"""
Базовый контракт стохастической задачи с двухточечным нулевого порядка оракулом (SZO).

Оракул возвращает пару значений F(x; ξ), F(y; ξ) при ОДНОЙ общей реализации шума ξ.
Конкретные задачи (hinge SVM, трудный пример, синтетика) наследуют StochasticProblem.

Реализация шума (NoiseDraw) непрозрачна для оптимизатора:
- SVM: индекс примера (int)
- трудный пример: бит Бернулли (int)
- синтетика: вектор шума (ndarray) либо None при нулевом шуме
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from poem_zo.sampling import RngStream
from poem_zo.vectorspace import DimensionMismatchError, Domain, Vector, as_vector

NoiseDraw = Any


class StochasticProblem(ABC):
    """
    Стохастическая выпуклая задача min_{x ∈ X} f(x) = E_ξ[F(x; ξ)].

    Атрибуты:
    - dimension: размерность d
    - domain: допустимая область
    - lipschitz_bound: L, общая для всех компонент константа Липшица
    - component_lipschitz: худшая константа Липшица отдельной компоненты F(·; ξ)
    - optimum_value: f_⋆, если известно
    - minimizer: x_⋆, если известен
    """

    name: str = "problem"

    def __init__(
        self,
        dimension: int,
        domain: Domain,
        lipschitz_bound: float,
        component_lipschitz: Optional[float] = None,
        optimum_value: Optional[float] = None,
        minimizer: Optional[Vector] = None,
    ) -> None:
        if dimension < 1:
            raise ValueError(f"Размерность должна быть ≥ 1, получено {dimension}")
        if domain.dimension != dimension:
            raise DimensionMismatchError(
                f"Размерность области {domain.dimension} не совпадает с размерностью задачи {dimension}"
            )
        if not lipschitz_bound > 0:
            raise ValueError(f"Константа Липшица должна быть положительной, получено {lipschitz_bound}")
        self.dimension = int(dimension)
        self.domain = domain
        self.lipschitz_bound = float(lipschitz_bound)
        self.component_lipschitz = float(component_lipschitz if component_lipschitz is not None else lipschitz_bound)
        self.optimum_value = None if optimum_value is None else float(optimum_value)
        self.minimizer = None if minimizer is None else as_vector(minimizer, dimension)

    # ----------------
    # Оракул
    # ----------------

    @abstractmethod
    def evaluate(self, x: Vector, xi: NoiseDraw) -> float:
        """Одно значение F(x; ξ)."""

    @abstractmethod
    def sample_noise(self, rng: RngStream) -> NoiseDraw:
        """Реализация ξ ∼ Ξ."""

    def evaluate_pair(self, x: Vector, y: Vector, xi: NoiseDraw) -> Tuple[float, float]:
        """
        Двухточечный вызов оракула: (F(x; ξ), F(y; ξ)) при общей реализации ξ.
        """
        self._check_point(x)
        self._check_point(y)
        return self.evaluate(x, xi), self.evaluate(y, xi)

    def sample_noise_batch(self, rng: RngStream, size: int) -> Sequence[NoiseDraw]:
        """Пакет независимых реализаций шума (для Монте-Карло оценок)."""
        return [self.sample_noise(rng) for _ in range(size)]

    def evaluate_batch(self, points: np.ndarray, noises: Sequence[NoiseDraw]) -> np.ndarray:
        """F(points[i]; noises[i]) для каждой строки points."""
        return np.array([self.evaluate(point, xi) for point, xi in zip(points, noises)], dtype=np.float64)

    # ----------------
    # Точная цель
    # ----------------

    @property
    def has_objective(self) -> bool:
        return False

    def objective(self, x: Vector) -> float:
        """Точное значение f(x), если задача его предоставляет."""
        raise NotImplementedError(f"Задача {self.name} не предоставляет точное значение f(x)")

    def _check_point(self, x: Vector) -> None:
        if x.shape != (self.dimension,):
            raise DimensionMismatchError(f"Ожидалась точка размерности {self.dimension}, получено {x.shape}")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, d={self.dimension}, L={self.lipschitz_bound:.6g})"


__all__ = ["NoiseDraw", "StochasticProblem"]
