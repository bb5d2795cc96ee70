"""
Трудная пара задач на ℝ^d, неразличимых для любого SZO алгоритма за T вызовов
с вероятностью (1 − 1/T)^T ≥ 1/e.

Шум: ξ ∼ Bernoulli(1/T).
- f₁(x) = L‖x‖₁, оракул F₁(x; ξ) = L‖x‖₁ (не зависит от ξ), минимум в 0
- f₂(x) = L‖x − u‖₁, u = (1 − 1/T)·1_d, минимум в u:
    F₂(x; 0) = L‖x‖₁
    F₂(x; 1) = T·L‖x − u‖₁ − (T − 1)·L‖x‖₁
  E_ξ[F₂(x; ξ)] = f₂(x).

Заметки:
- ℓ₁-норма является √d-липшицевой в евклидовой метрике, поэтому lipschitz_bound = L√d
  (совпадает с L при d = 1); худшая компонента F₂(·; 1) имеет константу 2TL√d.
- F₂(·; 1) не выпукла (вогнутый излом в 0); выпукла только f₂ и компонента ξ = 0.
"""

from __future__ import annotations

import math
from typing import Literal, Sequence, Tuple

import numpy as np

from poem_zo.sampling import RngStream
from poem_zo.vectorspace import Unbounded, Vector

from .base import StochasticProblem

HardInstanceKind = Literal["f1", "f2"]


class HardInstanceProblem(StochasticProblem):
    """Задача f₁ или f₂ из трудной пары."""

    def __init__(self, which: HardInstanceKind, lipschitz: float, horizon: int, dimension: int) -> None:
        if which not in ("f1", "f2"):
            raise ValueError(f"which должен быть 'f1' или 'f2', получено {which!r}")
        if horizon < 2:
            raise ValueError(f"T должно быть ≥ 2, получено {horizon}")
        if not lipschitz > 0:
            raise ValueError(f"L должно быть положительным, получено {lipschitz}")
        self.which = which
        self.scale = float(lipschitz)
        self.horizon = int(horizon)
        self.shift = np.full(dimension, 1.0 - 1.0 / horizon)
        root_d = math.sqrt(dimension)
        component = self.scale * root_d if which == "f1" else 2.0 * horizon * self.scale * root_d
        super().__init__(
            dimension=dimension,
            domain=Unbounded(dimension),
            lipschitz_bound=self.scale * root_d,
            component_lipschitz=component,
            optimum_value=0.0,
            minimizer=np.zeros(dimension) if which == "f1" else self.shift,
        )
        self.name = f"hard-{which}"

    def evaluate(self, x: Vector, xi: int) -> float:
        base = self.scale * float(np.abs(x).sum())
        if self.which == "f1" or xi == 0:
            return base
        shifted = self.scale * float(np.abs(x - self.shift).sum())
        return self.horizon * shifted - (self.horizon - 1) * base

    def sample_noise(self, rng: RngStream) -> int:
        return rng.bernoulli(1.0 / self.horizon)

    def sample_noise_batch(self, rng: RngStream, size: int) -> np.ndarray:
        return rng.bernoulli(1.0 / self.horizon, size=size)

    def evaluate_batch(self, points: np.ndarray, noises: Sequence[int]) -> np.ndarray:
        bits = np.asarray(noises)
        base = self.scale * np.abs(points).sum(axis=1)
        if self.which == "f1":
            return base
        shifted = self.scale * np.abs(points - self.shift).sum(axis=1)
        return np.where(bits == 1, self.horizon * shifted - (self.horizon - 1) * base, base)

    @property
    def has_objective(self) -> bool:
        return True

    def objective(self, x: Vector) -> float:
        if self.which == "f1":
            return self.scale * float(np.abs(x).sum())
        return self.scale * float(np.abs(x - self.shift).sum())


def make_hard_instance(which: HardInstanceKind, L: float, T: int, d: int) -> HardInstanceProblem:
    """Задача f₁ / f₂ с константой L, горизонтом T ≥ 2 и размерностью d."""
    return HardInstanceProblem(which, L, T, d)


def all_zero_probability(T: int, trials: int, rng: RngStream) -> Tuple[float, float]:
    """
    Частота события «все T реализаций ξ равны 0» (оракулы f₁ и f₂ совпадают)
    по trials независимым испытаниям.

    Возвращает (эмпирическая частота, точное значение (1 − 1/T)^T).
    """
    if T < 2:
        raise ValueError(f"T должно быть ≥ 2, получено {T}")
    bits = rng.bernoulli(1.0 / T, size=(trials, T))
    frequency = float(np.mean(~bits.any(axis=1)))
    return frequency, (1.0 - 1.0 / T) ** T


__all__ = ["HardInstanceKind", "HardInstanceProblem", "all_zero_probability", "make_hard_instance"]
