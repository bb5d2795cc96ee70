"""
Детерминированные потоки случайных чисел и сэмплеры сферы/шара.

Реализовано:
- RngStream: воспроизводимый поток на счётчиковом генераторе Philox
  - RngStream.derive(seed, r): независимый подпоток r-й репликации
- sample_unit_sphere(): равномерное распределение на S^{d-1} (нормированный гауссовский вектор)
- sample_unit_ball(): равномерное распределение в B^d (сфера × U^{1/d})
- sample_uniform_index(): равномерный индекс из {0, …, n−1}

Заметки:
- Один поток - один владелец. Подпотоки derive(seed, r) строятся через
  SeedSequence.spawn_key и не зависят от порядка их создания, поэтому
  параллельные прогоны сетки не связаны между собой.
- Нулевой гауссовский вектор (вероятность 0, но возможен в плавающей точке)
  отбрасывается и перевыбирается.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from poem_zo.vectorspace import Vector

_MAX_SEED = 2 ** 64


class RngStream:
    """
    Воспроизводимый поток случайных чисел.

    Одинаковый seed (и spawn_key) даёт побитово одинаковую последовательность.
    """

    def __init__(self, seed: int, spawn_key: Tuple[int, ...] = ()) -> None:
        seed = int(seed)
        if not 0 <= seed < _MAX_SEED:
            raise ValueError(f"seed должен быть 64-битным неотрицательным целым, получено {seed}")
        self.seed = seed
        self.spawn_key = tuple(int(k) for k in spawn_key)
        sequence = np.random.SeedSequence(entropy=seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.Philox(sequence))

    @classmethod
    def derive(cls, seed: int, replication: int) -> "RngStream":
        """Подпоток для репликации replication эксперимента с базовым seed."""
        if replication < 0:
            raise ValueError(f"Номер репликации должен быть ≥ 0, получено {replication}")
        return cls(seed, (replication,))

    # ----------------------
    # Базовые распределения
    # ----------------------

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def random(self, size=None):
        return self.generator.random(size)

    def integers(self, high: int, size=None):
        return self.generator.integers(0, high, size=size)

    def bernoulli(self, p: float, size=None):
        """Бернуллиевские биты {0, 1} с P(1) = p."""
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Вероятность должна лежать в [0, 1], получено {p}")
        draws = self.generator.random(size) < p
        if size is None:
            return int(draws)
        return draws.astype(np.int8)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"


def _check_dimension(d: int) -> None:
    if d < 1:
        raise ValueError(f"Размерность должна быть ≥ 1, получено {d}")


def sample_unit_sphere(rng: RngStream, d: int, size: Optional[int] = None) -> Vector:
    """
    Равномерная выборка на единичной сфере S^{d-1}.

    Параметры:
    - rng: поток случайных чисел
    - d: размерность (≥ 1)
    - size: если задан, возвращается массив формы (size, d)
    """
    _check_dimension(d)
    if size is None:
        while True:
            z = rng.standard_normal(d)
            norm = float(np.linalg.norm(z))
            if norm > 0.0:
                return z / norm

    z = rng.standard_normal((size, d))
    norms = np.linalg.norm(z, axis=1)
    zero_rows = np.flatnonzero(norms == 0.0)
    for row in zero_rows:
        z[row] = sample_unit_sphere(rng, d)
        norms[row] = 1.0
    return z / norms[:, None]


def sample_unit_ball(rng: RngStream, d: int, size: Optional[int] = None) -> Vector:
    """
    Равномерная выборка в единичном шаре B^d: точка сферы, масштабированная на U^{1/d}.
    """
    _check_dimension(d)
    direction = sample_unit_sphere(rng, d, size)
    if size is None:
        return direction * float(rng.random()) ** (1.0 / d)
    radii = rng.random(size) ** (1.0 / d)
    return direction * radii[:, None]


def sample_uniform_index(rng: RngStream, n: int) -> int:
    """Равномерный индекс из {0, …, n−1}."""
    if n < 1:
        raise ValueError(f"Число элементов должно быть ≥ 1, получено {n}")
    return int(rng.integers(n))


__all__ = [
    "RngStream",
    "sample_unit_sphere",
    "sample_unit_ball",
    "sample_uniform_index",
]
