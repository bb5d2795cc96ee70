"""
Допустимые области и евклидова геометрия для итераций оптимизаторов.

Реализовано:
- as_vector(): приведение к плотному float64 вектору с проверкой конечности
- Ball / Box / Unbounded: замкнутый набор выпуклых областей
- project(): евклидова проекция на область
- diameter(): диаметр области (math.inf для Unbounded)
- distance(): евклидово расстояние
- contains(): проверка принадлежности с относительным допуском

Примечания:
- Проекция на шар для точки на границе возвращает точку без изменений.
- Все объекты неизменяемы после создания; массивы помечаются read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import numpy.typing as npt

from poem_zo.config.constants import MEMBERSHIP_RTOL

Vector = npt.NDArray[np.float64]


class DimensionMismatchError(ValueError):
    """Размерности векторов/области не совпадают."""


class NonFiniteVectorError(ValueError):
    """Вектор содержит NaN или Inf."""


class DomainError(ValueError):
    """Некорректные параметры области."""


def as_vector(values, dimension: int | None = None) -> Vector:
    """
    Приводит значения к одномерному float64 массиву.

    Параметры:
    - values: последовательность чисел или numpy массив
    - dimension: ожидаемая длина (опционально)

    Исключения:
    - NonFiniteVectorError: есть NaN/Inf
    - DimensionMismatchError: длина не совпадает с dimension
    """
    vec = np.asarray(values, dtype=np.float64)
    if vec.ndim == 0:
        vec = vec.reshape(1)
    if vec.ndim != 1:
        raise DimensionMismatchError(f"Ожидался одномерный вектор, получена форма {vec.shape}")
    if dimension is not None and vec.shape[0] != dimension:
        raise DimensionMismatchError(f"Ожидалась размерность {dimension}, получено {vec.shape[0]}")
    if not np.all(np.isfinite(vec)):
        raise NonFiniteVectorError("Вектор содержит NaN или Inf")
    return vec


def _frozen(vec: Vector) -> Vector:
    out = np.array(vec, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def _check_same_dimension(x: Vector, y: Vector) -> None:
    if x.shape != y.shape:
        raise DimensionMismatchError(f"Размерности не совпадают: {x.shape} и {y.shape}")


@dataclass(frozen=True, eq=False)
class Ball:
    """
    Евклидов шар {x : ‖x − center‖ ≤ radius}.
    - center: центр шара
    - radius: положительный радиус
    """
    center: Vector
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _frozen(as_vector(self.center)))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"Радиус шара должен быть положительным, получено {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def centered(cls, dimension: int, radius: float) -> "Ball":
        """Шар радиуса radius с центром в нуле."""
        return cls(np.zeros(dimension), radius)

    @property
    def dimension(self) -> int:
        return int(self.center.shape[0])


@dataclass(frozen=True, eq=False)
class Box:
    """
    Прямоугольный бокс {x : lower ≤ x ≤ upper} (покомпонентно).
    """
    lower: Vector
    upper: Vector

    def __post_init__(self) -> None:
        lower = as_vector(self.lower)
        upper = as_vector(self.upper)
        _check_same_dimension(lower, upper)
        if np.any(lower > upper):
            raise DomainError("Нижняя граница бокса превышает верхнюю")
        object.__setattr__(self, "lower", _frozen(lower))
        object.__setattr__(self, "upper", _frozen(upper))

    @property
    def dimension(self) -> int:
        return int(self.lower.shape[0])


@dataclass(frozen=True)
class Unbounded:
    """Всё пространство ℝ^d."""
    dimension: int = field(default=1)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DomainError(f"Размерность должна быть ≥ 1, получено {self.dimension}")


Domain = Union[Ball, Box, Unbounded]


def project(domain: Domain, x) -> Vector:
    """
    Евклидова проекция точки x на область.

    - Ball: радиальное сжатие к центру, если точка вне шара
    - Box: покомпонентное отсечение
    - Unbounded: x без изменений
    """
    vec = as_vector(x, domain.dimension)
    if isinstance(domain, Ball):
        offset = vec - domain.center
        norm = float(np.linalg.norm(offset))
        if norm <= domain.radius:
            return vec
        return domain.center + offset * (domain.radius / norm)
    if isinstance(domain, Box):
        return np.clip(vec, domain.lower, domain.upper)
    if isinstance(domain, Unbounded):
        return vec
    raise TypeError(f"Неизвестный тип области: {type(domain).__name__}")


def diameter(domain: Domain) -> float:
    """Диаметр области: 2·radius, ‖upper − lower‖ или math.inf."""
    if isinstance(domain, Ball):
        return 2.0 * domain.radius
    if isinstance(domain, Box):
        return float(np.linalg.norm(domain.upper - domain.lower))
    if isinstance(domain, Unbounded):
        return math.inf
    raise TypeError(f"Неизвестный тип области: {type(domain).__name__}")


def distance(x, y) -> float:
    """Евклидово расстояние ‖x − y‖₂."""
    xv = as_vector(x)
    yv = as_vector(y)
    _check_same_dimension(xv, yv)
    return float(np.linalg.norm(xv - yv))


def contains(domain: Domain, x, rtol: float = MEMBERSHIP_RTOL) -> bool:
    """Проверка принадлежности точки области с относительным допуском rtol."""
    vec = as_vector(x, domain.dimension)
    if isinstance(domain, Ball):
        return float(np.linalg.norm(vec - domain.center)) <= domain.radius * (1.0 + rtol)
    if isinstance(domain, Box):
        scale = np.maximum(1.0, np.maximum(np.abs(domain.lower), np.abs(domain.upper)))
        slack = rtol * scale
        return bool(np.all(vec >= domain.lower - slack) and np.all(vec <= domain.upper + slack))
    return True


__all__ = [
    "Vector",
    "Ball",
    "Box",
    "Unbounded",
    "Domain",
    "DimensionMismatchError",
    "NonFiniteVectorError",
    "DomainError",
    "as_vector",
    "project",
    "diameter",
    "distance",
    "contains",
]
