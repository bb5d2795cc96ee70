"""
Двухточечная оценка градиента по случайному направлению на сфере:

    g = (d / (2μ)) · (F(x + μv; ξ) − F(x − μv; ξ)) · v

Один вызов стоит ровно 2 обращения к оракулу (SZO). Точки x ± μv
вычисляются без проекции на область: все задачи определены на всём ℝ^d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from poem_zo.config.constants import UNIT_DIRECTION_TOL
from poem_zo.problems import NoiseDraw, StochasticProblem
from poem_zo.vectorspace import DimensionMismatchError, Vector

SZO_CALLS_PER_ESTIMATE = 2


@dataclass(frozen=True)
class TwoPointEstimate:
    """
    Результат двухточечной оценки.
    - g: оценка градиента (коллинеарна v_used)
    - mu_used: параметр сглаживания μ
    - v_used: направление на единичной сфере
    - szo_cost: число вызовов оракула (всегда 2)
    """
    g: Vector
    mu_used: float
    v_used: Vector
    szo_cost: int = SZO_CALLS_PER_ESTIMATE

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.g))


def finite_difference(
    problem: StochasticProblem,
    x: Vector,
    mu: float,
    v: Vector,
    xi: NoiseDraw,
) -> TwoPointEstimate:
    """
    Стохастическая конечная разность по направлению v при общей реализации ξ.

    Исключения:
    - ValueError: μ ≤ 0 или ‖v‖ ≠ 1
    - DimensionMismatchError: размерности x, v и задачи не совпадают
    """
    if not mu > 0:
        raise ValueError(f"Параметр сглаживания должен быть положительным, получено {mu}")
    d = problem.dimension
    if x.shape != (d,) or v.shape != (d,):
        raise DimensionMismatchError(f"Ожидались векторы размерности {d}, получено {x.shape} и {v.shape}")
    v_norm = float(np.linalg.norm(v))
    if abs(v_norm - 1.0) > UNIT_DIRECTION_TOL:
        raise ValueError(f"Направление должно быть единичным, ‖v‖ = {v_norm!r}")

    step = mu * v
    f_plus, f_minus = problem.evaluate_pair(x + step, x - step, xi)
    g = (d / (2.0 * mu)) * (f_plus - f_minus) * v
    return TwoPointEstimate(g=g, mu_used=float(mu), v_used=v)


__all__ = ["SZO_CALLS_PER_ESTIMATE", "TwoPointEstimate", "finite_difference"]
