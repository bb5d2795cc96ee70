"""
Компенсированное суммирование (вариант Неймайера) для скаляров и векторов.

Используется для накопления G_t, Σ r̄_k и Σ r̄_k x_k на длинных прогонах
(T до 10⁶), где наивная сумма теряет младшие разряды.
"""

from __future__ import annotations

import numpy as np


class KahanAccumulator:
    """
    Сумма с поправкой Неймайера.

    Одинаковая последовательность add() даёт побитово одинаковое value,
    поэтому повторное суммирование истории воспроизводит результат прогона.
    """

    def __init__(self, shape=()) -> None:
        self.shape = (int(shape),) if isinstance(shape, (int, np.integer)) else tuple(shape)
        self._sum = np.zeros(self.shape)
        self._compensation = np.zeros(self.shape)
        self.count = 0

    def add(self, value) -> None:
        value = np.asarray(value, dtype=np.float64)
        total = self._sum + value
        larger = np.abs(self._sum) >= np.abs(value)
        self._compensation = self._compensation + np.where(
            larger, (self._sum - total) + value, (value - total) + self._sum
        )
        self._sum = total
        self.count += 1

    @property
    def value(self):
        total = self._sum + self._compensation
        if self.shape == ():
            return float(total)
        return total

    def __repr__(self) -> str:
        return f"KahanAccumulator(shape={self.shape}, count={self.count})"


__all__ = ["KahanAccumulator"]
