"""
Отчёт о проверке неравенства и частотные помощники для вероятностных оценок.

BoundReport хранит по каждому t левую и правую части неравенства:
- relation="le": проверяется LHS ≤ RHS
- relation="ge": проверяется LHS ≥ RHS
Нарушение фиксируется с относительным допуском BOUND_SLACK.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Literal, Sequence, Union

import numpy as np
import pandas as pd

from poem_zo.config.constants import BINOMIAL_SIGMAS, BOUND_SLACK, FLOAT_FORMAT


class DiagnosticsError(ValueError):
    """Трасса не подходит для проверки (нет истории, другое расписание, нет f_⋆)."""


@dataclass
class BoundReport:
    name: str
    t: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    relation: Literal["le", "ge"] = "le"
    skipped: List[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=np.int64)
        self.lhs = np.asarray(self.lhs, dtype=np.float64)
        self.rhs = np.asarray(self.rhs, dtype=np.float64)
        if not self.t.shape == self.lhs.shape == self.rhs.shape:
            raise ValueError("t, lhs и rhs должны иметь одинаковую длину")

    @property
    def violations(self) -> np.ndarray:
        """Маска нарушений по строкам."""
        slack = BOUND_SLACK * np.abs(self.rhs)
        if self.relation == "le":
            return self.lhs > self.rhs + slack
        return self.lhs < self.rhs - slack

    @property
    def violated(self) -> bool:
        return bool(np.any(self.violations))

    @property
    def ratios(self) -> np.ndarray:
        """LHS/RHS (для "ge" - RHS/LHS); значение > 1 означает нарушение."""
        num, den = (self.lhs, self.rhs) if self.relation == "le" else (self.rhs, self.lhs)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.where(num > 0, np.inf, 0.0))
        return ratios

    @property
    def worst_ratio(self) -> float:
        if self.t.size == 0:
            return 0.0
        return float(np.max(self.ratios))

    def summary_line(self) -> str:
        return (
            f"# {self.name}: rows={self.t.size} worst_ratio={self.worst_ratio:.17g} "
            f"violated={str(self.violated).lower()} skipped={len(self.skipped)}"
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": self.t,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "ratio": self.ratios,
                "violated": self.violations,
            }
        )

    def to_csv(self, path: Union[str, Path], float_format: str = FLOAT_FORMAT) -> Path:
        """Строка на каждый t и итоговая строка-комментарий в конце."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            self.to_frame().to_csv(handle, index=False, float_format=float_format, lineterminator="\n")
            handle.write(self.summary_line() + "\n")
        return path


def violation_rate(reports: Iterable[BoundReport]) -> float:
    """Доля отчётов с хотя бы одним нарушением."""
    flags = [report.violated for report in reports]
    if not flags:
        raise ValueError("Пустой набор отчётов")
    return float(np.mean(flags))


def binomial_upper(p: float, n: int, sigmas: float = BINOMIAL_SIGMAS) -> float:
    """p + sigmas·√(p(1−p)/n): верхняя граница частоты с биномиальным допуском."""
    if n < 1:
        raise ValueError(f"Число испытаний должно быть ≥ 1, получено {n}")
    return p + sigmas * math.sqrt(p * (1.0 - p) / n)


def radius_exceedance_rate(final_rbars: Sequence[float], s0: float, factor: float = 3.0) -> float:
    """Доля прогонов с r̄_T > factor·s₀."""
    values = np.asarray(final_rbars, dtype=np.float64)
    if values.size == 0:
        raise ValueError("Пустой набор прогонов")
    return float(np.mean(values > factor * s0))


__all__ = [
    "BoundReport",
    "DiagnosticsError",
    "binomial_upper",
    "radius_exceedance_rate",
    "violation_rate",
]
