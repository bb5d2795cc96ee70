"""
Сводные метрики экспериментов.

Реализовано:
- median_by_param(): медиана финального значения цели по сидам для каждой пары (алгоритм, параметр)
- relative_spread(): (max − min)/min по сетке параметров
- log_gap(): |log η₁ − log η₂| между двумя траекториями шага
- stepsize_log_gaps(): log-зазор кривых η для двух r_eps в два момента времени, по сидам

Ожидаемые таблицы:
- сводка прогона: колонки ['algorithm','param','seed','szo_calls','final_objective']
- длинная таблица шагов: колонки ['r_eps','seed','t','eta']
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import pandas as pd


def median_by_param(summary_df: pd.DataFrame) -> pd.DataFrame:
    """
    Медиана final_objective по сидам.

    Возвращает DataFrame с колонками algorithm, param, median_objective, seeds.
    """
    if summary_df is None or len(summary_df) == 0:
        return pd.DataFrame(columns=["algorithm", "param", "median_objective", "seeds"])
    df = summary_df.copy()
    df["final_objective"] = pd.to_numeric(df["final_objective"], errors="coerce")
    grouped = df.groupby(["algorithm", "param"], sort=True, dropna=False)["final_objective"]
    result = grouped.agg(median_objective="median", seeds="count").reset_index()
    return result


def relative_spread(values: pd.Series | Sequence[float]) -> float:
    """
    (max − min)/min. Пустой ряд → 0.0; min ≤ 0 при max > min → inf.
    """
    v = pd.Series(values).dropna().astype(float)
    if len(v) == 0:
        return 0.0
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        return 0.0
    if lo <= 0:
        return math.inf
    return (hi - lo) / lo


def log_gap(eta_a: float, eta_b: float) -> float:
    """|log η_a − log η_b|; нулевой шаг даёт inf."""
    if eta_a <= 0 or eta_b <= 0:
        return math.inf if eta_a != eta_b else 0.0
    return abs(math.log(eta_a) - math.log(eta_b))


def _eta_at(df: pd.DataFrame, r_eps: float, seed: int, t: int) -> float:
    rows = df[(df["r_eps"] == r_eps) & (df["seed"] == seed)]
    if len(rows) == 0:
        raise KeyError(f"Нет шагов для r_eps={r_eps}, seed={seed}")
    # ближайшая записанная строка не позже t
    rows = rows[rows["t"] <= t]
    if len(rows) == 0:
        raise KeyError(f"Нет шагов с t ≤ {t} для r_eps={r_eps}, seed={seed}")
    return float(rows.sort_values("t")["eta"].iloc[-1])


def stepsize_log_gaps(
    stepsize_df: pd.DataFrame,
    r_eps_pair: tuple[float, float],
    t_early: int,
    t_late: int,
) -> pd.DataFrame:
    """
    log-зазор между кривыми η для двух r_eps в моменты t_early и t_late по каждому сиду.

    Возвращает DataFrame с колонками seed, gap_early, gap_late.
    """
    first, second = r_eps_pair
    rows = []
    for seed in sorted(pd.unique(stepsize_df["seed"])):
        rows.append(
            {
                "seed": int(seed),
                "gap_early": log_gap(_eta_at(stepsize_df, first, seed, t_early), _eta_at(stepsize_df, second, seed, t_early)),
                "gap_late": log_gap(_eta_at(stepsize_df, first, seed, t_late), _eta_at(stepsize_df, second, seed, t_late)),
            }
        )
    return pd.DataFrame(rows, columns=["seed", "gap_early", "gap_late"])


def median_spread(summary_df: pd.DataFrame, algorithm: str) -> float:
    """relative_spread медиан по сетке параметров одного алгоритма."""
    medians = median_by_param(summary_df)
    values = medians.loc[medians["algorithm"] == algorithm, "median_objective"]
    return relative_spread(np.asarray(values, dtype=float))


__all__ = [
    "log_gap",
    "median_by_param",
    "median_spread",
    "relative_spread",
    "stepsize_log_gaps",
]
