"""
Базовые методы с фиксированными расписаниями (η_t, μ_t) на общем каркасе
проекционного SGD с двухточечной оценкой.

Расписания (m - множитель вместо 1/L; по умолчанию m = 1/L):
- TPBCO: η = D·m/√(dT),               μ = D·√(d/T)
- TPGE:  η_s = D·m/√(d·log(2d)·s),    μ_s = D/s  (или D/(d²s²)), s = t + 1
- RSNSO: η = s₀·m/(d√T),              μ = s₀·√(d/T)

TPGE здесь работает на той же сферической оценке, что и остальные методы;
двухпоследовательная конструкция исходного метода не воспроизводится.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Protocol, Tuple

from poem_zo.config.constants import DEFAULT_R_EPS
from poem_zo.problems import StochasticProblem
from poem_zo.sampling import RngStream

from .poem import check_start, iterate
from .state import AveragingMode, PoemState, RunResult


class Schedule(Protocol):
    """Расписание t ↦ η_t, t ↦ μ_t (t отсчитывается от 0)."""

    def eta(self, t: int) -> float:
        ...

    def mu(self, t: int) -> float:
        ...


def _multiplier(L: float, multiplier: Optional[float]) -> float:
    if multiplier is not None:
        if not multiplier > 0:
            raise ValueError(f"Множитель должен быть положительным, получено {multiplier}")
        return float(multiplier)
    if not L > 0:
        raise ValueError(f"L должно быть положительным, получено {L}")
    return 1.0 / L


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ValueError(f"{name} должно быть положительным, получено {value}")


@dataclass(frozen=True)
class ConstantSchedule:
    eta_value: float
    mu_value: float

    def __post_init__(self) -> None:
        if self.eta_value < 0:
            raise ValueError(f"η должно быть ≥ 0, получено {self.eta_value}")
        if not self.mu_value > 0:
            raise ValueError(f"μ должно быть положительным, получено {self.mu_value}")

    def eta(self, t: int) -> float:
        return self.eta_value

    def mu(self, t: int) -> float:
        return self.mu_value


@dataclass(frozen=True)
class TpgeSchedule:
    """
    Убывающее расписание TPGE с индексом s = t + 1.

    mu_rule="first": μ_s = D/s; "second": μ_s = D/(d²s²).
    """
    D: float
    d: int
    multiplier: float
    mu_rule: Literal["first", "second"] = "first"

    def __post_init__(self) -> None:
        _check_positive(D=self.D, d=self.d, multiplier=self.multiplier)
        if self.mu_rule not in ("first", "second"):
            raise ValueError(f"Неизвестное правило μ: {self.mu_rule!r}")

    def eta(self, t: int) -> float:
        s = t + 1
        return self.D * self.multiplier / math.sqrt(self.d * math.log(2 * self.d) * s)

    def mu(self, t: int) -> float:
        s = t + 1
        if self.mu_rule == "first":
            return self.D / s
        return self.D / (self.d * self.d * s * s)


def tpbco_schedule(
    D: float, L: float, T: int, d: int, multiplier: Optional[float] = None
) -> ConstantSchedule:
    _check_positive(D=D, T=T, d=d)
    m = _multiplier(L, multiplier)
    return ConstantSchedule(eta_value=D * m / math.sqrt(d * T), mu_value=D * math.sqrt(d / T))


def tpge_schedule(
    D: float,
    L: float,
    d: int,
    multiplier: Optional[float] = None,
    mu_rule: Literal["first", "second"] = "first",
) -> TpgeSchedule:
    return TpgeSchedule(D=float(D), d=int(d), multiplier=_multiplier(L, multiplier), mu_rule=mu_rule)


def rsnso_schedule(
    s0: float, L: float, T: int, d: int, multiplier: Optional[float] = None
) -> ConstantSchedule:
    _check_positive(s0=s0, T=T, d=d)
    m = _multiplier(L, multiplier)
    return ConstantSchedule(eta_value=s0 * m / (d * math.sqrt(T)), mu_value=s0 * math.sqrt(d / T))


class FixedScheduleRule:
    """Адаптер расписания к правилу шага общего цикла."""

    def __init__(self, schedule: Schedule) -> None:
        self.schedule = schedule

    def smoothing(self, state: PoemState, d: int) -> float:
        return self.schedule.mu(state.t)

    def step_size(self, state: PoemState, G_prev: float, d: int) -> Tuple[float, Optional[float]]:
        return self.schedule.eta(state.t), None


def projected_sgd_fixed(
    problem: StochasticProblem,
    x0,
    schedule: Schedule,
    T: int,
    rng: RngStream,
    averaging: AveragingMode = "uniform",
    r_eps: float = DEFAULT_R_EPS,
    stride: int = 1,
    record_history: bool = False,
    algorithm: str = "fixed",
) -> RunResult:
    """
    x_{t+1} = Π_X(x_t − η_t g_t), g_t - двухточечная оценка при μ_t.

    Выход по averaging:
    - uniform: (1/T)·Σ_{t<T} x_t
    - last: x_T
    - poem_weighted: r̄-взвешенное среднее с выбором τ (r̄ стартует с r_eps)
    """
    if averaging not in ("uniform", "last", "poem_weighted"):
        raise ValueError(f"Неизвестный режим усреднения: {averaging!r}")
    x0 = check_start(problem, x0, T)
    state = PoemState.initial(x0, r_eps)
    trace = iterate(
        problem,
        state,
        T,
        rng,
        FixedScheduleRule(schedule),
        algorithm,
        stride,
        record_history,
        track_uniform=averaging == "uniform",
    )
    if averaging == "uniform":
        output = state.uniform_average()
    elif averaging == "last":
        output = state.x
    else:
        output = state.tau_point
    return RunResult(output, state, trace)


__all__ = [
    "ConstantSchedule",
    "FixedScheduleRule",
    "Schedule",
    "TpgeSchedule",
    "projected_sgd_fixed",
    "rsnso_schedule",
    "tpbco_schedule",
    "tpge_schedule",
]
