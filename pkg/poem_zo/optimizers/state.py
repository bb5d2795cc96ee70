"""
Состояние прогона, записи трассы и параметры запуска оптимизаторов.

Компоненты:
- PoemState: изменяемое состояние итерации (x_t, r̄_t, G_t, взвешенные суммы, τ)
- TraceRecord: одна строка трассы
- Trace: записи трассы + опциональная полная история (x_k, g_k, r̄_k)
- RunConfig: валидируемые параметры запуска (pydantic)
- RunResult: (output, state, trace)

Соглашения по индексам:
- на шаге t в начале обновляется r̄_t и в сумму x̄ добавляется пара (r̄_t, x_t),
  т.е. после шага t накоплено Σ_{k≤t}; кандидат τ = t оценивается ДО добавления
- после T шагов finish() считает r̄_T и кандидата τ = T
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Literal, NamedTuple, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from poem_zo.config.constants import ALGORITHMS, DEFAULT_DELTA, DEFAULT_R_EPS, TRACE_COLUMNS
from poem_zo.vectorspace import Vector, as_vector

from .summation import KahanAccumulator

AlgorithmName = Literal["poem", "poem-unbounded", "tpbco", "tpge", "rsnso"]
AveragingMode = Literal["uniform", "last", "poem_weighted"]


@dataclass
class PoemState:
    """
    Состояние POEM (и общего каркаса проекционного SGD).

    - t: номер следующего шага
    - x / x0: текущая и начальная точки
    - rbar: r̄ последнего начатого шага (до первого шага равно r_eps)
    - tau_best / tau_score: текущий argmax Σ_{k<t} r̄_k / r̄_t (наименьший t при равенстве)
    - tau_point: x̄_{tau_best}, снимок взвешенного среднего
    - szo_count: число вызовов оракула
    """
    x0: Vector
    x: Vector
    r_eps: float
    t: int = 0
    rbar: float = 0.0
    szo_count: int = 0
    tau_best: int = 0
    tau_score: float = -math.inf
    tau_point: Optional[Vector] = None
    eta: float = 0.0
    mu: float = 0.0
    g_prime: Optional[float] = None
    last_g: Optional[Vector] = None
    finished: bool = False
    _G: KahanAccumulator = field(init=False, repr=False)
    _weighted_sum: KahanAccumulator = field(init=False, repr=False)
    _weight_total: KahanAccumulator = field(init=False, repr=False)
    _uniform_sum: KahanAccumulator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.r_eps > 0:
            raise ValueError(f"r_eps должен быть положительным, получено {self.r_eps}")
        d = self.x0.shape[0]
        self.rbar = max(self.rbar, float(self.r_eps))
        self._G = KahanAccumulator()
        self._weighted_sum = KahanAccumulator(d)
        self._weight_total = KahanAccumulator()
        self._uniform_sum = KahanAccumulator(d)

    @classmethod
    def initial(cls, x0, r_eps: float) -> "PoemState":
        x0 = as_vector(x0)
        return cls(x0=x0, x=x0.copy(), r_eps=float(r_eps))

    # ----------------
    # Накопители
    # ----------------

    @property
    def dimension(self) -> int:
        return self.x0.shape[0]

    @property
    def G(self) -> float:
        return self._G.value

    @property
    def weighted_sum(self) -> Vector:
        return self._weighted_sum.value

    @property
    def weight_total(self) -> float:
        return self._weight_total.value

    def weighted_average(self) -> Vector:
        """x̄ по всем накопленным парам (r̄_k, x_k)."""
        return self._weighted_sum.value / self._weight_total.value

    def uniform_average(self) -> Vector:
        return self._uniform_sum.value / self._uniform_sum.count

    def add_gradient(self, g: Vector) -> None:
        self._G.add(float(g @ g))

    # ----------------
    # Начало/конец шага
    # ----------------

    def _update_rbar(self) -> float:
        r = float(np.linalg.norm(self.x - self.x0))
        self.rbar = max(self.rbar, r)
        return r

    def _offer_tau(self, t: int) -> None:
        score = self._weight_total.value / self.rbar
        if score > self.tau_score:
            self.tau_score = score
            self.tau_best = t
            self.tau_point = self.weighted_average()

    def begin_step(self, track_uniform: bool = False) -> float:
        """
        Начало шага t: r̄_t = max(r̄_{t−1}, ‖x_t − x_0‖), кандидат τ = t (t ≥ 1),
        затем добавление (r̄_t, x_t) во взвешенную сумму.

        Возвращает r_t = ‖x_t − x_0‖.
        """
        r = self._update_rbar()
        if self.t >= 1:
            self._offer_tau(self.t)
        self._weighted_sum.add(self.rbar * self.x)
        self._weight_total.add(self.rbar)
        if track_uniform:
            self._uniform_sum.add(self.x)
        return r

    def finish(self) -> Vector:
        """После T шагов: r̄_T, кандидат τ = T; возвращает x̄_τ."""
        if self.t < 1:
            raise ValueError("Нельзя завершить прогон без единого шага")
        if not self.finished:
            self._update_rbar()
            self._offer_tau(self.t)
            self.finished = True
        return self.tau_point


@dataclass
class TraceRecord:
    """Одна строка трассы (значения f заполняются только на прореженных шагах)."""
    t: int
    szo_calls: int
    eta: float
    mu: float
    rbar: float
    G: float
    r: float
    f_xbar: Optional[float] = None
    f_xt: Optional[float] = None
    Gprime: Optional[float] = None


@dataclass
class Trace:
    """
    Трасса прогона.

    При record_history=True дополнительно хранятся x_0 … x_T, g_0 … g_{T−1}
    и r̄_0 … r̄_{T−1} (память ∝ T·d, только для диагностики).
    """
    algorithm: str
    dimension: int
    records: List[TraceRecord] = field(default_factory=list)
    x0: Optional[Vector] = None
    xs: Optional[List[Vector]] = None
    gs: Optional[List[Vector]] = None
    rbars: Optional[List[float]] = None
    final_rbar: Optional[float] = None
    tau: Optional[int] = None

    @property
    def has_history(self) -> bool:
        return self.xs is not None

    @property
    def has_gprime(self) -> bool:
        return any(record.Gprime is not None for record in self.records)

    def __len__(self) -> int:
        return len(self.records)

    def to_frame(self) -> pd.DataFrame:
        columns = list(TRACE_COLUMNS) + (["Gprime"] if self.has_gprime else [])
        rows = [{name: getattr(record, name) for name in columns} for record in self.records]
        frame = pd.DataFrame(rows, columns=columns)
        for name in ("f_xbar", "f_xt") + (("Gprime",) if self.has_gprime else ()):
            frame[name] = pd.to_numeric(frame[name], errors="coerce")
        return frame

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(record, name) for record in self.records], dtype=np.float64)

    def rbar_history(self) -> np.ndarray:
        """r̄_0 … r̄_T (требует трассу без прореживания или историю)."""
        if self.final_rbar is None:
            raise ValueError("Прогон не завершён: r̄_T неизвестен")
        if self.rbars is not None:
            values = list(self.rbars)
        else:
            values = [record.rbar for record in self.records]
        return np.array(values + [self.final_rbar], dtype=np.float64)

    def history_points(self) -> np.ndarray:
        self._require_history()
        return np.vstack(self.xs)

    def history_gradients(self) -> np.ndarray:
        self._require_history()
        return np.vstack(self.gs)

    def g_norms(self) -> np.ndarray:
        self._require_history()
        return np.linalg.norm(self.history_gradients(), axis=1)

    def reconstruct_output(self, tau: Optional[int] = None) -> Vector:
        """
        Повторно вычисляет x̄_τ = Σ_{k<τ} r̄_k x_k / Σ_{k<τ} r̄_k по истории
        тем же компенсированным суммированием, что и прогон.
        """
        self._require_history()
        tau = self.tau if tau is None else tau
        if tau is None or not 1 <= tau <= len(self.rbars):
            raise ValueError(f"Некорректный τ: {tau}")
        weighted = KahanAccumulator(self.dimension)
        total = KahanAccumulator()
        for rbar, x in zip(self.rbars[:tau], self.xs[:tau]):
            weighted.add(rbar * x)
            total.add(rbar)
        return weighted.value / total.value

    def _require_history(self) -> None:
        if not self.has_history:
            raise ValueError("Трасса записана без полной истории (record_history=False)")


class RunResult(NamedTuple):
    output: Vector
    state: PoemState
    trace: Trace


class RunConfig(BaseModel):
    """
    Параметры одного прогона.

    - poem: r_eps (≤ D_X при ограниченной области проверяется при запуске)
    - poem-unbounded: r_eps, lbar ≥ L, delta ∈ (0, 1)
    - tpbco / tpge: diameter и lipschitz (по умолчанию из задачи), multiplier вместо 1/L
    - rsnso: s0, lipschitz, multiplier
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    algorithm: AlgorithmName = "poem"
    T: int = Field(ge=1)
    r_eps: float = Field(default=DEFAULT_R_EPS, gt=0)
    seed: int = Field(default=0, ge=0)
    lbar: Optional[float] = Field(default=None, gt=0)
    delta: float = Field(default=DEFAULT_DELTA, gt=0, lt=1)
    diameter: Optional[float] = Field(default=None, gt=0)
    lipschitz: Optional[float] = Field(default=None, gt=0)
    s0: Optional[float] = Field(default=None, gt=0)
    multiplier: Optional[float] = Field(default=None, gt=0)
    tpge_mu_rule: Literal["first", "second"] = "first"
    averaging: AveragingMode = "uniform"
    stride: int = Field(default=1, ge=1)
    record_history: bool = False

    @model_validator(mode="after")
    def _check_algorithm_parameters(self) -> "RunConfig":
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"Неизвестный алгоритм {self.algorithm!r}")
        if self.algorithm == "poem-unbounded" and self.lbar is None:
            raise ValueError("poem-unbounded требует lbar (оценку L сверху)")
        if self.algorithm == "rsnso" and self.s0 is None:
            raise ValueError("rsnso требует s0 (оценку ‖x_0 − x_⋆‖)")
        return self


__all__ = [
    "AlgorithmName",
    "AveragingMode",
    "PoemState",
    "RunConfig",
    "RunResult",
    "Trace",
    "TraceRecord",
]
