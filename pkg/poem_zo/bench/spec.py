"""
Описание эксперимента: источник задачи, алгоритм, сиды, сетка параметров, вывод.
"""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from poem_zo.config.constants import DEFAULT_DELTA, DEFAULT_R_EPS, DEFAULT_RADIUS, DEFAULT_STRIDE
from poem_zo.optimizers import AlgorithmName, AveragingMode, RunConfig


class ExperimentSpec(BaseModel):
    """
    Спецификация эксперимента.

    Источник задачи - ровно один из dataset / synthetic / hard.
    grid - значения r_eps для POEM или множителя вместо 1/L для базовых методов;
    без grid используется r_eps (POEM) или множитель по умолчанию (базовые).
    """

    model_config = ConfigDict(extra="forbid")

    # Задача
    dataset: Optional[str] = None
    radius: float = Field(default=DEFAULT_RADIUS, gt=0)
    synthetic: Optional[int] = Field(default=None, ge=1)
    noise_level: float = Field(default=0.1, ge=0)
    unbounded: bool = False
    problem_seed: int = Field(default=0, ge=0)
    hard: Optional[Literal["f1", "f2"]] = None
    hard_dim: int = Field(default=1, ge=1)
    hard_lipschitz: float = Field(default=1.0, gt=0)

    # Алгоритм
    algorithm: AlgorithmName = "poem"
    T: int = Field(ge=1)
    seeds: List[int] = Field(min_length=1)
    grid: Optional[List[float]] = None
    r_eps: float = Field(default=DEFAULT_R_EPS, gt=0)
    lbar: Optional[float] = Field(default=None, gt=0)
    delta: float = Field(default=DEFAULT_DELTA, gt=0, lt=1)
    s0: Optional[float] = Field(default=None, gt=0)
    multiplier: Optional[float] = Field(default=None, gt=0)
    tpge_mu_rule: Literal["first", "second"] = "first"
    averaging: AveragingMode = "uniform"

    # Вывод
    stride: int = Field(default=DEFAULT_STRIDE, ge=1)
    out: str = "results"

    @field_validator("seeds")
    @classmethod
    def _check_seeds(cls, seeds: List[int]) -> List[int]:
        if any(seed < 0 for seed in seeds):
            raise ValueError("Сиды должны быть неотрицательными")
        if len(set(seeds)) != len(seeds):
            raise ValueError("Сиды не должны повторяться")
        return seeds

    @field_validator("grid")
    @classmethod
    def _check_grid(cls, grid: Optional[List[float]]) -> Optional[List[float]]:
        if grid is None:
            return grid
        if len(grid) == 0:
            raise ValueError("Сетка параметров не может быть пустой")
        if any(not value > 0 for value in grid):
            raise ValueError("Значения сетки должны быть положительными")
        return grid

    @model_validator(mode="after")
    def _check_problem_source(self) -> "ExperimentSpec":
        sources = [self.dataset is not None, self.synthetic is not None, self.hard is not None]
        if sum(sources) != 1:
            raise ValueError("Нужно указать ровно один источник задачи: dataset, synthetic или hard")
        if self.algorithm == "rsnso" and self.s0 is None:
            raise ValueError("rsnso требует s0")
        return self

    @property
    def problem_kind(self) -> str:
        if self.dataset is not None:
            return "dataset"
        if self.synthetic is not None:
            return "synthetic"
        return "hard"

    @property
    def is_poem(self) -> bool:
        return self.algorithm in ("poem", "poem-unbounded")

    def parameter_values(self) -> List[Optional[float]]:
        if self.grid is not None:
            return list(self.grid)
        return [self.r_eps] if self.is_poem else [self.multiplier]

    def run_config(self, seed: int, value: Optional[float], lbar: Optional[float] = None) -> RunConfig:
        """RunConfig для одного (сид, значение сетки)."""
        r_eps = value if self.is_poem and value is not None else self.r_eps
        multiplier = None if self.is_poem else value
        return RunConfig(
            algorithm=self.algorithm,
            T=self.T,
            r_eps=r_eps,
            seed=seed,
            lbar=self.lbar if self.lbar is not None else lbar,
            delta=self.delta,
            s0=self.s0,
            multiplier=multiplier,
            tpge_mu_rule=self.tpge_mu_rule,
            averaging=self.averaging,
            stride=self.stride,
        )


__all__ = ["ExperimentSpec"]
