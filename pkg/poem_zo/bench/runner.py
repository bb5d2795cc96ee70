"""
Запуск серии прогонов (сетка параметров × сиды) для стенда экспериментов.

Компоненты:
- build_problem(): задача из ExperimentSpec (LIBSVM датасет, синтетика, трудный пример)
- run_job(): один прогон; пишет собственный CSV трассы (без общего состояния)
- ExperimentRunner: пул процессов по заданиям, сбор результатов и сводок

Особенности:
- x_0 = 0 для всех задач; поток случайных чисел прогона - RngStream(seed),
  поэтому результат (spec, seed, значение сетки) не зависит от состава сетки.
- Сводная таблица собирается после завершения всех заданий и упорядочена
  по (algorithm, param, seed).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional

import numpy as np
import pandas as pd

from poem_zo import __version__
from poem_zo.config import Settings, get_settings
from poem_zo.config.constants import STEPSIZE_COLUMNS, SWEEP_COLUMNS, TRACE_SCHEMA_HEADER
from poem_zo.logging_setup import get_logger
from poem_zo.optimizers import run_algorithm
from poem_zo.problems import (
    StochasticProblem,
    load_libsvm,
    make_hard_instance,
    make_hinge_svm,
    make_synthetic_known_optimum,
)
from poem_zo.sampling import RngStream

from .io import trace_filename, write_csv, write_manifest
from .spec import ExperimentSpec

logger = get_logger("bench")

_WORKER_PROBLEM: Optional[StochasticProblem] = None


class Job(NamedTuple):
    algorithm: str
    param: Optional[float]
    seed: int


@dataclass
class JobResult:
    """Итог одного прогона."""
    algorithm: str
    param: Optional[float]
    seed: int
    szo_calls: int
    final_objective: float
    trace_path: Optional[str] = None
    stepsizes: Optional[pd.DataFrame] = None
    r_eps_used: Optional[float] = None


@dataclass
class JobFailure:
    algorithm: str
    param: Optional[float]
    seed: int
    error: str
    io_error: bool


@dataclass
class ExperimentResult:
    """Результаты серии: успешные прогоны и отказы."""
    results: List[JobResult] = field(default_factory=list)
    failures: List[JobFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def has_io_failure(self) -> bool:
        return any(failure.io_error for failure in self.failures)

    def summary_frame(self) -> pd.DataFrame:
        rows = [
            {
                "algorithm": r.algorithm,
                "param": np.nan if r.param is None else r.param,
                "seed": r.seed,
                "szo_calls": r.szo_calls,
                "final_objective": r.final_objective,
            }
            for r in self.results
        ]
        frame = pd.DataFrame(rows, columns=list(SWEEP_COLUMNS))
        return frame.sort_values(["algorithm", "param", "seed"], kind="mergesort").reset_index(drop=True)

    def stepsize_frame(self) -> pd.DataFrame:
        parts = [r.stepsizes for r in self.results if r.stepsizes is not None]
        if not parts:
            return pd.DataFrame(columns=list(STEPSIZE_COLUMNS))
        frame = pd.concat(parts, ignore_index=True)
        return frame.sort_values(["r_eps", "seed", "t"], kind="mergesort").reset_index(drop=True)[
            list(STEPSIZE_COLUMNS)
        ]


# -----------------------
# Задача и одно задание
# -----------------------

def resolve_dataset_path(dataset: str, settings: Optional[Settings] = None) -> Path:
    """Путь как есть, иначе - относительно каталога датасетов из настроек."""
    path = Path(dataset)
    if path.exists():
        return path
    settings = settings or get_settings()
    candidate = Path(settings.bench_datasets_dir) / dataset
    return candidate if candidate.exists() else path


def build_problem(spec: ExperimentSpec, settings: Optional[Settings] = None) -> StochasticProblem:
    """
    Задача по описанию эксперимента.

    Исключения:
    - OSError / LibsvmParseError / EmptyDatasetError: датасет не читается
    """
    if spec.problem_kind == "dataset":
        dataset = load_libsvm(resolve_dataset_path(spec.dataset, settings))
        return make_hinge_svm(dataset, spec.radius)
    if spec.problem_kind == "synthetic":
        return make_synthetic_known_optimum(
            spec.synthetic,
            spec.noise_level,
            spec.problem_seed,
            radius=spec.radius,
            bounded=not spec.unbounded,
        )
    return make_hard_instance(spec.hard, spec.hard_lipschitz, spec.T, spec.hard_dim)


def run_job(
    problem: StochasticProblem,
    spec: ExperimentSpec,
    job: Job,
    out_dir: Optional[str],
    float_format: str,
    keep_stepsizes: bool = False,
) -> JobResult:
    """Один прогон: трасса в CSV (если задан out_dir), итоговое значение цели."""
    config = spec.run_config(job.seed, job.param, lbar=problem.lipschitz_bound)
    x0 = np.zeros(problem.dimension)
    result = run_algorithm(problem, x0, config, RngStream(job.seed))
    frame = result.trace.to_frame()

    trace_path = None
    if out_dir is not None:
        trace_path = str(write_csv(frame, Path(out_dir) / trace_filename(job.algorithm, job.param, job.seed), float_format))

    final_objective = problem.objective(result.output) if problem.has_objective else math.nan
    stepsizes = None
    if keep_stepsizes:
        thinned = frame.loc[frame["t"] % spec.stride == 0, ["t", "eta"]]
        stepsizes = thinned.assign(r_eps=config.r_eps, seed=job.seed)[list(STEPSIZE_COLUMNS)]
    return JobResult(
        algorithm=job.algorithm,
        param=job.param,
        seed=job.seed,
        szo_calls=result.state.szo_count,
        final_objective=final_objective,
        trace_path=trace_path,
        stepsizes=stepsizes,
        r_eps_used=result.state.r_eps if spec.is_poem else None,
    )


def _init_worker(problem: StochasticProblem) -> None:
    global _WORKER_PROBLEM
    _WORKER_PROBLEM = problem


def _run_in_worker(spec, job, out_dir, float_format, keep_stepsizes) -> JobResult:
    return run_job(_WORKER_PROBLEM, spec, job, out_dir, float_format, keep_stepsizes)


class ExperimentRunner:
    """
    Запуск серии прогонов.

    Основной метод:
    - ExperimentRunner.run()
    """

    def __init__(self, spec: ExperimentSpec, settings: Optional[Settings] = None, max_workers: Optional[int] = None) -> None:
        self.spec = spec
        self.settings = settings or get_settings()
        self.max_workers = max_workers or self.settings.bench_max_workers
        self.problem: Optional[StochasticProblem] = None

    # -----------------------
    # Вспомогательные методы
    # -----------------------

    def jobs(self) -> List[Job]:
        return [
            Job(self.spec.algorithm, value, seed)
            for value in self.spec.parameter_values()
            for seed in self.spec.seeds
        ]

    def load_problem(self) -> StochasticProblem:
        if self.problem is None:
            self.problem = build_problem(self.spec, self.settings)
            logger.info("Задача: %r", self.problem)
        return self.problem

    def _collect(self, jobs: Iterable[Job], outcomes: Iterable) -> ExperimentResult:
        result = ExperimentResult()
        for job, outcome in zip(jobs, outcomes):
            if isinstance(outcome, BaseException):
                failure = JobFailure(
                    job.algorithm, job.param, job.seed, f"{type(outcome).__name__}: {outcome}",
                    io_error=isinstance(outcome, OSError),
                )
                logger.error(
                    "Прогон не завершён: algorithm=%s param=%s seed=%d: %s",
                    job.algorithm, job.param, job.seed, failure.error,
                )
                result.failures.append(failure)
                continue
            logger.info(
                "Прогон завершён: algorithm=%s param=%s seed=%d szo=%d f=%.6g",
                outcome.algorithm, outcome.param, outcome.seed, outcome.szo_calls, outcome.final_objective,
            )
            result.results.append(outcome)
        return result

    def manifest(self, command: str, result: ExperimentResult) -> dict:
        return {
            "library": "poem_zo",
            "version": __version__,
            "command": command,
            "spec": self.spec.model_dump(mode="json"),
            "seeds": list(self.spec.seeds),
            "reporting": "median over seeds",
            "schema": TRACE_SCHEMA_HEADER,
            "runs": sorted(Path(r.trace_path).name for r in result.results if r.trace_path),
            "r_eps_clamped": [
                {"param": r.param, "seed": r.seed, "r_eps": r.r_eps_used}
                for r in result.results
                if r.r_eps_used is not None and r.param is not None and r.r_eps_used != r.param
            ],
            "failures": [
                {"algorithm": f.algorithm, "param": f.param, "seed": f.seed, "error": f.error}
                for f in result.failures
            ],
        }

    # -------------
    # Основной запуск
    # -------------

    def run(self, write_traces: bool = True, keep_stepsizes: bool = False) -> ExperimentResult:
        """
        Выполняет все задания сетки × сидов.

        1) Загрузка задачи (ошибки ввода-вывода пробрасываются)
        2) Прогоны в пуле процессов (или последовательно при одном процессе)
        3) Сбор результатов; отказы отдельных прогонов не прерывают серию
        """
        problem = self.load_problem()
        jobs = self.jobs()
        out_dir = self.spec.out if write_traces else None
        args = (out_dir, self.settings.float_format, keep_stepsizes)

        outcomes: List = []
        if self.max_workers == 1 or len(jobs) == 1:
            for job in jobs:
                try:
                    outcomes.append(run_job(problem, self.spec, job, *args))
                except Exception as exc:
                    outcomes.append(exc)
        else:
            with ProcessPoolExecutor(
                max_workers=self.max_workers, initializer=_init_worker, initargs=(problem,)
            ) as pool:
                futures = [pool.submit(_run_in_worker, self.spec, job, *args) for job in jobs]
                for future in futures:
                    try:
                        outcomes.append(future.result())
                    except Exception as exc:
                        outcomes.append(exc)
        return self._collect(jobs, outcomes)


__all__ = [
    "ExperimentResult",
    "ExperimentRunner",
    "Job",
    "JobFailure",
    "JobResult",
    "build_problem",
    "resolve_dataset_path",
    "run_job",
]
