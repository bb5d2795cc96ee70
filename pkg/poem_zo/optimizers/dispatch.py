"""
Запуск алгоритма по RunConfig: единая точка входа для стенда экспериментов.
"""

from __future__ import annotations

import math
from typing import Optional

from poem_zo.logging_setup import get_logger
from poem_zo.problems import StochasticProblem
from poem_zo.sampling import RngStream
from poem_zo.vectorspace import diameter

from .baselines import projected_sgd_fixed, rsnso_schedule, tpbco_schedule, tpge_schedule
from .poem import poem_run, poem_unbounded_run
from .state import RunConfig, RunResult

logger = get_logger("optimizers")


def _domain_diameter(problem: StochasticProblem, config: RunConfig) -> float:
    D = config.diameter if config.diameter is not None else diameter(problem.domain)
    if not math.isfinite(D):
        raise ValueError(f"{config.algorithm} требует ограниченную область или явный diameter")
    return D


def run_algorithm(
    problem: StochasticProblem,
    x0,
    config: RunConfig,
    rng: Optional[RngStream] = None,
) -> RunResult:
    """
    Прогон config.algorithm на задаче problem из точки x0.

    rng по умолчанию - RngStream(config.seed).
    """
    rng = rng or RngStream(config.seed)
    d = problem.dimension
    L = config.lipschitz if config.lipschitz is not None else problem.lipschitz_bound
    common = dict(stride=config.stride, record_history=config.record_history)

    if config.algorithm == "poem":
        return poem_run(problem, x0, config.r_eps, config.T, rng, **common)
    if config.algorithm == "poem-unbounded":
        return poem_unbounded_run(
            problem, x0, config.r_eps, config.T, config.delta, config.lbar, rng, **common
        )

    if config.algorithm == "tpbco":
        schedule = tpbco_schedule(_domain_diameter(problem, config), L, config.T, d, config.multiplier)
    elif config.algorithm == "tpge":
        schedule = tpge_schedule(
            _domain_diameter(problem, config), L, d, config.multiplier, config.tpge_mu_rule
        )
    else:
        schedule = rsnso_schedule(config.s0, L, config.T, d, config.multiplier)

    return projected_sgd_fixed(
        problem,
        x0,
        schedule,
        config.T,
        rng,
        averaging=config.averaging,
        r_eps=config.r_eps,
        algorithm=config.algorithm,
        **common,
    )


__all__ = ["run_algorithm"]
