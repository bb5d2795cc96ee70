# Package init for poem_zo/optimizers
from .baselines import (
    ConstantSchedule,
    FixedScheduleRule,
    Schedule,
    TpgeSchedule,
    projected_sgd_fixed,
    rsnso_schedule,
    tpbco_schedule,
    tpge_schedule,
)
from .dispatch import run_algorithm
from .poem import (
    PoemRule,
    StepRule,
    UnboundedRule,
    check_start,
    clamp_r_eps,
    confidence_theta,
    gprime,
    iterate,
    log_plus,
    poem_run,
    poem_step,
    poem_unbounded_run,
    select_tau,
)
from .state import AlgorithmName, AveragingMode, PoemState, RunConfig, RunResult, Trace, TraceRecord
from .summation import KahanAccumulator

__all__ = [
    "AlgorithmName",
    "AveragingMode",
    "ConstantSchedule",
    "FixedScheduleRule",
    "KahanAccumulator",
    "PoemRule",
    "PoemState",
    "RunConfig",
    "RunResult",
    "Schedule",
    "StepRule",
    "TpgeSchedule",
    "Trace",
    "TraceRecord",
    "UnboundedRule",
    "check_start",
    "clamp_r_eps",
    "confidence_theta",
    "gprime",
    "iterate",
    "log_plus",
    "poem_run",
    "poem_step",
    "poem_unbounded_run",
    "projected_sgd_fixed",
    "rsnso_schedule",
    "run_algorithm",
    "select_tau",
    "tpbco_schedule",
    "tpge_schedule",
]
