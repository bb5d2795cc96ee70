# Package init for poem_zo/bench
from .cli import cmd_download_hint, cmd_run, cmd_stepsize_trace, cmd_sweep, main
from .io import write_csv, write_manifest
from .runner import ExperimentResult, ExperimentRunner, Job, JobFailure, JobResult, build_problem, run_job
from .spec import ExperimentSpec
from .summary import log_gap, median_by_param, median_spread, relative_spread, stepsize_log_gaps

__all__ = [
    "ExperimentResult",
    "ExperimentRunner",
    "ExperimentSpec",
    "Job",
    "JobFailure",
    "JobResult",
    "build_problem",
    "cmd_download_hint",
    "cmd_run",
    "cmd_stepsize_trace",
    "cmd_sweep",
    "log_gap",
    "main",
    "median_by_param",
    "median_spread",
    "relative_spread",
    "run_job",
    "stepsize_log_gaps",
    "write_csv",
    "write_manifest",
]
