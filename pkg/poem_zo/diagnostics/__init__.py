# Package init for poem_zo/diagnostics
from .checks import (
    check_dog_tau,
    check_estimate_norm,
    check_gprime_dominates,
    check_mu_noise_bound,
    check_noise_event,
    check_regret_bound,
    proposition1_bound,
    proposition3_bound,
)
from .reports import (
    BoundReport,
    DiagnosticsError,
    binomial_upper,
    radius_exceedance_rate,
    violation_rate,
)
from .schema import TraceSchemaError, read_schema_version, read_trace_csv

__all__ = [
    "BoundReport",
    "DiagnosticsError",
    "TraceSchemaError",
    "binomial_upper",
    "check_dog_tau",
    "check_estimate_norm",
    "check_gprime_dominates",
    "check_mu_noise_bound",
    "check_noise_event",
    "check_regret_bound",
    "proposition1_bound",
    "proposition3_bound",
    "radius_exceedance_rate",
    "read_schema_version",
    "read_trace_csv",
    "violation_rate",
]
