"""
Проверки неравенств анализа на трассах оптимизаторов.

Детерминированные (выполняются на каждой траектории):
- check_dog_tau(): max_t Σ_{i<t} a_i/a_t ≥ (1/e)(T/log₊(a_T/a_0) − 1)
- check_regret_bound(): Σ_{k<t} r̄_k⟨g_k, x_k − x_⋆⟩ ≤ r̄_t(2s̄_t + r̄_t)√G_{t−1}
- check_mu_noise_bound(): Σ_{k<t} 2L r̄_k μ_k ≤ 4L r̄_{t−1}²√(dt)
- check_estimate_norm(): ‖g_t‖ ≤ L·d
- check_gprime_dominates(): G_t ≤ G′_t

Вероятностные (проверяются как частота нарушений по многим сидам):
- proposition1_bound(): зазор f(x̄_t) − f_⋆ для ограниченной области
- proposition3_bound(): то же для неограниченной области (через G′)
- check_noise_event(): |Σ_{k<t} r̄_k⟨Δ_k, x_k − x_⋆⟩| < b_t

Все проверки по t требуют трассу без прореживания (stride = 1).
"""

from __future__ import annotations

import math
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from poem_zo.logging_setup import get_logger
from poem_zo.optimizers import Trace, confidence_theta, log_plus
from poem_zo.vectorspace import Vector, as_vector

from .reports import BoundReport, DiagnosticsError

logger = get_logger("diagnostics")

TraceLike = Union[Trace, pd.DataFrame]

_MU_RTOL = 1e-12


def _frame(trace: TraceLike) -> pd.DataFrame:
    frame = trace.to_frame() if isinstance(trace, Trace) else trace
    steps = frame["t"].to_numpy()
    if steps.size == 0 or not np.array_equal(steps, np.arange(steps.size)):
        raise DiagnosticsError("Нужна трасса без прореживания: t = 0, 1, …, T−1")
    return frame


def _rbar_with_final(trace: Trace, frame: pd.DataFrame) -> np.ndarray:
    """r̄_0 … r̄_T."""
    if trace.final_rbar is None:
        raise DiagnosticsError("Трасса не содержит r̄_T (прогон не завершён)")
    return np.append(frame["rbar"].to_numpy(dtype=np.float64), trace.final_rbar)


def _require_history(trace: Trace) -> None:
    if not isinstance(trace, Trace) or not trace.has_history:
        raise DiagnosticsError("Нужна трасса с полной историей (record_history=True)")


def _s0(trace: Trace, x_star: Vector) -> float:
    if trace.x0 is None:
        raise DiagnosticsError("Трасса не содержит x_0")
    return float(np.linalg.norm(trace.x0 - x_star))


def _tau_denominators(rbar: np.ndarray) -> np.ndarray:
    """Σ_{k<t} r̄_k / r̄_t для t = 1 … T."""
    return np.cumsum(rbar[:-1]) / rbar[1:]


def _thetas(steps: Sequence[int], delta: float, factor: float) -> Tuple[np.ndarray, List[int]]:
    thetas, skipped = [], []
    for t in steps:
        try:
            thetas.append(confidence_theta(t, delta, factor))
        except ValueError:
            thetas.append(math.nan)
            skipped.append(int(t))
    if skipped:
        logger.warning("θ не определено для %d индексов t (первый: %d)", len(skipped), skipped[0])
    return np.array(thetas), skipped


def _without_skipped(name, steps, lhs, rhs, skipped, relation="le") -> BoundReport:
    keep = ~np.isin(steps, skipped)
    return BoundReport(name, steps[keep], lhs[keep], rhs[keep], relation=relation, skipped=skipped)


# ----------------
# Детерминированные
# ----------------

def check_dog_tau(sequence: Sequence[float]) -> BoundReport:
    """
    Нижняя оценка максимума Σ_{i<t} a_i / a_t по t ∈ {1, …, T} перебором.
    """
    a = np.asarray(sequence, dtype=np.float64)
    if a.ndim != 1 or a.size < 2:
        raise DiagnosticsError("Нужна последовательность длины T+1 ≥ 2")
    if np.any(a <= 0):
        raise DiagnosticsError("Последовательность должна быть положительной")
    if np.any(np.diff(a) < 0):
        raise DiagnosticsError("Последовательность должна быть неубывающей")
    T = a.size - 1
    best = float(np.max(_tau_denominators(a)))
    lower = (T / log_plus(a[-1] / a[0]) - 1.0) / math.e
    return BoundReport("dog_tau", [T], [best], [lower], relation="ge")


def check_regret_bound(trace: Trace, x_star, g_history=None) -> BoundReport:
    """
    Взвешенный регрет Σ_{k<t} r̄_k⟨g_k, x_k − x_⋆⟩ против r̄_t(2s̄_t + r̄_t)√G_{t−1}, t = 1 … T.

    Для трасс с G′ (неограниченная область) в правой части используется G′_{t−1}.
    """
    _require_history(trace)
    frame = _frame(trace)
    x_star = as_vector(x_star, trace.dimension)
    xs = trace.history_points()
    gs = trace.history_gradients() if g_history is None else np.asarray(g_history, dtype=np.float64)
    T = len(frame)
    if gs.shape != (T, trace.dimension):
        raise DiagnosticsError(f"История g должна иметь форму {(T, trace.dimension)}, получено {gs.shape}")

    rbar = _rbar_with_final(trace, frame)
    offsets = xs - x_star
    lhs = np.cumsum(rbar[:T] * np.einsum("ij,ij->i", gs, offsets[:T]))
    s_bar = np.maximum.accumulate(np.linalg.norm(offsets, axis=1))
    G_column = "Gprime" if "Gprime" in frame.columns else "G"
    G_prev = frame[G_column].to_numpy(dtype=np.float64)
    steps = np.arange(1, T + 1)
    rhs = rbar[1:] * (2.0 * s_bar[1:] + rbar[1:]) * np.sqrt(G_prev)
    return BoundReport("regret", steps, lhs, rhs)


def check_mu_noise_bound(trace: TraceLike, L: float, d: int) -> BoundReport:
    """Σ_{k<t} 2L r̄_k μ_k ≤ 4L r̄_{t−1}²√(dt), t = 1 … T; только для μ_t = r̄_t√(d/(t+1))."""
    if isinstance(trace, Trace) and trace.algorithm != "poem":
        raise DiagnosticsError(f"Проверка применима только к POEM, получено {trace.algorithm!r}")
    frame = _frame(trace)
    rbar = frame["rbar"].to_numpy(dtype=np.float64)
    mu = frame["mu"].to_numpy(dtype=np.float64)
    steps = np.arange(1, len(frame) + 1)
    expected_mu = rbar * np.sqrt(d / steps)
    if not np.allclose(mu, expected_mu, rtol=_MU_RTOL, atol=0.0):
        raise DiagnosticsError("μ в трассе не совпадает с r̄_t·√(d/(t+1))")
    lhs = np.cumsum(2.0 * L * rbar * mu)
    rhs = 4.0 * L * rbar ** 2 * np.sqrt(d * steps)
    return BoundReport("mu_noise", steps, lhs, rhs)


def check_estimate_norm(trace_g_norms: Sequence[float], L: float, d: int) -> BoundReport:
    """‖g_t‖ ≤ L·d для каждой оценки."""
    norms = np.asarray(trace_g_norms, dtype=np.float64)
    return BoundReport("estimate_norm", np.arange(norms.size), norms, np.full(norms.size, L * d))


def check_gprime_dominates(trace: TraceLike) -> BoundReport:
    """G_t ≤ G′_t на каждом шаге."""
    frame = trace.to_frame() if isinstance(trace, Trace) else trace
    if "Gprime" not in frame.columns or frame["Gprime"].isna().any():
        raise DiagnosticsError("Трасса не содержит G′ (не прогон для неограниченной области)")
    return BoundReport(
        "gprime_dominates",
        frame["t"].to_numpy(),
        frame["G"].to_numpy(dtype=np.float64),
        frame["Gprime"].to_numpy(dtype=np.float64),
    )


# ----------------
# Вероятностные
# ----------------

def _gaps(frame: pd.DataFrame, f_star) -> np.ndarray:
    if f_star is None:
        raise DiagnosticsError("Оценка зазора требует известного f_⋆")
    f_xbar = frame["f_xbar"].to_numpy(dtype=np.float64)
    if np.any(np.isnan(f_xbar)):
        raise DiagnosticsError("В трассе нет значений f(x̄_t) (задача без точного f)")
    return f_xbar - float(f_star)


def proposition1_bound(trace: Trace, x_star, delta: float, L: float, d: int, f_star: float) -> BoundReport:
    """
    f(x̄_t) − f_⋆ ≤ 16θ_{t,δ}(r̄_t + s₀)(√G_{t−1} + Ld + L√(dt)) / (Σ_{k<t} r̄_k/r̄_t),
    θ_{t,δ} = log(60 log(t/δ)); выполняется с вероятностью ≥ 1 − δ.
    """
    frame = _frame(trace)
    gaps = _gaps(frame, f_star)
    s0 = _s0(trace, as_vector(x_star, trace.dimension))
    rbar = _rbar_with_final(trace, frame)
    steps = np.arange(1, len(frame) + 1)
    thetas, skipped = _thetas(steps, delta, factor=1.0)
    G_prev = frame["G"].to_numpy(dtype=np.float64)
    rhs = (
        16.0 * thetas * (rbar[1:] + s0) * (np.sqrt(G_prev) + L * d + L * np.sqrt(d * steps))
        / _tau_denominators(rbar)
    )
    return _without_skipped("proposition1", steps, gaps, rhs, skipped)


def proposition3_bound(trace: Trace, x_star, delta: float, L: float, d: int, f_star: float) -> BoundReport:
    """
    f(x̄_t) − f_⋆ ≤ 20θ_{t,δ}(r̄_t + s₀)(√G′_{t−1} + Ld) / (Σ_{k<t} r̄_k/r̄_t)
    для варианта с неограниченной областью.
    """
    frame = _frame(trace)
    if "Gprime" not in frame.columns:
        raise DiagnosticsError("Трасса не содержит G′ (не прогон для неограниченной области)")
    gaps = _gaps(frame, f_star)
    s0 = _s0(trace, as_vector(x_star, trace.dimension))
    rbar = _rbar_with_final(trace, frame)
    steps = np.arange(1, len(frame) + 1)
    thetas, skipped = _thetas(steps, delta, factor=1.0)
    Gprime_prev = frame["Gprime"].to_numpy(dtype=np.float64)
    rhs = 20.0 * thetas * (rbar[1:] + s0) * (np.sqrt(Gprime_prev) + L * d) / _tau_denominators(rbar)
    return _without_skipped("proposition3", steps, gaps, rhs, skipped)


def check_noise_event(
    trace: Trace,
    x_star,
    grad_fmu: Callable[[Vector, float], Vector],
    L: float,
    d: int,
    delta: float,
) -> BoundReport:
    """
    |Σ_{k<t} r̄_k⟨Δ_k, x_k − x_⋆⟩| < b_t, Δ_k = ∇f_{μ_k}(x_k) − g_k,
    b_t = 8 r̄_{t−1} s̄_{t−1} √(θ G_{t−1} + 4L²d²θ²), θ = log(60 log(6t/δ)).

    Индексы, где θ не определено, пропускаются и перечислены в report.skipped.
    """
    _require_history(trace)
    frame = _frame(trace)
    x_star = as_vector(x_star, trace.dimension)
    xs = trace.history_points()
    gs = trace.history_gradients()
    T = len(frame)
    rbar = frame["rbar"].to_numpy(dtype=np.float64)
    mu = frame["mu"].to_numpy(dtype=np.float64)

    offsets = xs[:T] - x_star
    smooth = np.vstack([grad_fmu(xs[k], mu[k]) for k in range(T)])
    lhs = np.abs(np.cumsum(rbar * np.einsum("ij,ij->i", smooth - gs, offsets)))
    s_bar = np.maximum.accumulate(np.linalg.norm(offsets, axis=1))
    G_prev = frame["G"].to_numpy(dtype=np.float64)

    steps = np.arange(1, T + 1)
    thetas, skipped = _thetas(steps, delta, factor=6.0)
    rhs = 8.0 * rbar * s_bar * np.sqrt(thetas * G_prev + 4.0 * L * L * d * d * thetas ** 2)
    return _without_skipped("noise_event", steps, lhs, rhs, skipped)


__all__ = [
    "check_dog_tau",
    "check_estimate_norm",
    "check_gprime_dominates",
    "check_mu_noise_bound",
    "check_noise_event",
    "check_regret_bound",
    "proposition1_bound",
    "proposition3_bound",
]
