"""
POEM: безпараметрический метод нулевого порядка с шагом «расстояние / градиенты».

Шаг t:
    r̄_t = max(r̄_{t−1}, ‖x_t − x_0‖),   r̄_{−1} = r_eps
    μ_t = r̄_t·√(d/(t+1))
    g_t = двухточечная оценка при (μ_t, v_t, ξ_t)
    G_t = G_{t−1} + ‖g_t‖²
    η_t = r̄_t / √G_t   (η_t = 0 при G_t = 0)
    x_{t+1} = Π_X(x_t − η_t g_t)

Выход: x̄_τ = Σ_{k<τ} r̄_k x_k / Σ_{k<τ} r̄_k, τ = argmax_{1≤t≤T} Σ_{k<t} r̄_k / r̄_t.

Вариант для неограниченной области заменяет μ_t = d·r̄_t/(t+1)² и
η_t = r̄_t/√G′_t, где G′_t = 8⁴·θ·log₊²(t+2)·(G_{t−1} + 16·θ·d²·L̄²),
θ = log(60·log(6T/δ)), log₊(z) = log z + 1.
"""

from __future__ import annotations

import math
from typing import Optional, Protocol, Sequence, Tuple

from poem_zo.config.constants import MEMBERSHIP_RTOL
from poem_zo.estimator import finite_difference
from poem_zo.logging_setup import get_logger
from poem_zo.problems import StochasticProblem
from poem_zo.sampling import RngStream, sample_unit_sphere
from poem_zo.vectorspace import DomainError, as_vector, contains, diameter, project

from .state import PoemState, RunResult, Trace, TraceRecord
from .summation import KahanAccumulator

logger = get_logger("optimizers")


def log_plus(z: float) -> float:
    """log₊(z) = log(z) + 1."""
    return math.log(z) + 1.0


def confidence_theta(t: float, delta: float, factor: float = 6.0) -> float:
    """
    θ = log(60·log(factor·t/δ)).

    ValueError, если внешний логарифм не определён или θ ≤ 0.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"δ должно лежать в (0, 1), получено {delta}")
    inner = factor * t / delta
    if inner <= 1.0:
        raise ValueError(f"log({factor}·t/δ) не положителен при t={t}, δ={delta}")
    outer = 60.0 * math.log(inner)
    if outer <= 1.0:
        raise ValueError(f"θ ≤ 0 при t={t}, δ={delta}")
    return math.log(outer)


def gprime(G_prev: float, t: int, T: int, delta: float, Lbar: float, d: int) -> float:
    """G′_t = 8⁴·θ_{T,δ}·log₊²(t+2)·(G_{t−1} + 16·θ_{T,δ}·d²·L̄²)."""
    if G_prev < 0:
        raise ValueError(f"G_{{t−1}} должно быть ≥ 0, получено {G_prev}")
    if not Lbar > 0:
        raise ValueError(f"L̄ должно быть положительным, получено {Lbar}")
    theta = confidence_theta(T, delta)
    return 8.0 ** 4 * theta * log_plus(t + 2) ** 2 * (G_prev + 16.0 * theta * d * d * Lbar * Lbar)


# ----------------
# Правила шага
# ----------------

class StepRule(Protocol):
    """Правило выбора μ_t и η_t по текущему состоянию."""

    def smoothing(self, state: PoemState, d: int) -> float:
        ...

    def step_size(self, state: PoemState, G_prev: float, d: int) -> Tuple[float, Optional[float]]:
        """(η_t, G′_t или None); state.G уже содержит ‖g_t‖²."""
        ...


class PoemRule:
    """μ_t = r̄_t√(d/(t+1)), η_t = r̄_t/√G_t."""

    def smoothing(self, state: PoemState, d: int) -> float:
        return state.rbar * math.sqrt(d / (state.t + 1))

    def step_size(self, state: PoemState, G_prev: float, d: int) -> Tuple[float, Optional[float]]:
        G = state.G
        if G <= 0.0:
            return 0.0, None
        return state.rbar / math.sqrt(G), None


class UnboundedRule:
    """μ_t = d·r̄_t/(t+1)², η_t = r̄_t/√G′_t."""

    def __init__(self, T: int, delta: float, Lbar: float) -> None:
        if not 0.0 < delta < 1.0:
            raise ValueError(f"δ должно лежать в (0, 1), получено {delta}")
        if not Lbar > 0:
            raise ValueError(f"L̄ должно быть положительным, получено {Lbar}")
        self.T = int(T)
        self.delta = float(delta)
        self.Lbar = float(Lbar)

    def smoothing(self, state: PoemState, d: int) -> float:
        return d * state.rbar / (state.t + 1) ** 2

    def step_size(self, state: PoemState, G_prev: float, d: int) -> Tuple[float, Optional[float]]:
        g_prime = gprime(G_prev, state.t, self.T, self.delta, self.Lbar, d)
        return state.rbar / math.sqrt(g_prime), g_prime


# ----------------
# Шаг и цикл
# ----------------

def poem_step(
    state: PoemState,
    problem: StochasticProblem,
    rng: RngStream,
    rule: Optional[StepRule] = None,
    track_uniform: bool = False,
) -> TraceRecord:
    """
    Один шаг метода; state изменяется на месте, g_t сохраняется в state.last_g.

    Порядок выборок из rng: сначала направление v_t, затем шум ξ_t.
    """
    rule = rule or PoemRule()
    d = problem.dimension
    r = state.begin_step(track_uniform=track_uniform)
    mu = rule.smoothing(state, d)

    v = sample_unit_sphere(rng, d)
    xi = problem.sample_noise(rng)
    estimate = finite_difference(problem, state.x, mu, v, xi)
    state.szo_count += estimate.szo_cost

    G_prev = state.G
    state.add_gradient(estimate.g)
    eta, g_prime = rule.step_size(state, G_prev, d)

    record = TraceRecord(
        t=state.t,
        szo_calls=state.szo_count,
        eta=eta,
        mu=mu,
        rbar=state.rbar,
        G=state.G,
        r=r,
        Gprime=g_prime,
    )
    state.eta, state.mu, state.g_prime = eta, mu, g_prime
    state.last_g = estimate.g
    if eta > 0.0:
        state.x = project(problem.domain, state.x - eta * estimate.g)
    state.t += 1
    return record


def select_tau(rbar_history: Sequence[float]) -> int:
    """
    τ = наименьший t ∈ {1, …, T}, максимизирующий Σ_{k<t} r̄_k / r̄_t.

    rbar_history = (r̄_0, …, r̄_T), положительная неубывающая последовательность.
    """
    values = [float(value) for value in rbar_history]
    if len(values) < 2:
        raise ValueError("История r̄ должна содержать как минимум r̄_0 и r̄_1")
    if any(not value > 0 for value in values):
        raise ValueError("История r̄ должна быть положительной")
    if any(later < earlier for earlier, later in zip(values, values[1:])):
        raise ValueError("История r̄ должна быть неубывающей")

    total = KahanAccumulator()
    best_t, best_score = 0, -math.inf
    for t in range(1, len(values)):
        total.add(values[t - 1])
        score = total.value / values[t]
        if score > best_score:
            best_t, best_score = t, score
    return best_t


def clamp_r_eps(r_eps: float, problem: StochasticProblem) -> float:
    """min(r_eps, D_X); r̄ на ограниченной области всё равно не превосходит D_X."""
    domain_diameter = diameter(problem.domain)
    if math.isfinite(domain_diameter) and r_eps > domain_diameter:
        logger.warning(
            "r_eps = %.6g больше диаметра области %.6g, используется %.6g", r_eps, domain_diameter, domain_diameter
        )
        return float(domain_diameter)
    return float(r_eps)


def check_start(problem: StochasticProblem, x0, T: int):
    if T < 1:
        raise ValueError(f"Число итераций T должно быть ≥ 1, получено {T}")
    x0 = as_vector(x0, problem.dimension)
    if not contains(problem.domain, x0, MEMBERSHIP_RTOL):
        raise DomainError("Начальная точка x0 вне допустимой области")
    return x0


def iterate(
    problem: StochasticProblem,
    state: PoemState,
    T: int,
    rng: RngStream,
    rule: StepRule,
    algorithm: str,
    stride: int = 1,
    record_history: bool = False,
    track_uniform: bool = False,
) -> Trace:
    """
    Общий цикл проекционного SGD на T шагов.

    Строки трассы сохраняются при t % stride == 0 и на последнем шаге; в них же
    (если задача знает точное f) вычисляются f(x_t) и f(x̄_{t+1}).
    """
    if stride < 1:
        raise ValueError(f"stride должен быть ≥ 1, получено {stride}")
    trace = Trace(algorithm=algorithm, dimension=problem.dimension, x0=state.x0)
    if record_history:
        trace.xs, trace.gs, trace.rbars = [], [], []
    with_objective = problem.has_objective

    for t in range(T):
        x_t = state.x
        keep = t % stride == 0 or t == T - 1
        record = poem_step(state, problem, rng, rule, track_uniform=track_uniform)
        if record_history:
            trace.xs.append(x_t)
            trace.gs.append(state.last_g)
            trace.rbars.append(record.rbar)
        if keep:
            if with_objective:
                record.f_xt = problem.objective(x_t)
                record.f_xbar = problem.objective(state.weighted_average())
            trace.records.append(record)

    state.finish()
    trace.final_rbar = state.rbar
    trace.tau = state.tau_best
    if record_history:
        trace.xs.append(state.x)
    return trace


def poem_run(
    problem: StochasticProblem,
    x0,
    r_eps: float,
    T: int,
    rng: RngStream,
    stride: int = 1,
    record_history: bool = False,
) -> RunResult:
    """
    POEM на T шагов (2T вызовов оракула).

    r_eps > D_X на ограниченной области заменяется на D_X; использованное
    значение хранится в result.state.r_eps.

    Исключения:
    - ValueError: r_eps ≤ 0, T < 1
    - DomainError: x0 вне области
    """
    x0 = check_start(problem, x0, T)
    if not r_eps > 0:
        raise ValueError(f"r_eps должен быть положительным, получено {r_eps}")
    r_eps = clamp_r_eps(r_eps, problem)

    state = PoemState.initial(x0, r_eps)
    trace = iterate(problem, state, T, rng, PoemRule(), "poem", stride, record_history)
    return RunResult(state.tau_point, state, trace)


def poem_unbounded_run(
    problem: StochasticProblem,
    x0,
    r_eps: float,
    T: int,
    delta: float,
    Lbar: float,
    rng: RngStream,
    stride: int = 1,
    record_history: bool = False,
) -> RunResult:
    """
    POEM для неограниченной области.

    Анализируемый режим r_eps ≤ 3·s₀ не проверяется (s₀ неизвестно).
    Lbar < L задачи допускается, но логируется предупреждение.
    """
    x0 = check_start(problem, x0, T)
    rule = UnboundedRule(T, delta, Lbar)
    if Lbar < problem.lipschitz_bound:
        logger.warning(
            "L̄ = %.6g меньше константы Липшица задачи %.6g", Lbar, problem.lipschitz_bound
        )
    state = PoemState.initial(x0, r_eps)
    trace = iterate(problem, state, T, rng, rule, "poem-unbounded", stride, record_history)
    return RunResult(state.tau_point, state, trace)


__all__ = [
    "PoemRule",
    "StepRule",
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
    "select_tau",
]
