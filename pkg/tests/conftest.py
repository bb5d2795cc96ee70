"""
Общие фикстуры и проверки для тестов poem_zo.

- rng: воспроизводимый поток случайных чисел
- synthetic_problem / unbounded_synthetic: задача с известным x_⋆
- tiny_dataset: маленький LIBSVM датасет в памяти
- dataset_path(name): путь к реальному датасету или skip, если файла нет
- assert_pathwise_bounds(): детерминированные оценки на каждой трассе с известным x_⋆
"""

from pathlib import Path

import numpy as np
import pytest

from poem_zo.config import get_settings
from poem_zo.diagnostics import (
    check_dog_tau,
    check_estimate_norm,
    check_gprime_dominates,
    check_mu_noise_bound,
    check_regret_bound,
)
from poem_zo.problems import make_synthetic_known_optimum, parse_libsvm
from poem_zo.sampling import RngStream
from poem_zo.vectorspace import contains

TINY_LIBSVM = [
    "+1 1:0.5 3:1.0",
    "-1 2:1.0",
    "+1 1:1.0 2:0.5 4:0.25",
    "-1 3:0.5 4:1.0",
    "+1 2:0.25 3:0.25",
    "-1 1:0.75 4:0.5",
]


@pytest.fixture
def rng():
    """Фикстура потока случайных чисел"""
    return RngStream(12345)


@pytest.fixture
def synthetic_problem():
    """Синтетическая задача на шаре, d=10"""
    return make_synthetic_known_optimum(10, noise_level=0.1, rng_seed=7)


@pytest.fixture
def unbounded_synthetic():
    """Синтетическая задача на R^d, d=5"""
    return make_synthetic_known_optimum(5, noise_level=0.1, rng_seed=11, bounded=False)


@pytest.fixture
def tiny_dataset():
    """Маленький датасет из 6 примеров, d=4"""
    return parse_libsvm(TINY_LIBSVM, name="tiny")


@pytest.fixture
def tiny_dataset_file(tmp_path):
    """Тот же датасет на диске"""
    path = tmp_path / "tiny.libsvm"
    path.write_text("\n".join(TINY_LIBSVM) + "\n", encoding="utf-8")
    return path


def find_dataset(name: str):
    directory = Path(get_settings().bench_datasets_dir)
    for candidate in (directory / name, directory / f"{name}.gz"):
        if candidate.exists():
            return candidate
    return None


@pytest.fixture
def dataset_path():
    """Путь к датасету из POEM_BENCH_DATASETS_DIR; тест пропускается, если файла нет"""
    def _resolve(name: str) -> Path:
        path = find_dataset(name)
        if path is None:
            pytest.skip(f"Датасет {name} не найден в {get_settings().bench_datasets_dir}")
        return path
    return _resolve


def assert_pathwise_bounds(trace, problem, x_star=None, check_norm=True):
    """
    Детерминированные свойства трассы без прореживания:
    монотонность r̄ и G, учёт вызовов оракула, допустимость итераций,
    ‖g‖ ≤ L·d, взвешенный регрет (только POEM), шум от μ, G′ ≥ G, нижняя оценка для τ.
    """
    frame = trace.to_frame()
    t = frame["t"].to_numpy()
    assert np.array_equal(t, np.arange(len(frame)))
    assert np.array_equal(frame["szo_calls"].to_numpy(), 2 * (t + 1))
    assert np.all(np.diff(frame["rbar"].to_numpy()) >= 0)
    assert np.all(np.diff(frame["G"].to_numpy()) >= 0)
    assert trace.final_rbar >= frame["rbar"].iloc[-1]

    assert not check_dog_tau(trace.rbar_history()).violated

    if trace.has_gprime:
        assert np.all(np.diff(frame["Gprime"].to_numpy()) >= 0)
        assert not check_gprime_dominates(trace).violated

    if trace.algorithm == "poem":
        assert not check_mu_noise_bound(trace, problem.lipschitz_bound, problem.dimension).violated

    if trace.has_history:
        for x in trace.xs:
            assert contains(problem.domain, x, 1e-12)
        if check_norm:
            report = check_estimate_norm(trace.g_norms(), problem.component_lipschitz, problem.dimension)
            assert not report.violated
        x_star = x_star if x_star is not None else problem.minimizer
        if x_star is not None and trace.algorithm in ("poem", "poem-unbounded"):
            report = check_regret_bound(trace, x_star)
            assert not report.violated, report.summary_line()


@pytest.fixture
def pathwise():
    """Фикстура-доступ к assert_pathwise_bounds"""
    return assert_pathwise_bounds
