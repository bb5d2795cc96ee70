"""
Командная строка стенда экспериментов.

Подкоманды:
- run             трасса на каждый (сид, значение сетки) + manifest.json
- sweep           то же + сводка финальных значений цели по сетке
- stepsize-trace  длинная таблица (r_eps, seed, t, eta) для POEM
- download-hint   команды для ручной загрузки датасетов (без сети)

Запуск:
    python -m poem_zo run --dataset mushrooms --algo poem -T 100000 --stride 1000

Файл конфигурации (--config) содержит строки `ключ = значение` с именами
длинных флагов; командная строка имеет приоритет над файлом, файл - над
настройками окружения (POEM_*).

Коды выхода: 0 - все прогоны завершены, 1 - неверное описание эксперимента или
отказ прогона, 2 - ошибка ввода-вывода.
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from dotenv import dotenv_values
from pydantic import ValidationError

from poem_zo.config import Settings, get_settings, validate_config
from poem_zo.config.constants import (
    ALGORITHMS,
    EXIT_BAD_SPEC,
    EXIT_IO_FAILURE,
    EXIT_OK,
    PARAMETER_GRID,
)
from poem_zo.logging_setup import get_logger, setup_logging
from poem_zo.problems import EmptyDatasetError, LibsvmParseError, known_datasets

from .io import write_csv, write_manifest
from .runner import ExperimentResult, ExperimentRunner
from .spec import ExperimentSpec
from .summary import median_by_param

logger = get_logger("bench")

_IO_ERRORS = (OSError, LibsvmParseError, EmptyDatasetError)

# флаг командной строки → поле ExperimentSpec
_FLAG_TO_FIELD = {
    "dataset": "dataset",
    "radius": "radius",
    "synthetic": "synthetic",
    "noise_level": "noise_level",
    "unbounded": "unbounded",
    "problem_seed": "problem_seed",
    "hard": "hard",
    "hard_dim": "hard_dim",
    "hard_lipschitz": "hard_lipschitz",
    "algo": "algorithm",
    "T": "T",
    "seeds": "seeds",
    "grid": "grid",
    "r_eps": "r_eps",
    "lbar": "lbar",
    "delta": "delta",
    "s0": "s0",
    "multiplier": "multiplier",
    "tpge_mu": "tpge_mu_rule",
    "averaging": "averaging",
    "stride": "stride",
    "out": "out",
}


# -----------------------
# Разбор значений
# -----------------------

def parse_seeds(text: str) -> List[int]:
    """'0,1,2' или диапазон '0-4' (включительно), можно смешивать: '0-2,7'."""
    seeds: List[int] = []
    for token in str(text).split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token:
            start, end = token.split("-", 1)
            seeds.extend(range(int(start), int(end) + 1))
        else:
            seeds.append(int(token))
    if not seeds:
        raise ValueError(f"Пустой список сидов: {text!r}")
    return seeds


def parse_grid(text: str) -> List[float]:
    """Список чисел через запятую или 'decades' (10⁻⁷ … 10²)."""
    if str(text).strip().lower() == "decades":
        return list(PARAMETER_GRID)
    values = [float(token) for token in str(text).split(",") if token.strip()]
    if not values:
        raise ValueError(f"Пустая сетка: {text!r}")
    return values


def read_config_file(path: str) -> Dict[str, str]:
    """Пары ключ = значение; ключи приводятся к виду флагов (tpge-mu → tpge_mu)."""
    if not Path(path).is_file():
        raise FileNotFoundError(f"Файл конфигурации не найден: {path}")
    raw = dotenv_values(path)
    normalized: Dict[str, str] = {}
    for key, value in raw.items():
        if value is None:
            continue
        name = key.strip().lstrip("-").replace("-", "_")
        normalized["T" if name in ("T", "t") else name.lower()] = value
    return normalized


def _coerce(flag: str, value: Any) -> Any:
    if flag == "seeds" and not isinstance(value, list):
        return parse_seeds(value)
    if flag == "grid" and not isinstance(value, list):
        return parse_grid(value)
    return value


def merge_options(args: argparse.Namespace, settings: Settings) -> Dict[str, Any]:
    """Настройки < файл конфигурации < командная строка."""
    merged: Dict[str, Any] = {
        "stride": settings.bench_default_stride,
        "seeds": list(range(settings.bench_default_seeds)),
        "out": settings.bench_output_dir,
    }
    if args.config:
        for flag, value in read_config_file(args.config).items():
            if flag in _FLAG_TO_FIELD:
                merged[_FLAG_TO_FIELD[flag]] = _coerce(flag, value)
            elif flag not in ("workers", "log_level", "config"):
                raise ValueError(f"Неизвестный ключ в файле конфигурации: {flag!r}")
    for flag, field_name in _FLAG_TO_FIELD.items():
        value = getattr(args, flag, None)
        if value is not None:
            merged[field_name] = _coerce(flag, value)
    return merged


# -----------------------
# Подкоманды
# -----------------------

def _exit_code(result: ExperimentResult) -> int:
    if result.ok:
        return EXIT_OK
    failed = ", ".join(f"(seed={f.seed}, param={f.param})" for f in result.failures)
    logger.error("Незавершённые прогоны: %s", failed)
    return EXIT_IO_FAILURE if result.has_io_failure else EXIT_BAD_SPEC


def _execute(
    spec: ExperimentSpec,
    command: str,
    settings: Optional[Settings],
    max_workers: Optional[int],
    write_traces: bool = True,
    keep_stepsizes: bool = False,
):
    runner = ExperimentRunner(spec, settings, max_workers)
    try:
        result = runner.run(write_traces=write_traces, keep_stepsizes=keep_stepsizes)
    except _IO_ERRORS as exc:
        logger.error("Ошибка чтения данных: %s", exc)
        return runner, None, EXIT_IO_FAILURE
    except ValueError as exc:
        logger.error("Неверное описание эксперимента: %s", exc)
        return runner, None, EXIT_BAD_SPEC
    return runner, result, None


def cmd_run(spec: ExperimentSpec, settings: Optional[Settings] = None, max_workers: Optional[int] = None) -> int:
    """Трассы по каждому (сид, значение сетки) и manifest.json."""
    runner, result, failure_code = _execute(spec, "run", settings, max_workers)
    if failure_code is not None:
        return failure_code
    try:
        write_manifest(spec.out, runner.manifest("run", result))
    except OSError as exc:
        logger.error("Не удалось записать manifest: %s", exc)
        return EXIT_IO_FAILURE
    for item in result.results:
        print(item.trace_path)
    return _exit_code(result)


def cmd_sweep(spec: ExperimentSpec, settings: Optional[Settings] = None, max_workers: Optional[int] = None) -> int:
    """Сводка финальных значений цели: строка на (алгоритм, значение сетки, сид)."""
    runner, result, failure_code = _execute(spec, "sweep", settings, max_workers)
    if failure_code is not None:
        return failure_code
    float_format = runner.settings.float_format
    try:
        summary = result.summary_frame()
        sweep_path = write_csv(summary, Path(spec.out) / "sweep.csv", float_format)
        write_csv(median_by_param(summary), Path(spec.out) / "sweep_median.csv", float_format)
        write_manifest(spec.out, runner.manifest("sweep", result))
    except OSError as exc:
        logger.error("Не удалось записать сводку: %s", exc)
        return EXIT_IO_FAILURE
    print(sweep_path)
    return _exit_code(result)


def cmd_stepsize_trace(
    spec: ExperimentSpec, settings: Optional[Settings] = None, max_workers: Optional[int] = None
) -> int:
    """Длинная таблица (r_eps, seed, t, eta) по строкам с t % stride == 0; только POEM."""
    if spec.algorithm != "poem":
        logger.error("stepsize-trace поддерживает только poem, получено %s", spec.algorithm)
        return EXIT_BAD_SPEC
    runner, result, failure_code = _execute(
        spec, "stepsize-trace", settings, max_workers, write_traces=False, keep_stepsizes=True
    )
    if failure_code is not None:
        return failure_code
    try:
        path = write_csv(result.stepsize_frame(), Path(spec.out) / "stepsize.csv", runner.settings.float_format)
        write_manifest(spec.out, runner.manifest("stepsize-trace", result))
    except OSError as exc:
        logger.error("Не удалось записать таблицу шагов: %s", exc)
        return EXIT_IO_FAILURE
    print(path)
    return _exit_code(result)


def cmd_download_hint(dataset: Optional[str], settings: Settings) -> int:
    """Печатает команды загрузки; сама загрузка не выполняется."""
    catalog = known_datasets()
    names = [dataset] if dataset else sorted(catalog)
    for name in names:
        info = catalog.get(Path(name).name)
        if info is None:
            logger.error("Неизвестный датасет %s; известны: %s", name, ", ".join(sorted(catalog)))
            return EXIT_BAD_SPEC
        target = Path(settings.bench_datasets_dir) / info.name
        print(f"curl -L -o {target} {info.url}   # n={info.n}, d={info.d}")
    return EXIT_OK


# -----------------------
# Разбор аргументов
# -----------------------

def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_argument_group("задача")
    source.add_argument("--dataset", type=str, help="LIBSVM файл (или имя в каталоге датасетов)")
    source.add_argument("--radius", type=float, help="Радиус шара области (по умолчанию 1)")
    source.add_argument("--synthetic", type=int, metavar="D", help="Синтетическая задача размерности D")
    source.add_argument("--noise-level", dest="noise_level", type=float, help="Уровень шума синтетики")
    source.add_argument("--unbounded", action="store_const", const=True, help="Синтетика на всём R^d")
    source.add_argument("--problem-seed", dest="problem_seed", type=int, help="Seed выбора x_⋆ синтетики")
    source.add_argument("--hard", choices=["f1", "f2"], help="Трудный пример F₁/F₂")
    source.add_argument("--hard-dim", dest="hard_dim", type=int, help="Размерность трудного примера")
    source.add_argument("--hard-lipschitz", dest="hard_lipschitz", type=float, help="L трудного примера")

    algo = parser.add_argument_group("алгоритм")
    algo.add_argument("--algo", choices=list(ALGORITHMS), help="Алгоритм (по умолчанию poem)")
    algo.add_argument("-T", dest="T", type=int, help="Число итераций")
    algo.add_argument("--seeds", type=str, help="Сиды: '0,1,2' или '0-4'")
    algo.add_argument("--grid", type=str, help="Сетка r_eps / множителя 1/L: '1e-4,1e-2' или 'decades'")
    algo.add_argument("--r-eps", dest="r_eps", type=float, help="Начальное смещение r_eps")
    algo.add_argument("--lbar", type=float, help="Оценка L сверху (poem-unbounded)")
    algo.add_argument("--delta", type=float, help="δ ∈ (0, 1) (poem-unbounded)")
    algo.add_argument("--s0", type=float, help="Оценка ‖x_0 − x_⋆‖ (rsnso)")
    algo.add_argument("--multiplier", type=float, help="Множитель вместо 1/L (базовые методы)")
    algo.add_argument("--tpge-mu", dest="tpge_mu", choices=["first", "second"], help="Расписание μ для TPGE")
    algo.add_argument("--averaging", choices=["uniform", "last", "poem_weighted"], help="Выход базовых методов")

    output = parser.add_argument_group("вывод")
    output.add_argument("--stride", type=int, help="Прореживание трассы (по умолчанию из настроек)")
    output.add_argument("--out", type=str, help="Каталог результатов")
    output.add_argument("--config", type=str, help="Файл конфигурации ключ = значение")
    output.add_argument("--workers", type=int, help="Число процессов")
    output.add_argument("--log-level", dest="log_level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poem_zo", description="Стенд экспериментов безградиентной оптимизации")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "Трассы прогонов"),
        ("sweep", "Сводка по сетке параметров"),
        ("stepsize-trace", "Траектории шага POEM"),
    ):
        _add_common_arguments(subparsers.add_parser(name, help=help_text))
    hint = subparsers.add_parser("download-hint", help="Команды загрузки датасетов")
    hint.add_argument("--dataset", type=str, help="Имя датасета (по умолчанию все известные)")
    hint.add_argument("--log-level", dest="log_level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


_COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "stepsize-trace": cmd_stepsize_trace,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Точка входа CLI; возвращает код выхода."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_BAD_SPEC

    settings = get_settings()
    level = getattr(logging, args.log_level) if args.log_level else None
    try:
        setup_logging(settings, level=level)
    except OSError as exc:
        print(f"Не удалось настроить логирование: {exc}")
        return EXIT_IO_FAILURE
    for problem in validate_config(settings):
        logger.warning("Настройки: %s", problem)

    if args.command == "download-hint":
        return cmd_download_hint(args.dataset, settings)

    try:
        spec = ExperimentSpec(**merge_options(args, settings))
    except FileNotFoundError as exc:
        logger.error("%s", exc)
        return EXIT_IO_FAILURE
    except (ValidationError, ValueError) as exc:
        logger.error("Неверное описание эксперимента: %s", exc)
        return EXIT_BAD_SPEC

    logger.info("Запуск %s: algorithm=%s T=%d seeds=%s", args.command, spec.algorithm, spec.T, spec.seeds)
    return _COMMANDS[args.command](spec, settings, args.workers)


__all__ = [
    "build_parser",
    "cmd_download_hint",
    "cmd_run",
    "cmd_stepsize_trace",
    "cmd_sweep",
    "main",
    "merge_options",
    "parse_grid",
    "parse_seeds",
    "read_config_file",
]
