"""
Загрузка разреженных датасетов бинарной классификации в формате LIBSVM.

Формат строки: `<label> <index>:<value> ...`, индексы 1-based строго по возрастанию.

Реализовано:
- SparseDataset: CSR матрица признаков (n × d) и метки ±1
- parse_libsvm(lines): разбор текстового потока
- load_libsvm(path): чтение файла (.gz распаковывается по расширению)
- known_datasets(): манифест датасетов (n, d, url) из datasets.json

Метки:
- {−1, +1} - как есть
- {1, 2} (mushrooms) - 1 → +1, 2 → −1
- {0, 1} - 1 → +1, 0 → −1
- любые другие значения или смешение схем - ошибка разбора

Размерность d берётся из таблицы известных датасетов (хвостовые нулевые
признаки не должны менять d), иначе - максимальный встреченный индекс.
"""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

import numpy as np
import scipy.sparse as sp

from poem_zo.logging_setup import get_logger

logger = get_logger("problems")

_MANIFEST_PATH = Path(__file__).with_name("datasets.json")

_LABEL_SCHEMES = {
    "pm1": {-1: -1.0, 1: 1.0},
    "12": {1: 1.0, 2: -1.0},
    "01": {0: -1.0, 1: 1.0},
}


class LibsvmParseError(ValueError):
    """Ошибка разбора LIBSVM файла; line_number - номер строки (1-based)."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        prefix = f"строка {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


class EmptyDatasetError(ValueError):
    """Датасет не содержит ни одного примера."""


@dataclass(frozen=True)
class DatasetInfo:
    """Запись манифеста датасета."""
    name: str
    n: int
    d: int
    url: str


@lru_cache(maxsize=1)
def known_datasets() -> Dict[str, DatasetInfo]:
    """Манифест известных датасетов: имя → (n, d, url)."""
    with open(_MANIFEST_PATH, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return {name: DatasetInfo(name=name, n=int(v["n"]), d=int(v["d"]), url=str(v["url"])) for name, v in raw.items()}


@dataclass(frozen=True, eq=False)
class SparseDataset:
    """
    Разреженный датасет {(a_i, b_i)}.
    - features: CSR матрица формы (n, d)
    - labels: метки ±1 (float64, длина n)
    - name: имя датасета (для логов и манифеста)
    """
    features: sp.csr_matrix
    labels: np.ndarray
    name: str = field(default="")

    def __post_init__(self) -> None:
        features = sp.csr_matrix(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.float64)
        if features.shape[0] == 0:
            raise EmptyDatasetError("Датасет пуст")
        if labels.shape != (features.shape[0],):
            raise ValueError(f"Число меток {labels.shape} не совпадает с числом примеров {features.shape[0]}")
        if not np.all(np.abs(labels) == 1.0):
            raise ValueError("Метки должны быть ровно ±1")
        features.sort_indices()
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return int(self.features.shape[0])

    @property
    def d(self) -> int:
        return int(self.features.shape[1])

    def row_norms(self) -> np.ndarray:
        """‖a_i‖ для каждого примера."""
        squared = np.asarray(self.features.multiply(self.features).sum(axis=1)).ravel()
        return np.sqrt(squared)

    def margins(self, x: np.ndarray) -> np.ndarray:
        """b_i · a_iᵀx для всех примеров одним разреженным умножением."""
        return self.labels * (self.features @ x)


def _parse_label(token: str, line_number: int) -> int:
    try:
        value = float(token)
    except ValueError as exc:
        raise LibsvmParseError(f"метка не является числом: {token!r}", line_number) from exc
    if not value.is_integer() or int(value) not in (-1, 0, 1, 2):
        raise LibsvmParseError(f"недопустимая метка {token!r} (ожидается ±1, 1/2 или 0/1)", line_number)
    return int(value)


def parse_libsvm(
    lines: Iterable[str],
    n_features: Optional[int] = None,
    name: str = "",
) -> SparseDataset:
    """
    Разбирает текст в формате LIBSVM.

    Параметры:
    - lines: итерируемый источник строк (файл, список строк)
    - n_features: принудительная размерность d (иначе максимальный индекс)
    - name: имя датасета

    Исключения:
    - LibsvmParseError: некорректная строка, нечисловой токен, индекс 0,
      неубывающий порядок индексов, недопустимая метка
    - EmptyDatasetError: ни одного примера
    """
    raw_labels: List[int] = []
    label_lines: List[int] = []
    indptr: List[int] = [0]
    indices: List[int] = []
    values: List[float] = []
    max_index = 0

    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        tokens = line.split()
        raw_labels.append(_parse_label(tokens[0], line_number))
        label_lines.append(line_number)

        previous = 0
        for token in tokens[1:]:
            index_str, sep, value_str = token.partition(":")
            if not sep:
                raise LibsvmParseError(f"ожидалась пара index:value, получено {token!r}", line_number)
            try:
                index = int(index_str)
                value = float(value_str)
            except ValueError as exc:
                raise LibsvmParseError(f"нечисловой токен {token!r}", line_number) from exc
            if index < 1:
                raise LibsvmParseError(f"индексы признаков начинаются с 1, получено {index}", line_number)
            if index <= previous:
                raise LibsvmParseError(f"индексы должны строго возрастать ({previous} → {index})", line_number)
            if not np.isfinite(value):
                raise LibsvmParseError(f"значение признака не конечно: {token!r}", line_number)
            previous = index
            indices.append(index - 1)
            values.append(value)
        max_index = max(max_index, previous)
        indptr.append(len(indices))

    if not raw_labels:
        raise EmptyDatasetError(f"Датасет {name or '<stream>'} не содержит примеров")

    labels = _map_labels(raw_labels, label_lines)

    d = max_index if n_features is None else int(n_features)
    if d < max_index:
        raise LibsvmParseError(f"индекс признака {max_index} превышает заданную размерность {d}")
    d = max(d, 1)

    features = sp.csr_matrix(
        (np.asarray(values, dtype=np.float64), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(raw_labels), d),
    )
    return SparseDataset(features=features, labels=labels, name=name)


def _map_labels(raw_labels: List[int], label_lines: List[int]) -> np.ndarray:
    present = set(raw_labels)
    if 2 in present:
        scheme = _LABEL_SCHEMES["12"]
    elif 0 in present:
        scheme = _LABEL_SCHEMES["01"]
    else:
        scheme = _LABEL_SCHEMES["pm1"]
    mapped = np.empty(len(raw_labels), dtype=np.float64)
    for i, (label, line_number) in enumerate(zip(raw_labels, label_lines)):
        if label not in scheme:
            raise LibsvmParseError(
                f"метка {label} несовместима с остальными метками файла {sorted(present)}", line_number
            )
        mapped[i] = scheme[label]
    return mapped


def dataset_name_from_path(path: Union[str, Path]) -> str:
    """Имя датасета по имени файла: mushrooms.gz → mushrooms."""
    p = Path(path)
    name = p.name
    if name.endswith(".gz"):
        name = name[: -len(".gz")]
    for suffix in (".txt", ".libsvm", ".svm"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


def load_libsvm(path: Union[str, Path], n_features: Optional[int] = None) -> SparseDataset:
    """
    Читает LIBSVM файл с диска. Файлы *.gz распаковываются на лету.
    Для известных датасетов размерность берётся из манифеста.
    """
    path = Path(path)
    name = dataset_name_from_path(path)
    info = known_datasets().get(name)
    if n_features is None and info is not None:
        n_features = info.d

    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="utf-8") as fh:
        dataset = parse_libsvm(fh, n_features=n_features, name=name)

    if info is not None and dataset.n != info.n:
        logger.warning("Датасет %s: ожидалось n=%d, прочитано n=%d", name, info.n, dataset.n)
    logger.info("Загружен датасет %s: n=%d, d=%d, nnz=%d", name, dataset.n, dataset.d, dataset.features.nnz)
    return dataset


__all__ = [
    "DatasetInfo",
    "EmptyDatasetError",
    "LibsvmParseError",
    "SparseDataset",
    "dataset_name_from_path",
    "known_datasets",
    "load_libsvm",
    "parse_libsvm",
]
