"""
Запись результатов: CSV с версией схемы в первой строке и manifest.json.

Вывод детерминирован: одинаковые данные дают побайтно одинаковые файлы
(нет отметок времени, фиксированный формат чисел и перевод строки).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd

from poem_zo.config.constants import FLOAT_FORMAT, TRACE_SCHEMA_HEADER


def write_csv(frame: pd.DataFrame, path: Union[str, Path], float_format: str = FLOAT_FORMAT) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(TRACE_SCHEMA_HEADER + "\n")
        frame.to_csv(handle, index=False, float_format=float_format, lineterminator="\n")
    return path


def write_manifest(out_dir: Union[str, Path], payload: Dict[str, Any]) -> Path:
    """manifest.json в каталоге вывода (ключи отсортированы)."""
    path = Path(out_dir) / "manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


def param_tag(value) -> str:
    """Метка значения сетки для имени файла; repr различает любые два разных float."""
    if value is None:
        return "default"
    return repr(float(value))


def trace_filename(algorithm: str, value, seed: int) -> str:
    return f"{algorithm}_param-{param_tag(value)}_seed-{seed}.csv"


__all__ = ["param_tag", "trace_filename", "write_csv", "write_manifest"]
