"""
Чтение CSV трасс с проверкой версии схемы из первой строки-комментария.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import pandas as pd

from poem_zo.config.constants import TRACE_COLUMNS, TRACE_SCHEMA_VERSION

_HEADER_RE = re.compile(r"^#\s*poem_zo-trace\s+v(\d+)\s*$")


class TraceSchemaError(ValueError):
    """Файл не является трассой ожидаемой версии."""


def read_schema_version(path: Union[str, Path]) -> int:
    with Path(path).open("r", encoding="utf-8") as handle:
        first_line = handle.readline().rstrip("\r\n")
    match = _HEADER_RE.match(first_line)
    if match is None:
        raise TraceSchemaError(f"{path}: нет строки версии схемы, первая строка {first_line!r}")
    return int(match.group(1))


def read_trace_csv(path: Union[str, Path]) -> pd.DataFrame:
    """
    Загружает CSV трассы в DataFrame.

    Исключения:
    - TraceSchemaError: версия схемы не совпадает или нет обязательных колонок
    - OSError: файл не читается
    """
    version = read_schema_version(path)
    if version != TRACE_SCHEMA_VERSION:
        raise TraceSchemaError(
            f"{path}: версия схемы v{version}, поддерживается v{TRACE_SCHEMA_VERSION}"
        )
    frame = pd.read_csv(path, skiprows=1, float_precision="round_trip")
    missing = [name for name in TRACE_COLUMNS if name not in frame.columns]
    if missing:
        raise TraceSchemaError(f"{path}: нет колонок {missing}")
    return frame


__all__ = ["TraceSchemaError", "read_schema_version", "read_trace_csv"]
