# -*- coding: utf-8 -*-
"""
poem_zo - Configuration Module

Модуль для управления конфигурацией стенда с использованием Pydantic.
Значения читаются из переменных окружения с префиксом POEM_ и из файла .env.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .constants import DEFAULT_STRIDE, DEFAULT_NUM_SEEDS, FLOAT_FORMAT

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Основные настройки стенда"""

    model_config = SettingsConfigDict(
        env_prefix="POEM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Окружение
    environment: str = Field(default="development")
    debug: bool = Field(default=False)

    # Логирование
    logging_level: str = Field(default="INFO")
    logging_console_output: bool = Field(default=True)
    log_file: str = Field(default="logs/poem_zo.log")

    # Стенд экспериментов
    bench_default_stride: int = Field(default=DEFAULT_STRIDE, ge=1)
    bench_default_seeds: int = Field(default=DEFAULT_NUM_SEEDS, ge=1)
    bench_max_workers: Optional[int] = Field(default=None, ge=1)
    bench_output_dir: str = Field(default="results")
    bench_datasets_dir: str = Field(default="data")

    # Вывод
    float_format: str = Field(default=FLOAT_FORMAT)

    @field_validator("logging_level")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        level = str(value).upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"logging_level должен быть одним из {_LOG_LEVELS}, получено {value!r}")
        return level


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Получить (кэшированный) экземпляр настроек"""
    return Settings()


def validate_config(settings_obj: Settings) -> List[str]:
    """
    Валидация согласованности настроек.

    Возвращает список ошибок; пустой список означает валидную конфигурацию.
    """
    errors: List[str] = []

    if not settings_obj.bench_output_dir:
        errors.append("POEM_BENCH_OUTPUT_DIR не может быть пустым")

    try:
        settings_obj.float_format % 0.1
    except (TypeError, ValueError):
        errors.append(f"Неверный формат чисел POEM_FLOAT_FORMAT: {settings_obj.float_format!r}")

    return errors

