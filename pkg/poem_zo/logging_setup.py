"""
Модуль настройки логирования для poem_zo.

Функции:
- setup_logging(settings): настраивает логирование в файл и консоль.
- get_logger(name): возвращает именованный логгер в рамках общей иерархии 'poem_zo'.

Библиотечный код только получает логгеры через get_logger(); обработчики
вешает исключительно точка входа (CLI).

Логи:
- Файл логов: берётся из settings.log_file (по умолчанию logs/poem_zo.log)
- Формат: время, уровень, источник, сообщение
- Кодировка: UTF-8
"""

from __future__ import annotations

import logging
import os
import sys
from typing import Optional


DEFAULT_LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
ROOT_LOGGER_NAME = "poem_zo"


def setup_logging(settings, level: Optional[int] = None, console: Optional[bool] = None) -> logging.Logger:
    """
    Настраивает корневой логгер библиотеки и возвращает его.

    Параметры:
    - settings: объект [Settings](poem_zo/config/config.py), используются log_file,
      logging_level и logging_console_output
    - level: минимальный уровень логирования (по умолчанию из settings)
    - console: добавлять ли вывод в stderr (по умолчанию из settings)

    Возвращает:
    - logging.Logger: основной логгер 'poem_zo'
    """
    if level is None:
        level = getattr(logging, str(settings.logging_level).upper(), logging.INFO)
    if console is None:
        console = bool(settings.logging_console_output)

    log_file_path = settings.log_file or os.path.join("logs", "poem_zo.log")
    log_dir = os.path.dirname(log_file_path)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(level)
    logger.handlers.clear()
    logger.propagate = False

    formatter = logging.Formatter(fmt=DEFAULT_LOG_FORMAT, datefmt=DEFAULT_DATE_FORMAT)

    # Файловый обработчик
    file_handler = logging.FileHandler(log_file_path, mode="a", encoding="utf-8")
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    # консоль: stderr; stdout отведён под пути CSV и сводки
    if console:
        stream_handler = logging.StreamHandler(stream=sys.stderr)
        stream_handler.setLevel(level)
        stream_handler.setFormatter(formatter)
        logger.addHandler(stream_handler)

    logger.debug("Логирование инициализировано. Файл: %s", log_file_path)
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Возвращает именованный логгер в рамках настроенной иерархии.
    Если имя не указано, вернётся основной логгер 'poem_zo'.
    """
    if not name:
        return logging.getLogger(ROOT_LOGGER_NAME)
    if name.startswith(ROOT_LOGGER_NAME):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


__all__ = ["setup_logging", "get_logger", "ROOT_LOGGER_NAME"]
