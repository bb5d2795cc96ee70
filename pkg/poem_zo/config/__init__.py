# -*- coding: utf-8 -*-
"""
poem_zo - Config Module

Модуль конфигурации стенда.
"""

from . import constants
from .config import Settings, get_settings, validate_config


__all__ = [
    "Settings",
    "constants",
    "get_settings",
    "validate_config",
]
