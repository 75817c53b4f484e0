"""
Модуль конфигурации.
Загружает параметры из переменных окружения и файла .env.
"""

import logging
import os

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
REPORT_FORMATS = ("text", "json")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.error(f"Переменная {name} должна быть целым числом, получено: {raw}")
        return -1


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Класс конфигурации набора инструментов"""

    def __init__(self):
        # Логирование
        self.LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
        self.LOG_FILE = os.getenv("LOG_FILE", "logs/ppud.log")

        # Бюджеты перебора
        self.NODE_BUDGET = _env_int("NODE_BUDGET", 5_000_000)
        self.CONTAINER_BUDGET = _env_int("CONTAINER_BUDGET", 1_000_000)

        # Границы поиска по умолчанию
        self.MAX_DATA = _env_int("MAX_DATA", 3)
        self.MAX_AGENTS = _env_int("MAX_AGENTS", 3)
        self.INCLUDE_EMPTY_CONFIG = _env_bool("INCLUDE_EMPTY_CONFIG", False)

        # Отчеты
        self.REPORT_FORMAT = os.getenv("REPORT_FORMAT", "text").lower()
        self.MAX_BOUND_BITS = _env_int("MAX_BOUND_BITS", 1_000_000)
        self.DOT_MAX_NODES = _env_int("DOT_MAX_NODES", 500)

    def validate_config(self) -> bool:
        """Проверка корректности конфигурации"""
        valid = True

        if self.LOG_LEVEL not in LOG_LEVELS:
            logger.error(f"Неизвестный уровень логирования: {self.LOG_LEVEL}")
            valid = False

        for name in ("NODE_BUDGET", "CONTAINER_BUDGET", "MAX_DATA", "MAX_AGENTS",
                     "MAX_BOUND_BITS", "DOT_MAX_NODES"):
            if getattr(self, name) < 1:
                logger.error(f"Параметр {name} должен быть положительным")
                valid = False

        if self.REPORT_FORMAT not in REPORT_FORMATS:
            logger.error(f"Неизвестный формат отчета: {self.REPORT_FORMAT}")
            valid = False

        return valid
