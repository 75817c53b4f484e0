"""
Модуль настройки логирования.
Журнал пишется в stderr и, если задан LOG_FILE, в файл; stdout остается за отчетом.
"""

import logging
import os
import sys
from typing import List, Optional

from utils.config import Config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
QUERY_LOGGER = "verification_queries"


def _handlers(log_file: str) -> List[logging.Handler]:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    return handlers


def setup_logger(level: Optional[str] = None):
    """
    Настройка корневого логгера

    Args:
        level: Уровень, перекрывающий LOG_LEVEL из конфигурации
    """
    config = Config()
    root = logging.getLogger()
    root.setLevel(getattr(logging, (level or config.LOG_LEVEL).upper()))

    # повторный вызов заменяет обработчики, а не дублирует их
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)
    for handler in _handlers(config.LOG_FILE):
        handler.setFormatter(formatter)
        root.addHandler(handler)


def log_query(command: str, details: str = ""):
    """Журнал запросов к верификатору"""
    logging.getLogger(QUERY_LOGGER).info(f"Команда {command}: {details}")
