"""
Модуль для работы с файлами.
Читает входные описания (из файла или из строки) и сохраняет результаты команд.
"""

import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)

# Максимальный размер входного файла в байтах (50MB)
MAX_FILE_SIZE = 50 * 1024 * 1024


def load_text(source: str) -> str:
    """
    Текст входного описания

    Args:
        source: Путь к файлу; если такого файла нет, аргумент считается самим текстом

    Raises:
        OSError: файл не читается или слишком велик
    """
    if not os.path.isfile(source):
        logger.debug("Аргумент не является файлом, используется как текст")
        return source

    size = os.path.getsize(source)
    if size > MAX_FILE_SIZE:
        raise OSError(f"Размер файла {source} превышает максимальный ({MAX_FILE_SIZE // (1024 * 1024)}MB)")

    with open(source, encoding="utf-8") as handle:
        text = handle.read()
    logger.info(f"Прочитан файл: {source} ({size} байт)")
    return text


def save_text(path: Optional[str], text: str) -> Optional[str]:
    """
    Сохранение результата в файл

    Returns:
        Путь к сохраненному файлу или None, если путь не задан
    """
    if not path:
        return None
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"Файл сохранен: {path}")
    return path
