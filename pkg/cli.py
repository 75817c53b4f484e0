"""
Диспетчер командной строки.
Разбор аргументов, вызов обработчика команды и вывод отчета.
Коды возврата: 0 определенный ответ, 1 нарушение или контрпример, 2 бюджет исчерпан, 3 ошибка ввода.
"""

import argparse
import logging
import sys
from typing import List, Optional, TextIO

from core.errors import BudgetExceededError, EnumerationBudgetError, ToolkitError
from handlers.common import common_arguments
from handlers.containers import setup_containers_handlers
from handlers.runs import setup_runs_handlers
from handlers.tools import setup_tools_handlers
from handlers.verification import setup_verification_handlers
from utils.config import Config
from utils.logger import setup_logger
from utils.report import EXIT_CODES, INPUT_ERROR_EXIT_CODE, Report, Status, render

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Некорректные аргументы командной строки"""


class CliArgumentParser(argparse.ArgumentParser):
    """Ошибки аргументов поднимают UsageError вместо завершения процесса"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(
        prog="ppud",
        description="Верификация популяционных протоколов с неупорядоченными данными",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    parent = common_arguments()

    # Регистрация обработчиков команд
    setup_verification_handlers(subparsers, parent)
    setup_runs_handlers(subparsers, parent)
    setup_containers_handlers(subparsers, parent)
    setup_tools_handlers(subparsers, parent)
    return parser


def run_cli(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
            stderr: Optional[TextIO] = None) -> int:
    """
    Выполнение одной команды

    Returns:
        Код возврата
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as error:
        stderr.write(f"Ошибка аргументов: {error}\n")
        return INPUT_ERROR_EXIT_CODE

    setup_logger(args.log_level)
    config = Config()
    if not config.validate_config():
        logger.error("Некорректная конфигурация. Команда не выполнена.")
        stderr.write("Некорректная конфигурация окружения\n")
        return INPUT_ERROR_EXIT_CODE

    output_format = args.output_format or config.REPORT_FORMAT
    try:
        report = args.handler(args, config)
    except (BudgetExceededError, EnumerationBudgetError) as error:
        logger.warning(f"Команда {args.command} прервана: {error}")
        report = Report(command=args.command, status=Status.INCONCLUSIVE, verdict="Inconclusive",
                        summary=str(error))
    except (ToolkitError, OSError, ValueError) as error:
        logger.error(f"Ошибка ввода в команде {args.command}: {error}")
        diagnostics = getattr(error, "diagnostics", [])
        stderr.write(f"Ошибка: {error}\n")
        for line in diagnostics:
            stderr.write(f"  {line}\n")
        return INPUT_ERROR_EXIT_CODE

    stdout.write(render(report, output_format))
    logger.info(f"Команда {args.command} завершена: {report.status.value}")
    return EXIT_CODES[report.status]
