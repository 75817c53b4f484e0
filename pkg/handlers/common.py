"""
Общие средства обработчиков команд.
Загрузка входных описаний, общие флаги и границы поиска.
"""

import argparse
import logging
from typing import Optional

from core.configuration import CanonicalConfiguration
from core.protocol import Protocol
from logic.gre import GreNode, SearchBounds
from logic.predicates import IntervalPredicate
from parsing.cm_parser import parse_cm
from parsing.config_parser import parse_config
from parsing.gre_parser import parse_gre
from parsing.predicate_parser import parse_predicate
from parsing.protocol_parser import parse_protocol
from parsing.run_parser import parse_run
from reductions.counter_machine import CounterMachine
from runs.run import ConcreteRun
from utils.config import LOG_LEVELS, REPORT_FORMATS, Config
from utils.file_handler import load_text

logger = logging.getLogger(__name__)


def common_arguments() -> argparse.ArgumentParser:
    """Родительский парсер с флагами, общими для всех команд"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--max-data", type=int, help="Максимальное число данных при переборе")
    parent.add_argument("--max-agents", type=int, help="Максимальное число агентов на данное")
    parent.add_argument("--node-budget", type=int, help="Бюджет конфигураций при обходе")
    parent.add_argument("--include-empty-config", action="store_true", default=None,
                        help="Считать пустую конфигурацию начальной")
    parent.add_argument("--format", choices=REPORT_FORMATS, dest="output_format",
                        help="Формат отчета")
    parent.add_argument("--log-level", choices=LOG_LEVELS, help="Уровень логирования")
    parent.add_argument("--output", help="Файл для результата (протокол, прогон, DOT)")
    return parent


def search_bounds(args, config: Config) -> SearchBounds:
    return SearchBounds(args.max_data or config.MAX_DATA, args.max_agents or config.MAX_AGENTS)


def node_budget(args, config: Config) -> int:
    return args.node_budget or config.NODE_BUDGET


def include_empty(args, config: Config) -> bool:
    return config.INCLUDE_EMPTY_CONFIG if args.include_empty_config is None else args.include_empty_config


def load_protocol(source: str) -> Protocol:
    return parse_protocol(load_text(source))


def load_config(source: str, protocol: Optional[Protocol] = None) -> CanonicalConfiguration:
    return parse_config(load_text(source), protocol.states if protocol is not None else None)


def load_predicate(source: str) -> IntervalPredicate:
    return parse_predicate(load_text(source))


def load_gre(source: str) -> GreNode:
    return parse_gre(load_text(source))


def load_run(source: str) -> ConcreteRun:
    return parse_run(load_text(source))


def load_machine(source: str) -> CounterMachine:
    return parse_cm(load_text(source))
